/* Copyright (C) 2026 the rsac authors
 *
 * This program is free software: you can redistribute it and/or modify
 * it under the terms of the GNU General Public License as published by
 * the Free Software Foundation, either version 3 of the License, or
 * (at your option) any later version.
 *
 * This program is distributed in the hope that it will be useful,
 * but WITHOUT ANY WARRANTY; without even the implied warranty of
 * MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
 * GNU General Public License for more details.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <unsupported/Eigen/Polynomials>

#include "rsac/errors.hpp"
#include "rsac/pade.hpp"

namespace rsac {

// Companion-matrix eigenvalues (balanced, via Eigen's polynomial solver),
// followed by a symmetrization pass so the returned multiset is exactly
// closed under conjugation.
std::vector<std::complex<double>> poly_roots(const std::vector<double> &coeffs,
                                             double tolerance) {
  if (coeffs.size() < 2)
    throw input_error("poly_roots: degree must be >= 1");
  if (coeffs.back() == 0.0)
    throw numeric_error("poly_roots: zero leading coefficient");

  std::vector<std::complex<double>> roots;
  if (coeffs.size() == 2) {
    roots.emplace_back(-coeffs[0] / coeffs[1], 0.0);
    return roots;
  }

  Eigen::VectorXd poly(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    poly[static_cast<Eigen::Index>(i)] = coeffs[i];
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(poly);
  roots.assign(solver.roots().data(),
               solver.roots().data() + solver.roots().size());

  double scale = 1.0;
  for (const auto &z : roots)
    scale = std::max(scale, std::abs(z));
  const double pair_tol = tolerance * scale;

  // pair each root above the real axis with its nearest mirror below it
  std::vector<std::size_t> upper, lower;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i].imag() > 0.0)
      upper.push_back(i);
    else if (roots[i].imag() < 0.0)
      lower.push_back(i);
  }
  std::vector<bool> taken(roots.size(), false);
  for (const std::size_t i : upper) {
    std::size_t best = roots.size();
    double best_dist = pair_tol;
    for (const std::size_t j : lower) {
      if (taken[j])
        continue;
      const double d = std::abs(std::conj(roots[i]) - roots[j]);
      if (d <= best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best < roots.size()) {
      const std::complex<double> z(0.5 * (roots[i].real() + roots[best].real()),
                                   0.5 * (roots[i].imag() - roots[best].imag()));
      roots[i] = z;
      roots[best] = std::conj(z);
      taken[best] = true;
    }
  }

  std::sort(roots.begin(), roots.end(), [](const auto &a, const auto &b) {
    if (a.real() != b.real())
      return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

}  // namespace rsac
