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

#include <cmath>
#include <cstddef>

#include "rsac/errors.hpp"
#include "rsac/pade.hpp"

namespace rsac {

// Quotient-difference recurrences (Rutishauser).  With series
// f(s) = c_0 + c_1 s + ..., the associated continued fraction is
//
//   f(s) = k_0 / (1 + k_1 s / (1 + k_2 s / (1 + ...)))
//
// with k_0 = c_0, k_{2j-1} = -q_j^(0), k_{2j} = -e_j^(0).  Truncating to
// the first 2m coefficients gives the [m-1/m] approximant.
ContinuedFraction qd_continued_fraction(const PowerSeries &ps) {
  const std::vector<double> &c = ps.coeffs;
  const std::size_t n = c.size();
  if (n == 0 || c[0] == 0.0)
    throw input_error("quotient-difference: first series coefficient is zero");

  ContinuedFraction cf;
  cf.coeffs.reserve(n);
  cf.coeffs.push_back(c[0]);
  const double zero_tol = 1e-12 * std::fabs(c[0]);

  const auto push = [&](double qd_value) {
    const double k = -qd_value;
    if (!std::isfinite(k) || std::fabs(k) < zero_tol)
      return false;
    cf.coeffs.push_back(k);
    return true;
  };

  if (n < 2)
    return cf;

  // level-1 rows; valid lengths shrink by two per level
  std::vector<double> q(n - 1), e;
  for (std::size_t j = 0; j + 1 < n; ++j)
    q[j] = c[j + 1] / c[j];
  if (!push(q[0]))
    return cf;

  e.resize(n >= 2 ? n - 2 : 0);
  for (std::size_t j = 0; j + 2 < n; ++j)
    e[j] = q[j + 1] - q[j];
  if (e.empty() || !push(e[0]))
    return cf;

  while (e.size() >= 2) {
    std::vector<double> q_next(e.size() - 1);
    for (std::size_t j = 0; j + 1 < e.size(); ++j)
      q_next[j] = q[j + 1] * e[j + 1] / e[j];
    if (!push(q_next[0]))
      return cf;
    if (q_next.size() < 2)
      return cf;
    std::vector<double> e_next(q_next.size() - 1);
    for (std::size_t j = 0; j + 1 < q_next.size(); ++j)
      e_next[j] = q_next[j + 1] - q_next[j] + e[j + 1];
    if (!push(e_next[0]))
      return cf;
    q = std::move(q_next);
    e = std::move(e_next);
  }
  return cf;
}

namespace {

// polynomial out = a + k * s * b, coefficients ascending in s
std::vector<double> fma_shift(const std::vector<double> &a, double k,
                              const std::vector<double> &b) {
  std::vector<double> out(std::max(a.size(), b.size() + 1), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i)
    out[i + 1] += k * b[i];
  return out;
}

}  // namespace

RationalApproximant convergent(const ContinuedFraction &cf,
                               std::size_t order) {
  if (order < 2 || order % 2 != 0)
    throw input_error("convergent order must be even and >= 2");
  if (order > cf.coeffs.size())
    throw input_error("convergent order exceeds available coefficients");

  // Euler's recursion on numerator/denominator polynomials
  std::vector<double> num_prev2{0.0}, num_prev{cf.coeffs[0]};
  std::vector<double> den_prev2{1.0}, den_prev{1.0};
  for (std::size_t i = 1; i < order; ++i) {
    std::vector<double> num = fma_shift(num_prev, cf.coeffs[i], num_prev2);
    std::vector<double> den = fma_shift(den_prev, cf.coeffs[i], den_prev2);
    num_prev2 = std::move(num_prev);
    num_prev = std::move(num);
    den_prev2 = std::move(den_prev);
    den_prev = std::move(den);
  }

  RationalApproximant rf;
  rf.numer = std::move(num_prev);
  rf.denom = std::move(den_prev);
  const std::size_t m = order / 2;
  rf.numer.resize(m, 0.0);
  rf.denom.resize(m + 1, 0.0);
  if (rf.denom[m] == 0.0)
    throw numeric_error("convergent: vanishing leading denominator "
                        "coefficient");
  return rf;
}

}  // namespace rsac
