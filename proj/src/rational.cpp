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

#include <Eigen/Dense>

#include "rsac/errors.hpp"
#include "rsac/pade.hpp"

namespace rsac {

namespace {

template <typename T>
T horner(const std::vector<double> &coeffs, T s) {
  T acc = T(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * s + T(*it);
  return acc;
}

std::vector<double> derivative(const std::vector<double> &coeffs) {
  std::vector<double> d;
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    d.push_back(static_cast<double>(i) * coeffs[i]);
  return d;
}

// drop numerically-zero leading coefficients
std::vector<double> trim(const std::vector<double> &coeffs) {
  double scale = 0.0;
  for (const double c : coeffs)
    scale = std::max(scale, std::fabs(c));
  std::vector<double> out(coeffs);
  while (out.size() > 1 && std::fabs(out.back()) <= 1e-14 * scale)
    out.pop_back();
  return out;
}

std::vector<double> from_roots(const std::vector<std::complex<double>> &roots,
                               double lead) {
  std::vector<std::complex<double>> poly{1.0};
  for (const auto &r : roots) {
    std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] -= r * poly[i];
      next[i + 1] += poly[i];
    }
    poly = std::move(next);
  }
  std::vector<double> out(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i)
    out[i] = lead * poly[i].real();
  return out;
}

}  // namespace

double RationalApproximant::eval_numer(double s) const {
  return horner(numer, s);
}
double RationalApproximant::eval_denom(double s) const {
  return horner(denom, s);
}
std::complex<double> RationalApproximant::eval_numer(
    std::complex<double> s) const {
  return horner(numer, s);
}
std::complex<double> RationalApproximant::eval_denom(
    std::complex<double> s) const {
  return horner(denom, s);
}

double hankel_det(const TailSums &s, long i, std::size_t j) {
  if (j < 1)
    throw input_error("hankel_det: j must be >= 1");
  const auto entry = [&](std::size_t row, std::size_t col) {
    // 1-based layout index; S_k = 0 for k < 1
    const long k = i - static_cast<long>(j) + static_cast<long>(row) +
                   static_cast<long>(col);
    if (k < 1)
      return 0.0;
    if (static_cast<std::size_t>(k) > s.size())
      throw input_error("hankel_det: index beyond available tail sums");
    return s.values[static_cast<std::size_t>(k) - 1];
  };
  Eigen::MatrixXd mat(j, j);
  for (std::size_t r = 1; r <= j; ++r)
    for (std::size_t c = 1; c <= j; ++c)
      mat(static_cast<Eigen::Index>(r - 1), static_cast<Eigen::Index>(c - 1)) =
          entry(r, c);
  return mat.determinant();
}

RationalApproximant pade_linear_solve(const TailSums &s, std::size_t m) {
  if (m < 1)
    throw input_error("pade_linear_solve: m must be >= 1");
  if (s.size() < 2 * m)
    throw input_error("pade_linear_solve: need 2m tail sums");

  std::vector<double> c(2 * m);
  for (std::size_t i = 0; i < 2 * m; ++i)
    c[i] = (i % 2 == 0 ? 1.0 : -1.0) * s.values[i];

  // denominator system: sum_{j=0..m} b_j c_{l-j} = 0 for l = m..2m-1
  Eigen::MatrixXd mat(m, m);
  Eigen::VectorXd rhs(m);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t j = 1; j <= m; ++j)
      mat(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j - 1)) =
          c[m + k - j];
    rhs(static_cast<Eigen::Index>(k)) = -c[m + k];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(mat);
  if (!lu.isInvertible())
    throw numeric_error("pade_linear_solve: singular or ill-conditioned "
                        "denominator system");
  const Eigen::VectorXd b = lu.solve(rhs);

  RationalApproximant rf;
  rf.denom.resize(m + 1);
  rf.denom[0] = 1.0;
  for (std::size_t j = 1; j <= m; ++j) {
    rf.denom[j] = b(static_cast<Eigen::Index>(j - 1));
    if (!std::isfinite(rf.denom[j]))
      throw numeric_error("pade_linear_solve: non-finite solution");
  }
  rf.numer.resize(m);
  for (std::size_t l = 0; l < m; ++l) {
    double acc = c[l];
    for (std::size_t j = 1; j <= l; ++j)
      acc += rf.denom[j] * c[l - j];
    rf.numer[l] = acc;
  }
  return rf;
}

DefectRemoval remove_defects(const RationalApproximant &rf, double threshold) {
  DefectRemoval result{rf, 0};
  const std::vector<double> numer = trim(rf.numer);
  if (numer.size() < 2)
    return result;  // constant numerator has no zeros

  const auto zeros = poly_roots(numer);
  const auto poles = poly_roots(rf.denom);

  struct Pair {
    double dist;
    std::size_t zero, pole;
  };
  std::vector<Pair> candidates;
  for (std::size_t zi = 0; zi < zeros.size(); ++zi)
    for (std::size_t pi = 0; pi < poles.size(); ++pi) {
      const double d = std::abs(zeros[zi] - poles[pi]);
      if (d < threshold)
        candidates.push_back({d, zi, pi});
    }
  if (candidates.empty())
    return result;

  std::sort(candidates.begin(), candidates.end(),
            [](const Pair &a, const Pair &b) {
              if (a.dist != b.dist)
                return a.dist < b.dist;
              if (a.zero != b.zero)
                return a.zero < b.zero;
              return a.pole < b.pole;
            });
  std::vector<bool> zero_used(zeros.size(), false), pole_used(poles.size(),
                                                              false);
  std::vector<Pair> chosen;
  for (const Pair &p : candidates) {
    if (zero_used[p.zero] || pole_used[p.pole])
      continue;
    zero_used[p.zero] = true;
    pole_used[p.pole] = true;
    chosen.push_back(p);
  }

  // cancellations must come in conjugate pairs or the rebuilt polynomials
  // stop being real; drop any pair whose mirror was not selected
  const auto has_mirror = [&](const Pair &p) {
    if (zeros[p.zero].imag() == 0.0 && poles[p.pole].imag() == 0.0)
      return true;
    for (const Pair &q : chosen) {
      if (std::abs(zeros[q.zero] - std::conj(zeros[p.zero])) < 1e-12 &&
          std::abs(poles[q.pole] - std::conj(poles[p.pole])) < 1e-12)
        return true;
    }
    return false;
  };
  std::vector<Pair> kept;
  for (const Pair &p : chosen)
    if (has_mirror(p))
      kept.push_back(p);
  if (kept.empty())
    return result;

  std::fill(zero_used.begin(), zero_used.end(), false);
  std::fill(pole_used.begin(), pole_used.end(), false);
  for (const Pair &p : kept) {
    zero_used[p.zero] = true;
    pole_used[p.pole] = true;
  }
  std::vector<std::complex<double>> zeros_left, poles_left;
  for (std::size_t i = 0; i < zeros.size(); ++i)
    if (!zero_used[i])
      zeros_left.push_back(zeros[i]);
  for (std::size_t i = 0; i < poles.size(); ++i)
    if (!pole_used[i])
      poles_left.push_back(poles[i]);
  if (poles_left.empty())
    throw defect_degeneracy_error(
        "defect removal left a constant denominator");

  std::vector<double> new_numer = from_roots(zeros_left, numer.back());
  std::vector<double> new_denom = from_roots(poles_left, rf.denom.back());
  const double q0 = new_denom[0];
  if (q0 == 0.0 || !std::isfinite(1.0 / q0))
    throw defect_degeneracy_error(
        "defect removal left a denominator vanishing at t = 1");
  for (double &v : new_numer)
    v /= q0;
  for (double &v : new_denom)
    v /= q0;

  result.rf.numer = std::move(new_numer);
  result.rf.denom = std::move(new_denom);
  result.removed_pairs = kept.size();
  return result;
}

std::vector<PoleTerm> partial_fractions(const RationalApproximant &rf) {
  if (rf.denom.size() < 2)
    throw input_error("partial_fractions: denominator must have degree >= 1");
  const auto roots = poly_roots(rf.denom);

  double scale = 1.0;
  for (const auto &r : roots)
    scale = std::max(scale, std::abs(r));
  constexpr double simple_root_tol = 1e-8;
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) < simple_root_tol * scale)
        throw repeated_root_error(
            "partial_fractions: near-repeated denominator roots "
            "(multiplicity case is rejected, not expanded)");

  const std::vector<double> dq = derivative(rf.denom);
  std::vector<PoleTerm> terms;
  terms.reserve(roots.size());
  for (const auto &s_root : roots) {
    if (s_root.imag() < 0.0)
      continue;  // filled in by mirroring its partner
    if (s_root.imag() == 0.0) {
      const double c = horner(rf.numer, s_root.real()) /
                       horner(dq, s_root.real());
      terms.push_back({{c, 0.0}, {s_root.real() + 1.0, 0.0}});
    } else {
      const std::complex<double> c =
          horner(rf.numer, s_root) / horner(dq, s_root);
      const std::complex<double> x = s_root + 1.0;
      terms.push_back({c, x});
      terms.push_back({std::conj(c), std::conj(x)});
    }
  }
  std::sort(terms.begin(), terms.end(), [](const PoleTerm &a,
                                           const PoleTerm &b) {
    if (a.x.real() != b.x.real())
      return a.x.real() < b.x.real();
    return a.x.imag() < b.x.imag();
  });
  return terms;
}

}  // namespace rsac
