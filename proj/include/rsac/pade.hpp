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

#ifndef RSAC_PADE_HPP
#define RSAC_PADE_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "rsac/histogram.hpp"

namespace rsac {

// Everything in this module works in the shifted variable s = t - 1;
// the discovery-rate series and its rational approximants are centered
// at t = 1.  The switch back to the t domain happens only in
// partial_fractions.

/// Alternating series for the average discovery rate:
/// coeffs[i] = (-1)^i * S_{i+1}.
struct PowerSeries {
  std::vector<double> coeffs;
};

/// Quotient-difference output.  Every stored coefficient is nonzero;
/// the sequence is truncated at the first vanishing entry.
struct ContinuedFraction {
  std::vector<double> coeffs;

  /// Largest m for which the 2m-th convergent is available.
  std::size_t max_m() const { return coeffs.size() / 2; }
};

/// Rational function P(s)/Q(s) with deg P = m-1, deg Q = m and Q(0) = 1.
/// Coefficients are in ascending powers of s.
struct RationalApproximant {
  std::vector<double> numer;
  std::vector<double> denom;

  std::size_t m() const { return denom.empty() ? 0 : denom.size() - 1; }
  double eval_numer(double s) const;
  double eval_denom(double s) const;
  std::complex<double> eval_numer(std::complex<double> s) const;
  std::complex<double> eval_denom(std::complex<double> s) const;
};

/// A partial-fraction term c/(t - x), already in the t domain.
struct PoleTerm {
  std::complex<double> c;
  std::complex<double> x;
};

PowerSeries phi_coefficients(const TailSums &s, std::size_t n);

/// Quotient-difference algorithm.  The 2m-th convergent of the result is
/// the [m-1/m] Pade approximant to ps.  A coefficient with magnitude
/// below 1e-12 * |coeffs[0]| (or a non-finite table entry) truncates the
/// output at the previous coefficient.
ContinuedFraction qd_continued_fraction(const PowerSeries &ps);

/// Even-order convergent of the continued fraction as an explicit
/// rational function; order = 2m.
RationalApproximant convergent(const ContinuedFraction &cf, std::size_t order);

/// Direct construction of the same [m-1/m] approximant by solving the
/// two linear systems in the series coefficients.  Kept as an independent
/// cross-check of the quotient-difference route.
RationalApproximant pade_linear_solve(const TailSums &s, std::size_t m);

/// Hankel determinant Delta_{i,j}: det of the j x j matrix with entry
/// (k, l) = S_{i-j+k+l} (1-based k, l), and S_k = 0 for k < 1.
double hankel_det(const TailSums &s, long i, std::size_t j);

/// All complex roots of the polynomial (ascending coefficients).  The
/// returned multiset is closed under conjugation: eigenvalue pairs are
/// symmetrized when they match within `tolerance`.
std::vector<std::complex<double>> poly_roots(const std::vector<double> &coeffs,
                                             double tolerance = 1e-10);

struct DefectRemoval {
  RationalApproximant rf;
  std::size_t removed_pairs = 0;
};

/// Cancel pole-zero pairs closer than `threshold`.  Throws
/// defect_degeneracy_error when cancellation would leave a constant
/// denominator.
DefectRemoval remove_defects(const RationalApproximant &rf,
                             double threshold = 1e-3);

/// Decompose into sum of c_i/(t - x_i) with poles mapped to the t domain
/// (x = s_root + 1).  Requires simple denominator roots: pairwise
/// distances below 1e-8 (relative to the root scale) are rejected with
/// repeated_root_error.
std::vector<PoleTerm> partial_fractions(const RationalApproximant &rf);

}  // namespace rsac

#endif
