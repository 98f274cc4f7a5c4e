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

#ifndef RSAC_ESTIMATOR_HPP
#define RSAC_ESTIMATOR_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rsac/histogram.hpp"
#include "rsac/pade.hpp"

namespace rsac {

/// The r-SAC estimator: sum of c_i (t/(t-x_i))^r over the stored poles.
/// Terms are closed under conjugation (enforced on construction, with
/// exact mirroring), so real-valued evaluation is structural rather than
/// a rounding accident.  Immutable and safe to share across threads.
///
/// The saturated shortcut stores the single term (c = L, x = 0); with
/// t/(t-0) = 1 the generic formula already evaluates to the constant L
/// for t > 0, so only this degenerate input may carry a pole with
/// Re(x) = 0.
class RsacEstimator {
public:
  explicit RsacEstimator(std::vector<PoleTerm> terms, bool saturated = false);

  const std::vector<PoleTerm> &terms() const { return terms_; }
  /// Number of poles, the m of the partial-fraction form.  Defect
  /// removal can make this smaller than the convergent order that
  /// produced the terms (the order is recorded in the report).
  std::size_t m() const { return terms_.size(); }
  bool saturated() const { return saturated_; }

  /// Psi_{r,m}(t); t = 0 evaluates to 0 for every r >= 1.
  double evaluate(unsigned r, double t) const;

  /// evaluate(r, t) for r = 1..r_max with incrementally updated powers.
  std::vector<double> evaluate_curve(unsigned r_max, double t) const;

  /// d/dt of Psi_{1,m} at t: -sum c_i x_i / (t - x_i)^2.
  double sac_derivative(double t) const;

  /// Limit for t -> infinity: sum of c_i (exactly real by pairing).
  double asymptote() const;

  /// Sum of |c_i|, the boundedness constant for stable estimators.
  double coefficient_l1() const;

private:
  std::vector<PoleTerm> terms_;  // real poles first, conjugate pairs after
  bool saturated_;
};

/// True iff every pole satisfies Re(x_i) < 0 (strict, no epsilon).
bool stability_gate(const RsacEstimator &est);

/// True iff the SAC derivative is >= 0 on the grid t = 1, 1.05, ..., 100.
bool is_increasing(const RsacEstimator &est);

struct ConstructionReport {
  std::size_t m_max = 0;
  std::size_t accepted_order = 0;  // convergent order m of the winning pass
  std::size_t accepted_terms = 0;  // poles kept after defect removal
  bool saturated_shortcut = false;
  bool m1_fallback = false;
  std::size_t defects_removed = 0;
  struct Rejection {
    std::size_t m;
    std::string reason;
  };
  std::vector<Rejection> rejections;

  std::string describe() const;
};

/// Full construction pipeline: tail sums, quotient-difference, descending
/// convergents, defect removal, partial fractions, and the pole/shape
/// gates.  Saturated inputs (S_1 = ... = S_{2 m_max} = L) short-circuit to
/// the constant-L estimator; otherwise N_1 > 0 and N_2 > 0 are required
/// and the m = 1 closed form guarantees termination.
std::pair<RsacEstimator, ConstructionReport> construct(
    const FrequencyHistogram &hist, std::size_t m_max = 10);

/// The m = 1 closed form: (S_1^2/S_2) (t/(t + (S_1-S_2)/S_2))^r.
RsacEstimator m1_closed_form(double s1, double s2);

/// Truncated power-series estimator Phi_r(t) =
/// t^r sum_i (-1)^i (t-1)^i binom(r-1+i, r-1) S_{r+i}.  Diagnostic only:
/// it diverges in practice for t > 2.
double phi_r_power_series(const TailSums &s, unsigned r, double t);

/// JSON serialization; doubles round-trip at full precision.
std::string estimator_to_json(const RsacEstimator &est,
                              const ConstructionReport *report = nullptr);
RsacEstimator estimator_from_json(const std::string &text);

}  // namespace rsac

#endif
