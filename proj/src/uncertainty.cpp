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

#include "rsac/uncertainty.hpp"

#include <cmath>
#include <memory>
#include <vector>

#include "rsac/errors.hpp"

namespace rsac {

double BootstrapSummary::se() const { return std::sqrt(variance); }

// Acklam's rational approximation to the inverse normal cdf; relative
// error below 1.2e-9 over (0, 1).
double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw input_error("normal_quantile: p must be in (0, 1)");
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
             c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double s = q * q;
  return (((((a[0] * s + a[1]) * s + a[2]) * s + a[3]) * s + a[4]) * s +
          a[5]) *
         q /
         (((((b[0] * s + b[1]) * s + b[2]) * s + b[3]) * s + b[4]) * s + 1.0);
}

LognormalInterval lognormal_interval(double point, double variance,
                                     double level) {
  if (!(point > 0.0))
    throw numeric_error("lognormal_interval: point estimate must be positive");
  if (!(variance >= 0.0))
    throw input_error("lognormal_interval: variance must be >= 0");
  const double z = normal_quantile(0.5 + level / 2.0);
  const double factor =
      std::exp(z * std::sqrt(std::log1p(variance / (point * point))));
  return {factor, point / factor, point * factor};
}

BootstrapSummary bootstrap_summary(const FrequencyHistogram &hist, unsigned r,
                                   double t, std::size_t B, double level,
                                   const RandomSource &rng) {
  if (B < 2)
    throw input_error("bootstrap_summary: B must be >= 2");
  if (!(level > 0.0) || !(level < 1.0))
    throw input_error("bootstrap_summary: level must be in (0, 1)");

  const auto [est0, report0] = construct(hist);
  BootstrapSummary out;
  out.point = est0.evaluate(r, t);
  if (!(out.point > 0.0))
    throw numeric_error("bootstrap_summary: point estimate must be positive "
                        "for the lognormal interval");

  // the accepted order seeds m_max for replicates; each still runs the
  // full descending-m gate
  const std::size_t m_hint = std::max<std::size_t>(report0.accepted_order, 1);
  const std::size_t max_attempts = 10 * B;
  std::size_t attempts = 0;

  std::vector<double> values;
  values.reserve(B);
  for (std::size_t b = 0; values.size() < B; ++b) {
    RandomSource sub = rng.substream(b);
    bool done = false;
    while (!done) {
      if (++attempts > max_attempts)
        throw construction_error(
            "bootstrap_summary: too many failed bootstrap constructions");
      FrequencyHistogram resampled = bootstrap_resample(hist, sub);
      try {
        const auto [est_b, rep_b] = construct(resampled, m_hint);
        values.push_back(est_b.evaluate(r, t));
        done = true;
      } catch (const construction_error &) {
        ++out.failed_redraws;  // redraw from the same sub-stream
      }
    }
  }

  double mean = 0.0;
  for (const double v : values)
    mean += v;
  mean /= static_cast<double>(B);
  double ss = 0.0;
  for (const double v : values) {
    const double d = v - mean;
    ss += d * d;
  }
  out.mean = mean;
  out.variance = ss / static_cast<double>(B - 1);
  out.replicates = B;

  const LognormalInterval ci = lognormal_interval(out.point, out.variance,
                                                  level);
  out.ci_factor = ci.factor;
  out.ci_low = ci.low;
  out.ci_high = ci.high;
  return out;
}

CvEstimate estimate_cv(const FrequencyHistogram &hist) {
  const ZtnbFit fit = fit_ztnb(hist);
  return {1.0 / std::sqrt(fit.alpha), fit.alpha};
}

BestPractice best_practice(const FrequencyHistogram &hist) {
  const CvEstimate cv = estimate_cv(hist);

  const auto make_rfa = [&]() -> std::function<double(unsigned, double)> {
    auto est = std::make_shared<RsacEstimator>(construct(hist).first);
    return [est](unsigned r, double t) { return est->evaluate(r, t); };
  };
  const auto make_ztnb = [&]() -> std::function<double(unsigned, double)> {
    auto fit = std::make_shared<ZtnbFit>(fit_ztnb(hist));
    return [fit](unsigned r, double t) { return rsac_ztnb(*fit, r, t); };
  };

  // rule: strictly greater than 1 selects the rational-function estimator
  if (cv.cv > 1.0) {
    try {
      return {BestPractice::Method::RFA, cv.cv, make_rfa()};
    } catch (const construction_error &) {
      return {BestPractice::Method::ZTNB, cv.cv, make_ztnb()};
    }
  }
  try {
    return {BestPractice::Method::ZTNB, cv.cv, make_ztnb()};
  } catch (const construction_error &) {
    return {BestPractice::Method::RFA, cv.cv, make_rfa()};
  }
}

}  // namespace rsac
