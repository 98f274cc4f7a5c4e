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

#ifndef RSAC_UNCERTAINTY_HPP
#define RSAC_UNCERTAINTY_HPP

#include <cstddef>
#include <functional>
#include <string>

#include "rsac/baselines.hpp"
#include "rsac/estimator.hpp"
#include "rsac/histogram.hpp"
#include "rsac/random.hpp"

namespace rsac {

struct BootstrapSummary {
  double point = 0.0;      // estimate from the original histogram
  double mean = 0.0;       // over replicates
  double variance = 0.0;   // sample variance over replicates (B-1)
  double ci_factor = 1.0;  // multiplicative half-width C
  double ci_low = 0.0;     // point / C
  double ci_high = 0.0;    // point * C
  std::size_t replicates = 0;
  std::size_t failed_redraws = 0;

  double se() const;
};

/// Bootstrap the estimator construction B times by multinomial resampling
/// of the count vector; replicates whose construction fails are redrawn
/// (up to 10 B attempts total).  The confidence interval is the
/// multiplicative lognormal interval
///   C = exp(z * sqrt(ln(1 + var/point^2))),  [point/C, point*C].
/// Replicate b always consumes rng.substream(b), so results do not depend
/// on scheduling.
BootstrapSummary bootstrap_summary(const FrequencyHistogram &hist, unsigned r,
                                   double t, std::size_t B, double level,
                                   const RandomSource &rng);

struct CvEstimate {
  double cv;  // 1/sqrt(k)
  double k;   // fitted ZTNB shape
};

/// Heterogeneity estimate from the ZTNB shape fit.
CvEstimate estimate_cv(const FrequencyHistogram &hist);

struct BestPractice {
  enum class Method { RFA, ZTNB };
  Method method;
  double cv;
  std::function<double(unsigned, double)> evaluate;  // (r, t)

  std::string tag() const {
    return method == Method::RFA ? "rfa" : "ztnb";
  }
};

/// The method switch: estimated CV > 1 selects the rational-function
/// estimator, CV <= 1 the ZTNB.  Falls through to the other method if the
/// preferred construction fails; throws when both fail.
BestPractice best_practice(const FrequencyHistogram &hist);

/// Two-sided standard normal quantile used for the CI level.
double normal_quantile(double p);

struct LognormalInterval {
  double factor;  // C
  double low;     // point / C
  double high;    // point * C
};

/// C = exp(z_level * sqrt(ln(1 + variance/point^2))); multiplicative
/// symmetry ci_high/point = point/ci_low holds by construction.
LognormalInterval lognormal_interval(double point, double variance,
                                     double level);

}  // namespace rsac

#endif
