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

#ifndef RSAC_SIMLAB_HPP
#define RSAC_SIMLAB_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "rsac/histogram.hpp"
#include "rsac/random.hpp"

namespace rsac {

/// Simulation models for the latent rate distribution.  Parameters follow
/// the standard benchmark settings; rates are always rescaled so they sum
/// to the population size L.
struct PopulationModel {
  enum class Kind { Homogeneous, NegBinomial, LogNormal, Zipf, ZipfMandelbrot };

  Kind kind = Kind::Homogeneous;
  double shape = 1.0;     // NB
  double scale = 1.0;     // NB
  double mu = 0.0;        // LN
  double sigma = 1.0;     // LN
  double offset = 100.0;  // Zipf / ZM
  double exponent = 1.0;  // Zipf / ZM

  static PopulationModel homogeneous();
  static PopulationModel neg_binomial(double shape, double scale);
  static PopulationModel log_normal(double mu, double sigma);
  static PopulationModel zipf(double offset = 100.0, double exponent = 1.0);
  static PopulationModel zipf_mandelbrot(double offset = 100.0,
                                         double exponent = 1.1);

  /// Named presets: P, NB1, NB2, LN, Z, ZM.
  static PopulationModel preset(const std::string &name);

  /// True when the rate vector is a deterministic function of L.
  bool deterministic() const;

  std::string name() const;
};

struct RateVector {
  std::vector<double> rates;  // normalized so the sum equals L
  std::size_t L() const { return rates.size(); }
};

RateVector draw_population(const PopulationModel &model, std::size_t L,
                           RandomSource &rng);

/// Poisson counts with mean rate_i * t; species with zero counts drop out.
FrequencyHistogram sample_poisson(const RateVector &rates, double t,
                                  RandomSource &rng);

/// E[S_r(t)] = sum_i P(Poisson(rate_i t) >= r) for r = 1..r_max.
std::vector<double> true_rsac_curve(const RateVector &rates, unsigned r_max,
                                    double t);
double true_rsac(const RateVector &rates, unsigned r, double t);

/// Coefficient of variation of the rates (sd with L-1 denominator / mean).
double cv_empirical(const RateVector &rates);

/// E[C] = 1 - sum_i p_i (1-p_i)^N for a probability vector.
double expected_coverage(const std::vector<double> &probabilities, double N);

struct RelativeError {
  std::vector<double> per_r;        // NaN for skipped rows
  std::vector<std::size_t> skipped_r;  // 1-based r with all-zero truth
  double mean = 0.0;
};

/// L2 relative error per r over the t grid, and the mean over r rows with
/// nonzero truth.
RelativeError relative_error(const std::vector<std::vector<double>> &estimates,
                             const std::vector<std::vector<double>> &truths);

}  // namespace rsac

#endif
