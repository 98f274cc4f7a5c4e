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

#include "rsac/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "rsac/errors.hpp"
#include "rsac/kernels/poisson_tail.hpp"

namespace rsac {

PopulationModel PopulationModel::homogeneous() {
  return PopulationModel{};
}

PopulationModel PopulationModel::neg_binomial(double shape, double scale) {
  PopulationModel m;
  m.kind = Kind::NegBinomial;
  m.shape = shape;
  m.scale = scale;
  return m;
}

PopulationModel PopulationModel::log_normal(double mu, double sigma) {
  PopulationModel m;
  m.kind = Kind::LogNormal;
  m.mu = mu;
  m.sigma = sigma;
  return m;
}

PopulationModel PopulationModel::zipf(double offset, double exponent) {
  PopulationModel m;
  m.kind = Kind::Zipf;
  m.offset = offset;
  m.exponent = exponent;
  return m;
}

PopulationModel PopulationModel::zipf_mandelbrot(double offset,
                                                 double exponent) {
  PopulationModel m;
  m.kind = Kind::ZipfMandelbrot;
  m.offset = offset;
  m.exponent = exponent;
  return m;
}

PopulationModel PopulationModel::preset(const std::string &name) {
  if (name == "P")
    return homogeneous();
  if (name == "NB1")
    return neg_binomial(1.0, 1.0);
  if (name == "NB2")
    return neg_binomial(0.01, 1.0);
  if (name == "LN")
    return log_normal(0.0, 1.0);
  if (name == "Z")
    return zipf();
  if (name == "ZM")
    return zipf_mandelbrot();
  throw input_error("unknown model preset: " + name +
                    " (expected P, NB1, NB2, LN, Z or ZM)");
}

bool PopulationModel::deterministic() const {
  return kind == Kind::Homogeneous || kind == Kind::Zipf ||
         kind == Kind::ZipfMandelbrot;
}

std::string PopulationModel::name() const {
  switch (kind) {
  case Kind::Homogeneous:
    return "P";
  case Kind::NegBinomial:
    return shape == 1.0 && scale == 1.0
               ? "NB1"
               : (shape == 0.01 && scale == 1.0 ? "NB2" : "NB");
  case Kind::LogNormal:
    return "LN";
  case Kind::Zipf:
    return "Z";
  case Kind::ZipfMandelbrot:
    return "ZM";
  }
  return "?";
}

RateVector draw_population(const PopulationModel &model, std::size_t L,
                           RandomSource &rng) {
  if (L < 2)
    throw input_error("draw_population: L must be >= 2");
  RateVector out;
  out.rates.resize(L);
  switch (model.kind) {
  case PopulationModel::Kind::Homogeneous:
    std::fill(out.rates.begin(), out.rates.end(), 1.0);
    break;
  case PopulationModel::Kind::NegBinomial: {
    std::gamma_distribution<double> gamma(model.shape, model.scale);
    for (double &r : out.rates)
      r = gamma(rng.engine());
    break;
  }
  case PopulationModel::Kind::LogNormal: {
    std::lognormal_distribution<double> ln(model.mu, model.sigma);
    for (double &r : out.rates)
      r = ln(rng.engine());
    break;
  }
  case PopulationModel::Kind::Zipf:
  case PopulationModel::Kind::ZipfMandelbrot:
    for (std::size_t i = 0; i < L; ++i)
      out.rates[i] = 1.0 / std::pow(static_cast<double>(i + 1) + model.offset,
                                    model.exponent);
    break;
  }
  const double sum = std::accumulate(out.rates.begin(), out.rates.end(), 0.0);
  if (!(sum > 0.0))
    throw numeric_error("draw_population: degenerate rate draw");
  const double scale = static_cast<double>(L) / sum;
  for (double &r : out.rates)
    r *= scale;
  return out;
}

FrequencyHistogram sample_poisson(const RateVector &rates, double t,
                                  RandomSource &rng) {
  if (!(t > 0.0))
    throw input_error("sample_poisson: t must be > 0");
  std::map<std::uint64_t, std::uint64_t> entries;
  std::poisson_distribution<std::uint64_t> pois;
  using param_t = std::poisson_distribution<std::uint64_t>::param_type;
  for (const double rate : rates.rates) {
    const double mu = rate * t;
    if (!(mu > 0.0))
      continue;
    const std::uint64_t count = pois(rng.engine(), param_t(mu));
    if (count > 0)
      ++entries[count];
  }
  return FrequencyHistogram(std::move(entries));
}

std::vector<double> true_rsac_curve(const RateVector &rates, unsigned r_max,
                                    double t) {
  if (r_max < 1)
    throw input_error("true_rsac_curve: r_max must be >= 1");
  if (!(t >= 0.0))
    throw input_error("true_rsac_curve: t must be >= 0");
  std::vector<double> acc(r_max, 0.0);
  if (t == 0.0)
    return acc;
  std::vector<double> means(rates.rates.size());
  for (std::size_t i = 0; i < means.size(); ++i)
    means[i] = rates.rates[i] * t;
  kernels::poisson_tail_accumulate(means, acc);
  return acc;
}

double true_rsac(const RateVector &rates, unsigned r, double t) {
  return true_rsac_curve(rates, r, t).back();
}

double cv_empirical(const RateVector &rates) {
  const std::size_t L = rates.rates.size();
  if (L < 2)
    throw input_error("cv_empirical: need at least two rates");
  const double mean =
      std::accumulate(rates.rates.begin(), rates.rates.end(), 0.0) /
      static_cast<double>(L);
  double ss = 0.0;
  for (const double r : rates.rates) {
    const double d = r - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(L - 1));
  return sd / mean;
}

double expected_coverage(const std::vector<double> &probabilities, double N) {
  if (!(N >= 0.0))
    throw input_error("expected_coverage: N must be >= 0");
  // compensated sums: the unit-total check is tighter than what naive
  // accumulation over 10^6 entries can resolve
  double total = 0.0, comp = 0.0;
  for (const double p : probabilities) {
    if (p < 0.0)
      throw input_error("expected_coverage: negative probability");
    const double y = p - comp;
    const double t = total + y;
    comp = (t - total) - y;
    total = t;
  }
  if (std::fabs(total - 1.0) > 1e-12)
    throw input_error("expected_coverage: probabilities must sum to 1");
  double missed = 0.0, mcomp = 0.0;
  for (const double p : probabilities) {
    if (p >= 1.0)
      continue;  // (1-p)^N = 0 contribution for p = 1
    const double v = p * std::exp(N * std::log1p(-p));
    const double y = v - mcomp;
    const double t = missed + y;
    mcomp = (t - missed) - y;
    missed = t;
  }
  return 1.0 - missed;
}

RelativeError relative_error(
    const std::vector<std::vector<double>> &estimates,
    const std::vector<std::vector<double>> &truths) {
  if (estimates.size() != truths.size())
    throw input_error("relative_error: r-grid shape mismatch");
  RelativeError out;
  out.per_r.assign(estimates.size(),
                   std::numeric_limits<double>::quiet_NaN());
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t r = 0; r < estimates.size(); ++r) {
    if (estimates[r].size() != truths[r].size())
      throw input_error("relative_error: t-grid shape mismatch");
    double diff2 = 0.0, norm2 = 0.0;
    for (std::size_t k = 0; k < truths[r].size(); ++k) {
      const double d = estimates[r][k] - truths[r][k];
      diff2 += d * d;
      norm2 += truths[r][k] * truths[r][k];
    }
    if (norm2 == 0.0) {
      out.skipped_r.push_back(r + 1);
      continue;
    }
    out.per_r[r] = std::sqrt(diff2 / norm2);
    sum += out.per_r[r];
    ++used;
  }
  out.mean = used > 0 ? sum / static_cast<double>(used) : 0.0;
  return out;
}

}  // namespace rsac
