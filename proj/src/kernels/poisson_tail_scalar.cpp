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

#include "rsac/kernels/poisson_tail.hpp"

namespace rsac::kernels {

namespace {

constexpr double pmf_underflow_mean = 700.0;  // exp(-709.8) underflows

// survival for one species with exp(-mu) representable
inline void accumulate_one_direct(double mu, std::span<double> acc) {
  double pmf = std::exp(-mu);
  double surv = 1.0;
  for (std::size_t k = 0; k < acc.size(); ++k) {
    surv -= pmf;
    if (surv < 0.0)
      surv = 0.0;
    acc[k] += surv;
    pmf *= mu / static_cast<double>(k + 1);
  }
}

// log-space pmf terms; each term is <= 1 so the sum never overflows
inline void accumulate_one_logspace(double mu, std::span<double> acc) {
  const double logmu = std::log(mu);
  double cdf = 0.0;
  for (std::size_t k = 0; k < acc.size(); ++k) {
    cdf += std::exp(-mu + static_cast<double>(k) * logmu -
                    std::lgamma(static_cast<double>(k) + 1.0));
    const double surv = cdf < 1.0 ? 1.0 - cdf : 0.0;
    acc[k] += surv;
  }
}

}  // namespace

void poisson_tail_accumulate_scalar(std::span<const double> means,
                                    std::span<double> acc) {
  for (const double mu : means) {
    if (mu <= pmf_underflow_mean)
      accumulate_one_direct(mu, acc);
    else
      accumulate_one_logspace(mu, acc);
  }
}

double poisson_survival(double mu, unsigned r) {
  if (r == 0)
    return 1.0;
  if (!(mu > 0.0))
    return 0.0;
  if (mu <= pmf_underflow_mean) {
    double pmf = std::exp(-mu);
    double cdf = 0.0;
    for (unsigned k = 0; k < r; ++k) {
      cdf += pmf;
      pmf *= mu / static_cast<double>(k + 1);
    }
    return cdf < 1.0 ? 1.0 - cdf : 0.0;
  }
  const double logmu = std::log(mu);
  double cdf = 0.0;
  for (unsigned k = 0; k < r; ++k)
    cdf += std::exp(-mu + static_cast<double>(k) * logmu -
                    std::lgamma(static_cast<double>(k) + 1.0));
  return cdf < 1.0 ? 1.0 - cdf : 0.0;
}

}  // namespace rsac::kernels
