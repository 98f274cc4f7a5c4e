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

#ifndef RSAC_KERNELS_POISSON_TAIL_HPP
#define RSAC_KERNELS_POISSON_TAIL_HPP

#include <span>
#include <string>

namespace rsac::kernels {

// Hot loop behind the analytic truth curves: accumulate Poisson survival
// probabilities over a population of means.
//
//   acc[k] += sum_i P(Poisson(means[i]) >= k + 1),  k = 0..acc.size()-1
//
// The scalar kernel is the reference; the AVX2 variant processes four
// species per iteration and is selected at runtime when the CPU supports
// it.  Variants agree to accumulation-order rounding and are equivalence
// tested against each other.

/// Reference implementation; upward pmf recurrence with a log-space
/// fallback for means above 700 where exp(-mu) underflows.
void poisson_tail_accumulate_scalar(std::span<const double> means,
                                    std::span<double> acc);

#if defined(RSAC_HAVE_AVX2_TU)
void poisson_tail_accumulate_avx2(std::span<const double> means,
                                  std::span<double> acc);
#endif

/// Runtime-dispatched entry point.
void poisson_tail_accumulate(std::span<const double> means,
                             std::span<double> acc);

/// Name of the variant the dispatcher resolves to ("avx2" or "scalar").
std::string active_backend();

/// Single survival value P(Poisson(mu) >= r); shares the scalar kernel's
/// numerics and is reused by the parametric baselines.
double poisson_survival(double mu, unsigned r);

}  // namespace rsac::kernels

#endif
