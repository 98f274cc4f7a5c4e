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

#include "rsac/kernels/poisson_tail.hpp"

namespace rsac::kernels {

namespace {

using kernel_fn = void (*)(std::span<const double>, std::span<double>);

kernel_fn resolve() {
#if defined(RSAC_HAVE_AVX2_TU) && defined(__GNUC__)
  if (__builtin_cpu_supports("avx2"))
    return &poisson_tail_accumulate_avx2;
#endif
  return &poisson_tail_accumulate_scalar;
}

const kernel_fn selected = resolve();

}  // namespace

void poisson_tail_accumulate(std::span<const double> means,
                             std::span<double> acc) {
  selected(means, acc);
}

std::string active_backend() {
#if defined(RSAC_HAVE_AVX2_TU) && defined(__GNUC__)
  if (selected == &poisson_tail_accumulate_avx2)
    return "avx2";
#endif
  return "scalar";
}

}  // namespace rsac::kernels
