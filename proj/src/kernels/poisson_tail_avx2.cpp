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

// Compiled with -mavx2 -mfma; never called unless the CPU reports AVX2.

#include <immintrin.h>

#include <cmath>
#include <cstddef>
#include <vector>

#include "rsac/kernels/poisson_tail.hpp"

namespace rsac::kernels {

void poisson_tail_accumulate_avx2(std::span<const double> means,
                                  std::span<double> acc) {
  const std::size_t r_max = acc.size();
  if (r_max == 0)
    return;

  // per-r vector accumulators; folded into acc at the end so the
  // reduction order is fixed regardless of input chunking
  std::vector<__m256d> accv(r_max, _mm256_setzero_pd());
  std::vector<double> inv_k(r_max);
  for (std::size_t k = 0; k < r_max; ++k)
    inv_k[k] = 1.0 / static_cast<double>(k + 1);

  std::vector<double> big;  // means whose pmf start underflows
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);

  std::size_t i = 0;
  for (; i + 4 <= means.size(); i += 4) {
    const double m0 = means[i], m1 = means[i + 1], m2 = means[i + 2],
                 m3 = means[i + 3];
    if (m0 > 700.0 || m1 > 700.0 || m2 > 700.0 || m3 > 700.0) {
      for (std::size_t j = 0; j < 4; ++j)
        big.push_back(means[i + j]);
      continue;
    }
    const __m256d mu = _mm256_setr_pd(m0, m1, m2, m3);
    __m256d pmf = _mm256_setr_pd(std::exp(-m0), std::exp(-m1), std::exp(-m2),
                                 std::exp(-m3));
    __m256d surv = one;
    for (std::size_t k = 0; k < r_max; ++k) {
      surv = _mm256_sub_pd(surv, pmf);
      surv = _mm256_max_pd(surv, zero);
      accv[k] = _mm256_add_pd(accv[k], surv);
      pmf = _mm256_mul_pd(pmf, _mm256_mul_pd(mu, _mm256_set1_pd(inv_k[k])));
    }
  }

  alignas(32) double lanes[4];
  for (std::size_t k = 0; k < r_max; ++k) {
    _mm256_store_pd(lanes, accv[k]);
    acc[k] += ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3]));
  }

  // scalar tail: remainder lanes plus any oversized means
  if (i < means.size())
    poisson_tail_accumulate_scalar(means.subspan(i), acc);
  if (!big.empty())
    poisson_tail_accumulate_scalar(std::span<const double>(big), acc);
}

}  // namespace rsac::kernels
