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

#include "rsac/errors.hpp"
#include "rsac/pade.hpp"

namespace rsac {

PowerSeries phi_coefficients(const TailSums &s, std::size_t n) {
  if (n < 1)
    throw input_error("phi_coefficients requires n >= 1");
  if (s.size() < n)
    throw input_error("phi_coefficients: need " + std::to_string(n) +
                      " tail sums, have " + std::to_string(s.size()));
  PowerSeries ps;
  ps.coeffs.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    ps.coeffs[i] = (i % 2 == 0 ? 1.0 : -1.0) * s.values[i];
  return ps;
}

}  // namespace rsac
