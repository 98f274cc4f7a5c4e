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

#ifndef RSAC_ERRORS_HPP
#define RSAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rsac {

// Exit-code contract used by the CLI: input errors map to 2,
// construction failures to 3, numeric failures to 4.

struct input_error : std::runtime_error {
  explicit input_error(const std::string &msg) : std::runtime_error(msg) {}
};

struct construction_error : std::runtime_error {
  explicit construction_error(const std::string &msg)
      : std::runtime_error(msg) {}
};

struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string &msg) : std::runtime_error(msg) {}
};

// A pole-zero cancellation left the denominator constant; the caller is
// expected to fall back to a smaller approximant order.
struct defect_degeneracy_error : numeric_error {
  explicit defect_degeneracy_error(const std::string &msg)
      : numeric_error(msg) {}
};

// Denominator roots closer than the simple-root tolerance; the repeated
// root expansion is detected and rejected, not implemented.
struct repeated_root_error : numeric_error {
  explicit repeated_root_error(const std::string &msg) : numeric_error(msg) {}
};

}  // namespace rsac

#endif
