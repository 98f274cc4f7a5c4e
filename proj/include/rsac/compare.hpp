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

#ifndef RSAC_COMPARE_HPP
#define RSAC_COMPARE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rsac/estimator.hpp"
#include "rsac/simlab.hpp"

namespace rsac {

/// The accuracy protocol: replicate simulations from one model, every
/// requested method fit on each simulated histogram and scored against
/// the analytic truth curves with the L2 relative-error metric on the
/// grid t = 1..t_max, r = 1..r_max.

extern const std::vector<std::string> kAllMethods;  // rfa ztnb ls cs bbc ztp

struct CompareOptions {
  PopulationModel model;
  std::size_t L = 100000;
  std::size_t reps = 50;
  unsigned r_max = 100;
  unsigned t_max = 100;
  std::uint64_t seed = 1;
  std::vector<std::string> methods = kAllMethods;
  /// Observes every accepted rational-function estimator (for property
  /// audits over simulation runs).
  std::function<void(const RsacEstimator &)> estimator_sink;
};

struct MethodError {
  std::string method;
  double mean_error = 0.0;         // mean over replicates
  std::vector<double> rep_errors;  // per-replicate mean relative error
  std::vector<double> per_r_mean;  // per-r error averaged over replicates
  std::size_t failed_reps = 0;     // replicates where the fit failed
};

struct CompareResult {
  std::string model;
  std::size_t L = 0;
  std::size_t reps = 0;
  std::vector<MethodError> methods;

  const MethodError &method(const std::string &name) const;
};

CompareResult run_compare(const CompareOptions &opts);

/// Method-r-t grid for one histogram (used by the CLI as well).
std::vector<std::vector<double>> method_grid(const FrequencyHistogram &hist,
                                             const std::string &method,
                                             unsigned r_max,
                                             const std::vector<double> &ts);

}  // namespace rsac

#endif
