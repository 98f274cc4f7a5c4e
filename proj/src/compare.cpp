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

#include "rsac/compare.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "rsac/baselines.hpp"
#include "rsac/errors.hpp"

namespace rsac {

const std::vector<std::string> kAllMethods = {"rfa", "ztnb", "ls",
                                              "cs",  "bbc",  "ztp"};

const MethodError &CompareResult::method(const std::string &name) const {
  for (const MethodError &m : methods)
    if (m.method == name)
      return m;
  throw input_error("compare result does not contain method " + name);
}

std::vector<std::vector<double>> method_grid(const FrequencyHistogram &hist,
                                             const std::string &method,
                                             unsigned r_max,
                                             const std::vector<double> &ts) {
  // grid[r-1][k] for t = ts[k]
  std::vector<std::vector<double>> grid(r_max,
                                        std::vector<double>(ts.size(), 0.0));
  const auto fill = [&](const std::function<std::vector<double>(double)> &col) {
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const std::vector<double> column = col(ts[k]);
      for (unsigned r = 0; r < r_max; ++r)
        grid[r][k] = column[r];
    }
  };

  if (method == "rfa") {
    const auto [est, report] = construct(hist);
    fill([&](double t) { return est.evaluate_curve(r_max, t); });
  } else if (method == "ztnb") {
    const ZtnbFit fit = fit_ztnb(hist);
    fill([&](double t) { return rsac_ztnb_curve(fit, r_max, t); });
  } else if (method == "ztp") {
    const ZtpFit fit = fit_ztp(hist);
    fill([&](double t) { return rsac_ztp_curve(fit, r_max, t); });
  } else if (method == "ls") {
    const LogseriesFit fit = fit_logseries(hist);
    fill([&](double t) { return rsac_ls_curve(fit, r_max, t); });
  } else if (method == "bbc") {
    fill([&](double t) { return rsac_bbc_curve(hist, r_max, t); });
  } else if (method == "cs") {
    fill([&](double t) { return rsac_cs_curve(hist, r_max, t); });
  } else {
    throw input_error("unknown method: " + method);
  }
  return grid;
}

CompareResult run_compare(const CompareOptions &opts) {
  CompareResult result;
  result.model = opts.model.name();
  result.L = opts.L;
  result.reps = opts.reps;
  result.methods.resize(opts.methods.size());
  for (std::size_t i = 0; i < opts.methods.size(); ++i) {
    result.methods[i].method = opts.methods[i];
    result.methods[i].per_r_mean.assign(opts.r_max, 0.0);
  }
  std::vector<std::vector<std::size_t>> per_r_counts(
      opts.methods.size(), std::vector<std::size_t>(opts.r_max, 0));

  std::vector<double> ts(opts.t_max);
  for (unsigned k = 0; k < opts.t_max; ++k)
    ts[k] = static_cast<double>(k + 1);

  const RandomSource base(opts.seed);

  // deterministic models share one rate vector and one truth grid
  std::vector<std::vector<double>> truth_cache;
  RateVector rates_cache;
  if (opts.model.deterministic()) {
    RandomSource rng = base.substream(0);
    rates_cache = draw_population(opts.model, opts.L, rng);
    truth_cache.resize(opts.r_max);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const std::vector<double> col =
          true_rsac_curve(rates_cache, opts.r_max, ts[k]);
      for (unsigned r = 0; r < opts.r_max; ++r) {
        truth_cache[r].resize(ts.size());
        truth_cache[r][k] = col[r];
      }
    }
  }

  for (std::size_t rep = 0; rep < opts.reps; ++rep) {
    RandomSource rng = base.substream(rep);
    std::vector<std::vector<double>> truth;
    RateVector rates;
    if (opts.model.deterministic()) {
      rates = rates_cache;
      truth = truth_cache;
    } else {
      rates = draw_population(opts.model, opts.L, rng);
      truth.assign(opts.r_max, std::vector<double>(ts.size(), 0.0));
      for (std::size_t k = 0; k < ts.size(); ++k) {
        const std::vector<double> col =
            true_rsac_curve(rates, opts.r_max, ts[k]);
        for (unsigned r = 0; r < opts.r_max; ++r)
          truth[r][k] = col[r];
      }
    }
    const FrequencyHistogram hist = sample_poisson(rates, 1.0, rng);

    for (std::size_t mi = 0; mi < opts.methods.size(); ++mi) {
      MethodError &me = result.methods[mi];
      try {
        std::vector<std::vector<double>> grid;
        if (opts.methods[mi] == "rfa") {
          const auto [est, report] = construct(hist);
          if (opts.estimator_sink)
            opts.estimator_sink(est);
          grid.assign(opts.r_max, std::vector<double>(ts.size(), 0.0));
          for (std::size_t k = 0; k < ts.size(); ++k) {
            const std::vector<double> col = est.evaluate_curve(opts.r_max,
                                                               ts[k]);
            for (unsigned r = 0; r < opts.r_max; ++r)
              grid[r][k] = col[r];
          }
        } else {
          grid = method_grid(hist, opts.methods[mi], opts.r_max, ts);
        }
        const RelativeError err = relative_error(grid, truth);
        me.rep_errors.push_back(err.mean);
        for (unsigned r = 0; r < opts.r_max; ++r) {
          if (!std::isnan(err.per_r[r])) {
            me.per_r_mean[r] += err.per_r[r];
            ++per_r_counts[mi][r];
          }
        }
      } catch (const std::runtime_error &) {
        ++me.failed_reps;
      }
    }
  }

  for (std::size_t mi = 0; mi < result.methods.size(); ++mi) {
    MethodError &me = result.methods[mi];
    double sum = 0.0;
    for (const double e : me.rep_errors)
      sum += e;
    me.mean_error = me.rep_errors.empty()
                        ? std::numeric_limits<double>::quiet_NaN()
                        : sum / static_cast<double>(me.rep_errors.size());
    for (unsigned r = 0; r < opts.r_max; ++r)
      me.per_r_mean[r] = per_r_counts[mi][r] > 0
                             ? me.per_r_mean[r] /
                                   static_cast<double>(per_r_counts[mi][r])
                             : std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

}  // namespace rsac
