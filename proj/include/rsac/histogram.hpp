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

#ifndef RSAC_HISTOGRAM_HPP
#define RSAC_HISTOGRAM_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rsac/random.hpp"

namespace rsac {

/// Sparse count histogram: multiplicity j -> number of species observed
/// exactly j times.  Keys are >= 1 and stored counts are >= 1; immutable
/// after construction and safe to share across threads.
class FrequencyHistogram {
public:
  FrequencyHistogram() = default;
  explicit FrequencyHistogram(std::map<std::uint64_t, std::uint64_t> entries);

  const std::map<std::uint64_t, std::uint64_t> &entries() const {
    return entries_;
  }

  /// Count at multiplicity j (0 when absent).
  std::uint64_t count_at(std::uint64_t j) const;

  /// S_1, the number of distinct species observed.
  std::uint64_t total_species() const;

  /// N, the number of individuals observed.
  std::uint64_t total_individuals() const;

  std::uint64_t max_multiplicity() const;

  bool empty() const { return entries_.empty(); }

private:
  std::map<std::uint64_t, std::uint64_t> entries_;
};

/// Tail sums S_1..S_J with S_r = sum over j >= r of N_j. Accumulated in
/// exact integer arithmetic; values are converted to double only here at
/// the series boundary (integers this size are exact in double).
struct TailSums {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  /// S_r, 1-based.
  double at(std::size_t r) const { return values.at(r - 1); }
};

/// Parse "j count" lines; '#' starts a comment, blank lines are skipped.
/// Throws input_error on malformed lines, duplicate multiplicities, or
/// entirely empty input.  A count of 0 is accepted and omitted.
FrequencyHistogram load_histogram(std::istream &in);
FrequencyHistogram load_histogram_text(const std::string &text);
FrequencyHistogram load_histogram_file(const std::string &path);

/// Serialize in the same two-column format.
void save_histogram(const FrequencyHistogram &hist, std::ostream &out);

TailSums tail_sums(const FrequencyHistogram &hist, std::size_t J);

/// Multinomial bootstrap of the count vector: S_1 species are reassigned
/// to multiplicities with probabilities proportional to (N_1..N_jmax).
/// Total species count is preserved exactly.
FrequencyHistogram bootstrap_resample(const FrequencyHistogram &hist,
                                      RandomSource &rng);

/// Bernoulli thinning: each individual is kept independently with the
/// given probability; species losing all individuals drop out.
/// fraction = 1 returns the input unchanged.
FrequencyHistogram binomial_subsample(const FrequencyHistogram &hist,
                                      double fraction, RandomSource &rng);

}  // namespace rsac

#endif
