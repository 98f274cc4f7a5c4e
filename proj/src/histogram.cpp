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

#include "rsac/histogram.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "rsac/errors.hpp"

namespace rsac {

FrequencyHistogram::FrequencyHistogram(
    std::map<std::uint64_t, std::uint64_t> entries)
    : entries_(std::move(entries)) {
  for (const auto &[j, n] : entries_) {
    if (j < 1)
      throw input_error("histogram multiplicity must be >= 1");
    if (n < 1)
      throw input_error("histogram stores only positive counts");
  }
}

std::uint64_t FrequencyHistogram::count_at(std::uint64_t j) const {
  const auto it = entries_.find(j);
  return it == entries_.end() ? 0 : it->second;
}

std::uint64_t FrequencyHistogram::total_species() const {
  std::uint64_t s = 0;
  for (const auto &[j, n] : entries_)
    s += n;
  return s;
}

std::uint64_t FrequencyHistogram::total_individuals() const {
  std::uint64_t s = 0;
  for (const auto &[j, n] : entries_)
    s += j * n;
  return s;
}

std::uint64_t FrequencyHistogram::max_multiplicity() const {
  return entries_.empty() ? 0 : entries_.rbegin()->first;
}

static bool parse_u64(const std::string &tok, std::uint64_t &out) {
  if (tok.empty())
    return false;
  for (const char c : tok)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      return false;
  try {
    out = std::stoull(tok);
  } catch (const std::exception &) {
    return false;
  }
  return true;
}

FrequencyHistogram load_histogram(std::istream &in) {
  std::map<std::uint64_t, std::uint64_t> entries;
  std::string line;
  std::size_t lineno = 0;
  bool saw_entry = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    std::istringstream fields(line);
    std::string jtok, ntok, extra;
    if (!(fields >> jtok))
      continue;  // blank line
    if (!(fields >> ntok) || (fields >> extra))
      throw input_error("line " + std::to_string(lineno) +
                        ": expected exactly two fields");
    std::uint64_t j = 0, n = 0;
    // a leading '-' fails the digit scan, covering j<1 and count<0
    if (!parse_u64(jtok, j) || j < 1)
      throw input_error("line " + std::to_string(lineno) +
                        ": bad multiplicity '" + jtok + "'");
    if (!parse_u64(ntok, n))
      throw input_error("line " + std::to_string(lineno) + ": bad count '" +
                        ntok + "'");
    if (!entries.emplace(j, n).second)
      throw input_error("line " + std::to_string(lineno) +
                        ": duplicate multiplicity " + std::to_string(j));
    saw_entry = true;
  }
  // zero counts are legal on input but never stored
  for (auto it = entries.begin(); it != entries.end();)
    it = (it->second == 0) ? entries.erase(it) : std::next(it);
  if (!saw_entry)
    throw input_error("empty histogram input");
  return FrequencyHistogram(std::move(entries));
}

FrequencyHistogram load_histogram_text(const std::string &text) {
  std::istringstream in(text);
  return load_histogram(in);
}

FrequencyHistogram load_histogram_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw input_error("cannot open histogram file: " + path);
  return load_histogram(in);
}

void save_histogram(const FrequencyHistogram &hist, std::ostream &out) {
  for (const auto &[j, n] : hist.entries())
    out << j << '\t' << n << '\n';
}

TailSums tail_sums(const FrequencyHistogram &hist, std::size_t J) {
  if (J < 1)
    throw input_error("tail_sums requires J >= 1");
  std::vector<std::uint64_t> sums(J, 0);
  // accumulate exactly, sweeping multiplicities from the largest down
  std::uint64_t running = 0;
  auto it = hist.entries().rbegin();
  for (std::size_t r = J; r >= 1; --r) {
    while (it != hist.entries().rend() && it->first >= r) {
      running += it->second;
      ++it;
    }
    sums[r - 1] = running;
  }
  TailSums out;
  out.values.assign(sums.begin(), sums.end());
  return out;
}

FrequencyHistogram bootstrap_resample(const FrequencyHistogram &hist,
                                      RandomSource &rng) {
  if (hist.empty())
    throw input_error("cannot resample an empty histogram");
  // multinomial via conditional binomials over the categories
  std::uint64_t remaining = hist.total_species();
  double weight_left = static_cast<double>(remaining);
  std::map<std::uint64_t, std::uint64_t> out;
  for (const auto &[j, n] : hist.entries()) {
    if (remaining == 0)
      break;
    const double w = static_cast<double>(n);
    std::uint64_t draw;
    if (w >= weight_left) {
      draw = remaining;  // last category takes the rest
    } else {
      std::binomial_distribution<std::uint64_t> bin(remaining, w / weight_left);
      draw = bin(rng.engine());
    }
    if (draw > 0)
      out[j] = draw;
    remaining -= draw;
    weight_left -= w;
  }
  return FrequencyHistogram(std::move(out));
}

FrequencyHistogram binomial_subsample(const FrequencyHistogram &hist,
                                      double fraction, RandomSource &rng) {
  if (!(fraction > 0.0) || fraction > 1.0)
    throw input_error("subsample fraction must be in (0, 1]");
  if (fraction == 1.0)
    return hist;
  std::map<std::uint64_t, std::uint64_t> out;
  for (const auto &[j, n] : hist.entries()) {
    // the N_j species at multiplicity j thin to a multinomial over retained
    // counts k = 0..j with Binomial(j, fraction) cell probabilities;
    // drawn by conditional binomials
    std::uint64_t remaining = n;
    double prob_left = 1.0;
    for (std::uint64_t k = 0; k <= j && remaining > 0; ++k) {
      double logp = static_cast<double>(k) * std::log(fraction) +
                    static_cast<double>(j - k) * std::log1p(-fraction);
      double choose = std::lgamma(static_cast<double>(j) + 1.0) -
                      std::lgamma(static_cast<double>(k) + 1.0) -
                      std::lgamma(static_cast<double>(j - k) + 1.0);
      const double pk = std::exp(choose + logp);
      std::uint64_t draw;
      if (k == j || pk >= prob_left) {
        draw = remaining;
      } else {
        std::binomial_distribution<std::uint64_t> bin(remaining,
                                                      pk / prob_left);
        draw = bin(rng.engine());
      }
      if (k > 0 && draw > 0)
        out[k] += draw;
      remaining -= draw;
      prob_left -= pk;
    }
  }
  return FrequencyHistogram(std::move(out));
}

}  // namespace rsac
