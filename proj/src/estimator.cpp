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

#include "rsac/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "rsac/errors.hpp"

namespace rsac {

using std::complex;

namespace {

constexpr double conj_structure_tol = 1e-9;

// Pair every off-axis term with its mirror and store the pair exactly
// conjugate; evaluation then sums 2 Re(...) per pair and stays real by
// construction.
std::vector<PoleTerm> canonicalize(std::vector<PoleTerm> terms) {
  std::vector<PoleTerm> reals, pairs;
  std::vector<PoleTerm> upper, lower;
  for (const PoleTerm &term : terms) {
    const double mag = std::max(std::abs(term.x), 1.0);
    if (std::abs(term.x.imag()) <= conj_structure_tol * mag &&
        std::abs(term.c.imag()) <=
            conj_structure_tol * std::max(std::abs(term.c), 1.0)) {
      reals.push_back({{term.c.real(), 0.0}, {term.x.real(), 0.0}});
    } else if (term.x.imag() > 0.0) {
      upper.push_back(term);
    } else {
      lower.push_back(term);
    }
  }
  if (upper.size() != lower.size())
    throw numeric_error("estimator terms: inconsistent conjugate structure");
  std::vector<bool> taken(lower.size(), false);
  for (const PoleTerm &u : upper) {
    std::size_t best = lower.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < lower.size(); ++j) {
      if (taken[j])
        continue;
      const double d = std::abs(std::conj(u.x) - lower[j].x) +
                       std::abs(std::conj(u.c) - lower[j].c);
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    const double scale = std::max(1.0, std::abs(u.x) + std::abs(u.c));
    if (best == lower.size() || best_dist > conj_structure_tol * scale)
      throw numeric_error("estimator terms: inconsistent conjugate structure");
    taken[best] = true;
    const complex<double> x(0.5 * (u.x.real() + lower[best].x.real()),
                            0.5 * (u.x.imag() - lower[best].x.imag()));
    const complex<double> c(0.5 * (u.c.real() + lower[best].c.real()),
                            0.5 * (u.c.imag() - lower[best].c.imag()));
    pairs.push_back({c, x});
  }

  const auto by_pole = [](const PoleTerm &a, const PoleTerm &b) {
    if (a.x.real() != b.x.real())
      return a.x.real() < b.x.real();
    return a.x.imag() < b.x.imag();
  };
  std::sort(reals.begin(), reals.end(), by_pole);
  std::sort(pairs.begin(), pairs.end(), by_pole);

  std::vector<PoleTerm> out = std::move(reals);
  for (const PoleTerm &p : pairs) {
    out.push_back(p);
    out.push_back({std::conj(p.c), std::conj(p.x)});
  }
  return out;
}

}  // namespace

RsacEstimator::RsacEstimator(std::vector<PoleTerm> terms, bool saturated)
    : terms_(canonicalize(std::move(terms))), saturated_(saturated) {
  if (terms_.empty())
    throw numeric_error("estimator must have at least one term");
}

double RsacEstimator::evaluate(unsigned r, double t) const {
  if (r < 1)
    throw input_error("evaluate: r must be >= 1");
  if (!(t >= 0.0))
    throw input_error("evaluate: t must be >= 0");
  if (t == 0.0)
    return 0.0;
  const double rr = static_cast<double>(r);
  double acc = 0.0;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const PoleTerm &term = terms_[i];
    if (term.x.imag() == 0.0) {
      acc += term.c.real() * std::pow(t / (t - term.x.real()), rr);
    } else if (term.x.imag() > 0.0) {
      const complex<double> w = t / (t - term.x);
      acc += 2.0 * (term.c * std::pow(w, rr)).real();
    }  // lower-half terms are the mirrored halves of the pairs
  }
  return acc;
}

std::vector<double> RsacEstimator::evaluate_curve(unsigned r_max,
                                                  double t) const {
  if (r_max < 1)
    throw input_error("evaluate_curve: r_max must be >= 1");
  if (!(t >= 0.0))
    throw input_error("evaluate_curve: t must be >= 0");
  std::vector<double> out(r_max, 0.0);
  if (t == 0.0)
    return out;
  for (const PoleTerm &term : terms_) {
    if (term.x.imag() < 0.0)
      continue;
    if (term.x.imag() == 0.0) {
      const double w = t / (t - term.x.real());
      double wp = 1.0;
      for (unsigned r = 1; r <= r_max; ++r) {
        wp *= w;
        out[r - 1] += term.c.real() * wp;
      }
    } else {
      const complex<double> w = t / (t - term.x);
      complex<double> wp = 1.0;
      for (unsigned r = 1; r <= r_max; ++r) {
        wp *= w;
        out[r - 1] += 2.0 * (term.c * wp).real();
      }
    }
  }
  return out;
}

double RsacEstimator::sac_derivative(double t) const {
  double acc = 0.0;
  for (const PoleTerm &term : terms_) {
    if (term.x.imag() < 0.0)
      continue;
    const complex<double> d = t - term.x;
    const complex<double> v = -term.c * term.x / (d * d);
    acc += (term.x.imag() == 0.0) ? v.real() : 2.0 * v.real();
  }
  return acc;
}

double RsacEstimator::asymptote() const {
  double acc = 0.0;
  for (const PoleTerm &term : terms_) {
    if (term.x.imag() < 0.0)
      continue;
    acc += (term.x.imag() == 0.0) ? term.c.real() : 2.0 * term.c.real();
  }
  return acc;
}

double RsacEstimator::coefficient_l1() const {
  double acc = 0.0;
  for (const PoleTerm &term : terms_)
    acc += std::abs(term.c);
  return acc;
}

bool stability_gate(const RsacEstimator &est) {
  for (const PoleTerm &term : est.terms())
    if (!(term.x.real() < 0.0))
      return false;
  return true;
}

bool is_increasing(const RsacEstimator &est) {
  // t = 1 to 100, step 0.05
  for (std::size_t k = 0; k <= 1980; ++k) {
    const double t = 1.0 + 0.05 * static_cast<double>(k);
    if (!(est.sac_derivative(t) >= 0.0))
      return false;
  }
  return true;
}

std::string ConstructionReport::describe() const {
  std::ostringstream out;
  out << "m_max=" << m_max << " accepted_order=" << accepted_order
      << " terms=" << accepted_terms;
  if (saturated_shortcut)
    out << " (saturated shortcut)";
  if (m1_fallback)
    out << " (m=1 fallback)";
  if (defects_removed > 0)
    out << " defects_removed=" << defects_removed;
  for (const auto &rej : rejections)
    out << "; rejected m=" << rej.m << ": " << rej.reason;
  return out.str();
}

RsacEstimator m1_closed_form(double s1, double s2) {
  if (!(s1 > 0.0) || !(s2 > 0.0))
    throw construction_error("m=1 closed form needs S_1 > 0 and S_2 > 0");
  std::vector<PoleTerm> terms{
      {{s1 * s1 / s2, 0.0}, {-(s1 - s2) / s2, 0.0}}};
  return RsacEstimator(std::move(terms));
}

namespace {

// Numeric self-check: an untouched convergent must interpolate the tail
// sums at t = 1 (defect removal intentionally gives that up, so
// defect-removed candidates skip this check).  Failure here means the
// float pipeline broke down at this order.
bool interpolation_ok(const RsacEstimator &est, const TailSums &s,
                      std::size_t m) {
  for (std::size_t r = 1; r <= 2 * m && r <= s.size(); ++r) {
    const double expect = s.values[r - 1];
    const double got = est.evaluate(static_cast<unsigned>(r), 1.0);
    if (std::fabs(got - expect) > 1e-6 * std::max(1.0, expect))
      return false;
  }
  return true;
}

}  // namespace

std::pair<RsacEstimator, ConstructionReport> construct(
    const FrequencyHistogram &hist, std::size_t m_max) {
  if (m_max < 1)
    throw input_error("construct: m_max must be >= 1");
  ConstructionReport report;
  report.m_max = m_max;

  const TailSums s = tail_sums(hist, 2 * m_max);
  const double s1 = s.values[0];

  if (s1 > 0.0 && s.values[2 * m_max - 1] == s1) {
    // saturated sample: the approximant degenerates to L/t and the
    // estimator to the constant L
    report.saturated_shortcut = true;
    report.accepted_order = 1;
    report.accepted_terms = 1;
    RsacEstimator est({PoleTerm{{s1, 0.0}, {0.0, 0.0}}}, true);
    return {std::move(est), std::move(report)};
  }

  if (hist.count_at(1) == 0 || hist.count_at(2) == 0)
    throw construction_error(
        "construction requires N_1 > 0 and N_2 > 0 (species observed "
        "exactly once and exactly twice)");

  const PowerSeries ps = phi_coefficients(s, 2 * m_max);
  const ContinuedFraction cf = qd_continued_fraction(ps);
  const std::size_t m_eff = std::min(m_max, cf.max_m());
  for (std::size_t m = m_max; m > m_eff; --m)
    report.rejections.push_back({m, "continued fraction truncated by the "
                                    "quotient-difference zero rule"});

  for (std::size_t m = m_eff; m >= 1; --m) {
    try {
      const RationalApproximant rf = convergent(cf, 2 * m);
      const DefectRemoval dr = remove_defects(rf);
      const auto terms = partial_fractions(dr.rf);
      RsacEstimator est(terms);
      if (!stability_gate(est)) {
        report.rejections.push_back({m, "pole with non-negative real part"});
        continue;
      }
      if (!is_increasing(est)) {
        report.rejections.push_back({m, "SAC not increasing on the grid"});
        continue;
      }
      if (dr.removed_pairs == 0 && !interpolation_ok(est, s, m)) {
        report.rejections.push_back({m, "interpolation drift at t = 1"});
        continue;
      }
      report.accepted_order = m;
      report.accepted_terms = est.m();
      report.defects_removed = dr.removed_pairs;
      return {std::move(est), std::move(report)};
    } catch (const defect_degeneracy_error &) {
      report.rejections.push_back({m, "defect removal degenerated the "
                                      "denominator"});
    } catch (const repeated_root_error &) {
      report.rejections.push_back({m, "near-repeated denominator roots"});
    } catch (const numeric_error &e) {
      report.rejections.push_back({m, e.what()});
    }
  }

  // Eq.-14 fallback; valid whenever S_1 > S_2 > 0
  const double s2 = s.values[1];
  if (s1 > s2 && s2 > 0.0) {
    RsacEstimator est = m1_closed_form(s1, s2);
    if (stability_gate(est) && is_increasing(est)) {
      report.accepted_order = 1;
      report.accepted_terms = 1;
      report.m1_fallback = true;
      return {std::move(est), std::move(report)};
    }
  }
  throw construction_error("no stable increasing estimator found: " +
                           report.describe());
}

double phi_r_power_series(const TailSums &s, unsigned r, double t) {
  if (r < 1)
    throw input_error("phi_r_power_series: r must be >= 1");
  const double u = t - 1.0;
  double binom = 1.0;  // C(r-1+i, r-1), updated incrementally
  double power = 1.0;
  double acc = 0.0;
  for (std::size_t i = 0; r + i <= s.size(); ++i) {
    if (i > 0) {
      binom *= static_cast<double>(r - 1 + i) / static_cast<double>(i);
      power *= -u;
    }
    acc += binom * power * s.values[r + i - 1];
  }
  return std::pow(t, static_cast<double>(r)) * acc;
}

std::string estimator_to_json(const RsacEstimator &est,
                              const ConstructionReport *report) {
  nlohmann::json j;
  j["m"] = est.m();
  j["saturated"] = est.saturated();
  j["asymptote"] = est.asymptote();
  nlohmann::json terms = nlohmann::json::array();
  for (const PoleTerm &term : est.terms()) {
    terms.push_back({{"c", {term.c.real(), term.c.imag()}},
                     {"x", {term.x.real(), term.x.imag()}}});
  }
  j["terms"] = std::move(terms);
  if (report != nullptr) {
    nlohmann::json rep;
    rep["m_max"] = report->m_max;
    rep["accepted_order"] = report->accepted_order;
    rep["accepted_terms"] = report->accepted_terms;
    rep["saturated_shortcut"] = report->saturated_shortcut;
    rep["m1_fallback"] = report->m1_fallback;
    rep["defects_removed"] = report->defects_removed;
    nlohmann::json rejections = nlohmann::json::array();
    for (const auto &rej : report->rejections)
      rejections.push_back({{"m", rej.m}, {"reason", rej.reason}});
    rep["rejections"] = std::move(rejections);
    j["report"] = std::move(rep);
  }
  return j.dump(2);
}

RsacEstimator estimator_from_json(const std::string &text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw input_error(std::string("estimator JSON: ") + e.what());
  }
  try {
    std::vector<PoleTerm> terms;
    for (const auto &item : j.at("terms")) {
      const auto &c = item.at("c");
      const auto &x = item.at("x");
      terms.push_back({{c.at(0).get<double>(), c.at(1).get<double>()},
                       {x.at(0).get<double>(), x.at(1).get<double>()}});
    }
    if (j.at("m").get<std::size_t>() != terms.size())
      throw input_error("estimator JSON: m does not match the term count");
    return RsacEstimator(std::move(terms), j.value("saturated", false));
  } catch (const nlohmann::json::exception &e) {
    throw input_error(std::string("estimator JSON: ") + e.what());
  }
}

}  // namespace rsac
