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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>

#include "rsac/errors.hpp"
#include "rsac/estimator.hpp"
#include "rsac/kernels/poisson_tail.hpp"
#include "rsac/simlab.hpp"

using namespace rsac;

namespace {

// word-frequency tail sums S_1..S_20 of the classic Shakespeare corpus,
// as a histogram with multiplicities >= 20 lumped at 20
FrequencyHistogram shakespeare() {
  return load_histogram_text(
      "1 14376\n2 4343\n3 2292\n4 1463\n5 1043\n6 837\n7 638\n8 519\n"
      "9 430\n10 364\n11 305\n12 259\n13 242\n14 223\n15 187\n16 181\n"
      "17 179\n18 130\n19 127\n20 3396");
}

const double kShakespeareS[20] = {31534, 17158, 12815, 10523, 9060, 8017,
                                  7180,  6542,  6023,  5593,  5229, 4924,
                                  4665,  4423,  4200,  4013,  3832, 3653,
                                  3523,  3396};

RsacEstimator make_est(std::vector<PoleTerm> terms) {
  return RsacEstimator(std::move(terms));
}

}  // namespace

TEST_CASE("Shakespeare construction reproduces the published estimator") {
  const auto [est, report] = construct(shakespeare());
  CHECK(est.m() == 3);
  CHECK(report.accepted_order == 4);
  CHECK(report.defects_removed == 1);

  // published: 120357.66 (x=-14.91), 24934.99 (x=-1.13), 13453.12 (x=-0.10)
  REQUIRE(est.terms().size() == 3);
  const auto &t0 = est.terms()[0];
  const auto &t1 = est.terms()[1];
  const auto &t2 = est.terms()[2];
  CHECK(t0.x.real() == doctest::Approx(-14.9144).epsilon(1e-3));
  CHECK(t1.x.real() == doctest::Approx(-1.1312).epsilon(1e-3));
  CHECK(t2.x.real() == doctest::Approx(-0.0963).epsilon(1e-3));
  CHECK(t0.c.real() == doctest::Approx(120357.66).epsilon(1e-4));
  CHECK(t1.c.real() == doctest::Approx(24934.99).epsilon(1e-4));
  CHECK(t2.c.real() == doctest::Approx(13453.12).epsilon(1e-4));
  CHECK(est.asymptote() == doctest::Approx(158745.77).epsilon(1e-4));

  // predicted totals at doubled effort
  CHECK(est.evaluate(1, 2.0) == doctest::Approx(42993.0).epsilon(0.002));
  CHECK(est.evaluate(2, 2.0) == doctest::Approx(24101.0).epsilon(0.002));

  // new words relative to the 31534 observed
  const double observed = 31534.0;
  CHECK(est.evaluate(1, 2.0) - observed ==
        doctest::Approx(11459).epsilon(0.01));
  CHECK(est.evaluate(1, 4.0) - observed ==
        doctest::Approx(26494).epsilon(0.01));
  CHECK(est.evaluate(1, 6.0) - observed ==
        doctest::Approx(37215).epsilon(0.01));
  CHECK(est.evaluate(1, 11.0) - observed ==
        doctest::Approx(55501).epsilon(0.01));
  CHECK(est.evaluate(1, 21.0) - observed ==
        doctest::Approx(75894).epsilon(0.01));

  // defect removal trades exact interpolation for stability; the values
  // at t = 1 stay within the defect-threshold scale of the tail sums
  for (unsigned r = 1; r <= 2 * est.m(); ++r)
    CHECK(est.evaluate(r, 1.0) ==
          doctest::Approx(kShakespeareS[r - 1]).epsilon(1e-3));
}

TEST_CASE("construction on a tiny histogram accepts the stable order 2") {
  // S = [6,3,1,0,...]: the order-2 convergent (6+3s)/(1+s+s^2/3) has
  // poles -0.5 +- (sqrt(3)/2) i and an everywhere-positive SAC
  // derivative, so it passes both gates and wins over the m=1 form
  const auto [est, report] = construct(load_histogram_text("1 3\n2 2\n3 1"));
  CHECK(est.m() == 2);
  CHECK(report.accepted_order == 2);
  CHECK(report.defects_removed == 0);
  REQUIRE(est.terms().size() == 2);
  CHECK(est.terms()[0].x.real() == doctest::Approx(-0.5));
  CHECK(std::fabs(est.terms()[0].x.imag()) ==
        doctest::Approx(std::sqrt(3.0) / 2.0));
  // defect-free constructions interpolate the tail sums exactly
  const double s_vals[4] = {6, 3, 1, 0};
  for (unsigned r = 1; r <= 4; ++r)
    CHECK(std::fabs(est.evaluate(r, 1.0) - s_vals[r - 1]) <= 1e-9 * 6.0);
}

TEST_CASE("the m=1 closed form matches its algebra") {
  const RsacEstimator est = m1_closed_form(6.0, 3.0);
  CHECK(est.m() == 1);
  CHECK(est.terms()[0].c.real() == doctest::Approx(12.0));
  CHECK(est.terms()[0].x.real() == doctest::Approx(-1.0));
  for (const double t : {0.5, 1.0, 2.0, 10.0})
    for (const unsigned r : {1u, 2u, 5u})
      CHECK(est.evaluate(r, t) ==
            doctest::Approx(12.0 * std::pow(t / (t + 1.0), r)).epsilon(1e-12));
  CHECK(est.asymptote() == doctest::Approx(12.0));
  CHECK(stability_gate(est));
  CHECK(is_increasing(est));
}

TEST_CASE("saturated samples collapse to the constant estimator") {
  const auto [est, report] = construct(load_histogram_text("20 50"));
  CHECK(report.saturated_shortcut);
  CHECK(est.saturated());
  for (const double t : {0.5, 1.0, 3.0, 1000.0})
    for (const unsigned r : {1u, 7u, 100u})
      CHECK(est.evaluate(r, t) == 50.0);  // exact
  CHECK(est.evaluate(3, 0.0) == 0.0);
  CHECK(est.asymptote() == 50.0);
  CHECK(is_increasing(est));

  // the m=1 formula path degenerates to the same constant
  const RsacEstimator eq14 = m1_closed_form(50.0, 50.0);
  for (const double t : {0.25, 1.0, 42.0})
    CHECK(eq14.evaluate(3, t) == 50.0);
}

TEST_CASE("construction requires N_1 and N_2 positive") {
  CHECK_THROWS_AS(construct(load_histogram_text("2 3\n3 1")),
                  construction_error);
  CHECK_THROWS_AS(construct(load_histogram_text("1 5\n3 2")),
                  construction_error);
}

TEST_CASE("stability gate on synthetic pole sets") {
  const RsacEstimator stable = make_est({{{1.0, 0.0}, {-1.0, 0.0}},
                                         {{2.0, 0.5}, {-2.0, 3.0}},
                                         {{2.0, -0.5}, {-2.0, -3.0}}});
  CHECK(stability_gate(stable));
  const RsacEstimator unstable = make_est({{{1.0, 0.0}, {0.5, 0.0}}});
  CHECK_FALSE(stability_gate(unstable));
  const RsacEstimator boundary = make_est({{{1.0, 0.0}, {-1e-15, 0.0}}});
  CHECK(stability_gate(boundary));
  const RsacEstimator at_zero = make_est({{{1.0, 0.0}, {0.0, 0.0}}});
  CHECK_FALSE(stability_gate(at_zero));
}

TEST_CASE("monotonicity gate catches a decreasing SAC") {
  // c = (1, -5), x = (-1, -2): derivative at t=1 is 0.25 - 10/9 < 0
  const RsacEstimator bad = make_est({{{1.0, 0.0}, {-1.0, 0.0}},
                                      {{-5.0, 0.0}, {-2.0, 0.0}}});
  CHECK(bad.sac_derivative(1.0) ==
        doctest::Approx(0.25 - 10.0 / 9.0).epsilon(1e-12));
  CHECK_FALSE(is_increasing(bad));
}

TEST_CASE("evaluate handles the t domain edges") {
  const RsacEstimator est = m1_closed_form(6.0, 3.0);
  CHECK(est.evaluate(5, 0.0) == 0.0);
  CHECK_THROWS_AS(est.evaluate(0, 1.0), input_error);
  CHECK_THROWS_AS(est.evaluate(1, -0.5), input_error);
}

TEST_CASE("stable estimators respect the coefficient-sum bound") {
  const auto [est, report] = construct(shakespeare());
  const double bound = est.coefficient_l1() * (1.0 + 1e-12);
  for (const double t : {0.0, 0.3, 1.0, 2.0, 17.0, 333.0, 1000.0})
    for (unsigned r = 1; r <= 200; r += 13)
      CHECK(std::fabs(est.evaluate(r, t)) <= bound);
  // decay in r at t = 1, and the asymptote at huge t
  CHECK(est.evaluate(200, 1.0) < 1e-3 * est.coefficient_l1());
  CHECK(est.evaluate(3, 1e9) ==
        doctest::Approx(est.asymptote()).epsilon(1e-4));
}

TEST_CASE("curve evaluation matches pointwise evaluation") {
  const auto [est, report] = construct(shakespeare());
  for (const double t : {0.0, 0.5, 1.0, 7.0, 95.0}) {
    const auto curve = est.evaluate_curve(200, t);
    for (unsigned r = 1; r <= 200; r += 7)
      CHECK(curve[r - 1] ==
            doctest::Approx(est.evaluate(r, t)).epsilon(1e-11));
  }
}

TEST_CASE("estimators reject inconsistent conjugate structure") {
  CHECK_THROWS_AS(make_est({{{1.0, 0.5}, {-1.0, 2.0}}}), numeric_error);
  CHECK_THROWS_AS(make_est({{{1.0, 0.5}, {-1.0, 2.0}},
                            {{1.0, -0.5}, {-1.0, -2.5}}}),
                  numeric_error);
}

TEST_CASE("estimator JSON serialization round-trips bit-exactly") {
  const auto [est, report] = construct(shakespeare());
  const std::string text = estimator_to_json(est, &report);
  const RsacEstimator back = estimator_from_json(text);
  REQUIRE(back.terms().size() == est.terms().size());
  for (std::size_t i = 0; i < est.terms().size(); ++i) {
    CHECK(back.terms()[i].c == est.terms()[i].c);
    CHECK(back.terms()[i].x == est.terms()[i].x);
  }
  CHECK(back.m() == est.m());
  CHECK_THROWS_AS(estimator_from_json("{ not json"), input_error);
}

TEST_CASE("phi_r power series special values") {
  TailSums s;
  s.values = {6, 3, 1};
  CHECK(phi_r_power_series(s, 1, 1.0) == doctest::Approx(6.0));
  // r=2, t=1.5: 1.5^2 (3 - 0.5 * 2 * 1) = 4.5
  CHECK(phi_r_power_series(s, 2, 1.5) == doctest::Approx(4.5));
}

TEST_CASE("phi_1 equals the classic alternating-counts form") {
  const auto hist = load_histogram_text("1 40\n2 19\n3 7\n4 3\n6 1");
  const TailSums s = tail_sums(hist, hist.max_multiplicity());
  for (const double t : {1.0, 1.2, 1.8}) {
    double expect = static_cast<double>(hist.total_species());
    for (const auto &[j, nj] : hist.entries())
      expect += (j % 2 == 1 ? 1.0 : -1.0) *
                std::pow(t - 1.0, static_cast<double>(j)) *
                static_cast<double>(nj);
    CHECK(phi_r_power_series(s, 1, t) ==
          doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("phi_2 is unbiased at small t on homogeneous samples") {
  const std::size_t L = 1000;
  const double t_eval = 1.5;
  RandomSource base(5150);
  RandomSource rng0 = base.substream(9999);
  const RateVector rates = draw_population(PopulationModel::homogeneous(), L,
                                           rng0);
  const double truth = true_rsac(rates, 2, t_eval);
  const int B = 2000;
  double sum = 0.0, sumsq = 0.0;
  for (int b = 0; b < B; ++b) {
    RandomSource rng = base.substream(static_cast<std::uint64_t>(b));
    const FrequencyHistogram hist = sample_poisson(rates, 1.0, rng);
    const TailSums s = tail_sums(hist, hist.max_multiplicity());
    const double v = phi_r_power_series(s, 2, t_eval);
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / B;
  const double sd = std::sqrt((sumsq - B * mean * mean) / (B - 1));
  const double se = sd / std::sqrt(1.0 * B);
  CHECK(std::fabs(mean - truth) <= 3.0 * se);
}

TEST_CASE("construction interpolates exactly when no defect was removed") {
  // smooth negative-binomial-like expected counts stay defect-free
  std::map<std::uint64_t, std::uint64_t> entries;
  const double L = 2e5, alpha = 0.7, beta = 1.3;
  double w = std::exp(-alpha * std::log1p(beta));
  for (std::uint64_t j = 1; j <= 60; ++j) {
    w *= (alpha + static_cast<double>(j - 1)) / static_cast<double>(j) *
         (beta / (1 + beta));
    const auto n = static_cast<std::uint64_t>(std::llround(L * w));
    if (n > 0)
      entries[j] = n;
  }
  const FrequencyHistogram hist(std::move(entries));
  const auto [est, report] = construct(hist);
  if (report.defects_removed == 0) {
    const TailSums s = tail_sums(hist, 2 * est.m());
    for (unsigned r = 1; r <= 2 * est.m(); ++r)
      CHECK(std::fabs(est.evaluate(r, 1.0) - s.values[r - 1]) <=
            1e-6 * std::max(1.0, s.values[r - 1]));
  }
}
