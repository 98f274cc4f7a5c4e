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
#include <random>

#include "rsac/errors.hpp"
#include "rsac/pade.hpp"
#include "rsac/random.hpp"

using namespace rsac;

namespace {

TailSums make_tails(const std::vector<double> &v) {
  TailSums s;
  s.values = v;
  return s;
}

// Mixture-of-geometric tail sums S_r = sum_k w_k rho_k^r.  The decay
// rates are kept well separated: clustered rates make the underlying
// Hankel systems ill-conditioned, and these generators feed tests that
// assume well-conditioned inputs.
TailSums random_tails(RandomSource &rng, std::size_t n) {
  std::uniform_real_distribution<double> wdist(0.5, 50.0);
  std::uniform_real_distribution<double> jitter(-0.04, 0.04);
  const double base[] = {0.12, 0.27, 0.42, 0.57, 0.72, 0.9};
  const int k = 6;
  std::vector<double> w(k), rho(k);
  for (int i = 0; i < k; ++i) {
    w[i] = wdist(rng.engine());
    rho[i] = base[i] + jitter(rng.engine());
  }
  std::vector<double> s(n, 0.0);
  for (std::size_t r = 1; r <= n; ++r)
    for (int i = 0; i < k; ++i)
      s[r - 1] += w[i] * std::pow(rho[i], static_cast<double>(r));
  return make_tails(s);
}

// Taylor coefficients of numer/denom at s = 0 by series division.
std::vector<double> rational_series(const RationalApproximant &rf,
                                    std::size_t count) {
  std::vector<double> d(count, 0.0);
  for (std::size_t k = 0; k < count; ++k) {
    double acc = k < rf.numer.size() ? rf.numer[k] : 0.0;
    for (std::size_t j = 1; j <= k && j < rf.denom.size(); ++j)
      acc -= rf.denom[j] * d[k - j];
    d[k] = acc;  // denom[0] == 1
  }
  return d;
}

double eval_poly(const std::vector<double> &coeffs, double s) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * s + *it;
  return acc;
}

}  // namespace

TEST_CASE("phi coefficients alternate in sign") {
  const PowerSeries ps = phi_coefficients(make_tails({6, 3, 1}), 3);
  CHECK(ps.coeffs == std::vector<double>{6, -3, 1});
}

TEST_CASE("phi coefficients on the Shakespeare prefix") {
  const PowerSeries ps =
      phi_coefficients(make_tails({31534, 17158, 12815, 10523}), 4);
  CHECK(ps.coeffs == std::vector<double>{31534, -17158, 12815, -10523});
}

TEST_CASE("phi coefficients length check") {
  CHECK_THROWS_AS(phi_coefficients(make_tails({5}), 2), input_error);
}

TEST_CASE("qd on a geometric series truncates and returns the exact pole") {
  const double q = 0.4;
  PowerSeries ps;
  ps.coeffs = {1.0, -q, q * q, -q * q * q};
  const ContinuedFraction cf = qd_continued_fraction(ps);
  // e-row vanishes: only two coefficients survive
  REQUIRE(cf.coeffs.size() == 2);
  CHECK(cf.coeffs[0] == doctest::Approx(1.0));
  CHECK(cf.coeffs[1] == doctest::Approx(q));
  const RationalApproximant rf = convergent(cf, 2);
  CHECK(rf.numer[0] == doctest::Approx(1.0));
  CHECK(rf.denom[0] == doctest::Approx(1.0));
  CHECK(rf.denom[1] == doctest::Approx(q));
}

TEST_CASE("qd matches the linear-solve oracle on a short series") {
  const TailSums s = make_tails({6, 3, 1, 0.2});
  const ContinuedFraction cf = qd_continued_fraction(phi_coefficients(s, 4));
  REQUIRE(cf.max_m() >= 2);
  const RationalApproximant a = convergent(cf, 4);
  const RationalApproximant b = pade_linear_solve(s, 2);
  REQUIRE(a.numer.size() == b.numer.size());
  REQUIRE(a.denom.size() == b.denom.size());
  for (std::size_t i = 0; i < a.numer.size(); ++i)
    CHECK(a.numer[i] == doctest::Approx(b.numer[i]).epsilon(1e-10));
  for (std::size_t i = 0; i < a.denom.size(); ++i)
    CHECK(a.denom[i] == doctest::Approx(b.denom[i]).epsilon(1e-10));
}

TEST_CASE("qd truncates at a zero coefficient") {
  PowerSeries ps;
  ps.coeffs = {5.0, 0.0, 3.0, 1.0};
  const ContinuedFraction cf = qd_continued_fraction(ps);
  CHECK(cf.coeffs.size() == 1);
  CHECK(cf.max_m() == 0);
}

TEST_CASE("qd rejects a zero first coefficient") {
  PowerSeries ps;
  ps.coeffs = {0.0, 1.0};
  CHECK_THROWS_AS(qd_continued_fraction(ps), input_error);
}

TEST_CASE("order-2 convergent is S_1 / (1 + (S_2/S_1) s)") {
  const TailSums s = make_tails({6, 3, 1, 0.5});
  const ContinuedFraction cf = qd_continued_fraction(phi_coefficients(s, 4));
  const RationalApproximant rf = convergent(cf, 2);
  REQUIRE(rf.numer.size() == 1);
  REQUIRE(rf.denom.size() == 2);
  CHECK(rf.numer[0] == doctest::Approx(6.0));
  CHECK(rf.denom[1] == doctest::Approx(0.5));
}

TEST_CASE("convergent rejects bad orders") {
  PowerSeries ps;
  ps.coeffs = {6.0, -3.0, 1.0, -0.2};
  const ContinuedFraction cf = qd_continued_fraction(ps);
  CHECK_THROWS_AS(convergent(cf, 3), input_error);
  CHECK_THROWS_AS(convergent(cf, cf.coeffs.size() + 2), input_error);
}

TEST_CASE("convergents match the series through order 2m-1") {
  RandomSource rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const TailSums s = random_tails(rng, 12);
    const PowerSeries ps = phi_coefficients(s, 12);
    const ContinuedFraction cf = qd_continued_fraction(ps);
    for (std::size_t m = 1; m <= std::min<std::size_t>(cf.max_m(), 5); ++m) {
      const RationalApproximant rf = convergent(cf, 2 * m);
      const std::vector<double> series = rational_series(rf, 2 * m);
      for (std::size_t i = 0; i < 2 * m; ++i)
        CHECK(series[i] ==
              doctest::Approx(ps.coeffs[i]).epsilon(1e-6).scale(
                  std::fabs(ps.coeffs[0])));
    }
  }
}

TEST_CASE("qd and linear-solve routes agree on random tail sums") {
  RandomSource rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const TailSums s = random_tails(rng, 10);
    const ContinuedFraction cf =
        qd_continued_fraction(phi_coefficients(s, 10));
    for (std::size_t m = 1; m <= std::min<std::size_t>(cf.max_m(), 5); ++m) {
      const RationalApproximant a = convergent(cf, 2 * m);
      const RationalApproximant b = pade_linear_solve(s, m);
      for (std::size_t i = 0; i < a.numer.size(); ++i)
        CHECK(a.numer[i] == doctest::Approx(b.numer[i]).epsilon(1e-8));
      for (std::size_t i = 0; i < a.denom.size(); ++i)
        CHECK(a.denom[i] == doctest::Approx(b.denom[i]).epsilon(1e-8));
    }
  }
}

TEST_CASE("hankel determinants on small cases") {
  CHECK(hankel_det(make_tails({6, 3, 1}), 1, 2) == doctest::Approx(-3.0));
  CHECK(hankel_det(make_tails({6, 3}), 1, 1) == doctest::Approx(3.0));
  // the S_0 = 0 padding rule
  CHECK(hankel_det(make_tails({6, 3}), 0, 2) == doctest::Approx(-36.0));
}

TEST_CASE("poly_roots finds known roots") {
  // s^2 + 1
  const auto r1 = poly_roots({1.0, 0.0, 1.0});
  REQUIRE(r1.size() == 2);
  CHECK(r1[0].real() == doctest::Approx(0.0));
  CHECK(r1[0].imag() == doctest::Approx(-1.0));
  CHECK(r1[1] == std::conj(r1[0]));

  // 1 + 0.5 s: root at s = -2, i.e. t-domain pole at -1
  const auto r2 = poly_roots({1.0, 0.5});
  REQUIRE(r2.size() == 1);
  CHECK(r2[0].real() == doctest::Approx(-2.0));
  CHECK(r2[0].imag() == 0.0);
}

TEST_CASE("poly_roots reconstructs random polynomials") {
  RandomSource rng(33);
  std::uniform_real_distribution<double> cdist(-3.0, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> coeffs(6);
    for (double &c : coeffs)
      c = cdist(rng.engine());
    if (std::fabs(coeffs.back()) < 0.1)
      coeffs.back() = 1.0;
    const auto roots = poly_roots(coeffs);
    REQUIRE(roots.size() == 5);
    // multiset closed under conjugation
    for (const auto &z : roots) {
      bool found = false;
      for (const auto &w : roots)
        if (w == std::conj(z))
          found = true;
      CHECK(found);
    }
    // product of (s - root) reconstructs the monic coefficients
    std::vector<std::complex<double>> poly{1.0};
    for (const auto &z : roots) {
      std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i] -= z * poly[i];
        next[i + 1] += poly[i];
      }
      poly = std::move(next);
    }
    double scale = 0.0;
    for (const double c : coeffs)
      scale = std::max(scale, std::fabs(c));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      CHECK(std::fabs(poly[i].real() * coeffs.back() - coeffs[i]) <=
            1e-8 * scale);
      CHECK(std::fabs(poly[i].imag()) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("poly_roots rejects a zero leading coefficient") {
  CHECK_THROWS_AS(poly_roots({1.0, 2.0, 0.0}), numeric_error);
  CHECK_THROWS_AS(poly_roots({1.0}), input_error);
}

TEST_CASE("remove_defects leaves well-separated functions alone") {
  RationalApproximant rf;
  rf.numer = {6.0, 3.0};
  rf.denom = {1.0, 1.0, 1.0 / 3.0};
  const DefectRemoval out = remove_defects(rf);
  CHECK(out.removed_pairs == 0);
  CHECK(out.rf.numer == rf.numer);
  CHECK(out.rf.denom == rf.denom);
}

TEST_CASE("remove_defects cancels a constructed pole-zero pair") {
  // numer roots {a, b}, denom roots {a', c} with |a - a'| = 1e-5
  const double a = -1.0, b = -3.0, ap = -1.0 + 1e-5, c = -5.0;
  RationalApproximant rf;
  // (s-a)(s-b) = s^2 - (a+b)s + ab ; normalize denominator at 0
  const double q0 = ap * c;
  rf.numer = {a * b / q0, -(a + b) / q0, 1.0 / q0};
  rf.denom = {1.0, -(ap + c) / q0, 1.0 / q0};
  const DefectRemoval out = remove_defects(rf, 1e-3);
  CHECK(out.removed_pairs == 1);
  REQUIRE(out.rf.numer.size() == 2);
  REQUIRE(out.rf.denom.size() == 2);
  // remaining function is (s-b)/(s-c) up to the denominator normalization
  const auto expect_ratio_at = [&](double s) { return (s - b) / (s - c); };
  for (const double s : {0.0, 0.7, 2.0, -0.3})
    CHECK(out.rf.eval_numer(s) / out.rf.eval_denom(s) ==
          doctest::Approx(expect_ratio_at(s)).epsilon(1e-6));
  CHECK(out.rf.denom[0] == doctest::Approx(1.0));
}

TEST_CASE("remove_defects respects the threshold boundary") {
  const double a = -1.0, b = -3.0, ap = -1.0 + 0.01, c = -5.0;
  RationalApproximant rf;
  const double q0 = ap * c;
  rf.numer = {a * b / q0, -(a + b) / q0, 1.0 / q0};
  rf.denom = {1.0, -(ap + c) / q0, 1.0 / q0};
  const DefectRemoval out = remove_defects(rf, 1e-3);
  CHECK(out.removed_pairs == 0);
}

TEST_CASE("remove_defects signals a degenerate cancellation") {
  // single pole cancelled by a nearby zero leaves a constant denominator
  RationalApproximant rf;
  const double y = -2.0, z = -2.0 + 1e-6;
  rf.numer = {-y / -z, 1.0 / -z};   // (s - y)/(-z)
  rf.denom = {1.0, 1.0 / -z};       // (s - z)/(-z)
  CHECK_THROWS_AS(remove_defects(rf, 1e-3), defect_degeneracy_error);
}

TEST_CASE("partial fractions of the m=1 approximant") {
  RationalApproximant rf;
  rf.numer = {6.0};
  rf.denom = {1.0, 0.5};
  const auto terms = partial_fractions(rf);
  REQUIRE(terms.size() == 1);
  CHECK(terms[0].c.real() == doctest::Approx(12.0));
  CHECK(terms[0].c.imag() == 0.0);
  CHECK(terms[0].x.real() == doctest::Approx(-1.0));
  CHECK(terms[0].x.imag() == 0.0);
}

TEST_CASE("partial fractions pairs conjugate residues") {
  // denominator s^2 + 1: poles +-i, numerator 2s + 2
  RationalApproximant rf;
  rf.numer = {2.0, 2.0};
  rf.denom = {1.0, 0.0, 1.0};
  const auto terms = partial_fractions(rf);
  REQUIRE(terms.size() == 2);
  CHECK(terms[0].c == std::conj(terms[1].c));
  CHECK(terms[0].x == std::conj(terms[1].x));
}

TEST_CASE("partial fractions rejects near-repeated roots") {
  const double z1 = -2.0, z2 = -2.0 + 1e-10;
  RationalApproximant rf;
  const double q0 = z1 * z2;
  rf.numer = {1.0, 0.0};
  rf.denom = {1.0, -(z1 + z2) / q0, 1.0 / q0};
  CHECK_THROWS_AS(partial_fractions(rf), repeated_root_error);
}

TEST_CASE("partial fraction round trip on random approximants") {
  RandomSource rng(44);
  for (int trial = 0; trial < 25; ++trial) {
    const TailSums s = random_tails(rng, 12);
    const ContinuedFraction cf =
        qd_continued_fraction(phi_coefficients(s, 12));
    const std::size_t m = std::min<std::size_t>(cf.max_m(), 3);
    if (m < 1)
      continue;
    const RationalApproximant rf = convergent(cf, 2 * m);
    const auto terms = partial_fractions(rf);
    REQUIRE(terms.size() == m);
    for (int k = 0; k < 20; ++k) {
      const double t = 0.5 + 5.0 * k;  // t domain; s = t - 1
      std::complex<double> sum = 0.0;
      for (const auto &term : terms)
        sum += term.c / (t - term.x);
      const double direct = rf.eval_numer(t - 1.0) / rf.eval_denom(t - 1.0);
      CHECK(std::fabs(sum.real() - direct) <=
            1e-8 * std::max(1.0, std::fabs(direct)));
      CHECK(std::fabs(sum.imag()) <= 1e-8 * std::max(1.0, std::fabs(direct)));
    }
  }
}

TEST_CASE("asymptote magnitude matches the Hankel ratio") {
  // the t -> infinity limit of the estimator is sum c_i; its magnitude
  // equals |Delta_{m-1,m+1} / Delta_{m,m}| (the padding-sign convention
  // is ambiguous, so only magnitudes are compared)
  RandomSource rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const TailSums s = random_tails(rng, 12);
    const ContinuedFraction cf =
        qd_continued_fraction(phi_coefficients(s, 12));
    for (std::size_t m = 1; m <= std::min<std::size_t>(cf.max_m(), 3); ++m) {
      const auto terms = partial_fractions(convergent(cf, 2 * m));
      std::complex<double> sum = 0.0;
      for (const auto &term : terms)
        sum += term.c;
      const double ratio = hankel_det(s, static_cast<long>(m) - 1, m + 1) /
                           hankel_det(s, static_cast<long>(m), m);
      CHECK(std::fabs(sum.real()) ==
            doctest::Approx(std::fabs(ratio)).epsilon(1e-6));
    }
  }
  // worked m=1 case: |Delta_{0,2}/Delta_{1,1}| = 36/3 = 12 = S_1^2/S_2
  const TailSums s = make_tails({6, 3});
  CHECK(hankel_det(s, 0, 2) / hankel_det(s, 1, 1) == doctest::Approx(-12.0));
}

TEST_CASE("pade_linear_solve validates input") {
  CHECK_THROWS_AS(pade_linear_solve(make_tails({6}), 1), input_error);
  // saturated tails make the system singular
  CHECK_THROWS_AS(pade_linear_solve(make_tails({5, 5, 5, 5}), 2),
                  numeric_error);
}
