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

#include "rsac/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>

#include "rsac/errors.hpp"
#include "rsac/kernels/poisson_tail.hpp"

namespace rsac {

namespace {

// bisection on a bracket with a known sign change; tolerance is on the
// residual, relative to `scale`
double bisect(const std::function<double(double)> &f, double lo, double hi,
              double f_lo, double scale, double rel_residual) {
  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::fabs(fm) <= rel_residual * scale)
      return mid;
    if ((fm > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
    }
  }
  return mid;
}

}  // namespace

ZtpFit fit_ztp(const FrequencyHistogram &hist) {
  const double s1 = static_cast<double>(hist.total_species());
  const double n = static_cast<double>(hist.total_individuals());
  if (s1 <= 0.0)
    throw input_error("fit_ztp: empty histogram");
  const double mean = n / s1;
  if (!(mean > 1.0))
    throw construction_error("fit_ztp: mean count per species must exceed 1");
  const auto f = [&](double lam) {
    return lam / (-std::expm1(-lam)) - mean;
  };
  double lo = 1e-12, hi = 2.0 * mean + 10.0;
  const double f_lo = f(lo);
  const double lambda = bisect(f, lo, hi, f_lo, mean, 1e-13);
  return {lambda, s1};
}

double rsac_ztp(const ZtpFit &fit, unsigned r, double t) {
  if (r < 1 || !(t > 0.0))
    throw input_error("rsac_ztp: r >= 1 and t > 0 required");
  const double scale = fit.s1 / (-std::expm1(-fit.lambda));
  return scale * kernels::poisson_survival(fit.lambda * t, r);
}

// ---------------------------------------------------------------------
// zero-truncated negative binomial

namespace {

struct ZtnbData {
  std::vector<double> tails;  // tails[k] = number of species with count > k
  double species;             // S_1
  double individuals;         // N
  double lgamma_const;        // sum_j N_j lgamma(j+1)
};

ZtnbData ztnb_data(const FrequencyHistogram &hist) {
  ZtnbData d;
  const std::uint64_t jmax = hist.max_multiplicity();
  d.tails.assign(jmax, 0.0);
  std::uint64_t running = 0;
  auto it = hist.entries().rbegin();
  for (std::uint64_t k = jmax; k >= 1; --k) {
    while (it != hist.entries().rend() && it->first >= k) {
      running += it->second;
      ++it;
    }
    d.tails[k - 1] = static_cast<double>(running);
  }
  d.species = static_cast<double>(hist.total_species());
  d.individuals = static_cast<double>(hist.total_individuals());
  d.lgamma_const = 0.0;
  for (const auto &[j, nj] : hist.entries())
    d.lgamma_const +=
        static_cast<double>(nj) * std::lgamma(static_cast<double>(j) + 1.0);
  return d;
}

// complete-data score in alpha with beta profiled out (beta = mu/alpha):
// sum_k tails[k]/(alpha+k) + n_total (ln alpha - ln(alpha+mu))
double alpha_score(const ZtnbData &d, double n_total, double mu,
                   double alpha) {
  double acc = 0.0;
  for (std::size_t k = 0; k < d.tails.size(); ++k)
    acc += d.tails[k] / (alpha + static_cast<double>(k));
  return acc + n_total * (std::log(alpha) - std::log(alpha + mu));
}

double alpha_score_deriv(const ZtnbData &d, double n_total, double mu,
                         double alpha) {
  double acc = 0.0;
  for (std::size_t k = 0; k < d.tails.size(); ++k) {
    const double den = alpha + static_cast<double>(k);
    acc -= d.tails[k] / (den * den);
  }
  return acc + n_total * (1.0 / alpha - 1.0 / (alpha + mu));
}

// M-step: largest-likelihood root of the score, found by expanding a
// bracket around the previous alpha and polishing with safeguarded Newton
double solve_alpha(const ZtnbData &d, double n_total, double mu,
                   double alpha_prev, const ZtnbOptions &opts) {
  double lo = alpha_prev, hi = alpha_prev;
  double f_lo = alpha_score(d, n_total, mu, alpha_prev);
  double f_hi = f_lo;
  // score is positive left of the maximizing root
  int guard = 0;
  while (f_lo < 0.0 && lo > opts.alpha_min && ++guard < 200) {
    hi = lo;
    f_hi = f_lo;
    lo = std::max(lo * 0.25, opts.alpha_min);
    f_lo = alpha_score(d, n_total, mu, lo);
  }
  guard = 0;
  while (f_hi > 0.0 && hi < opts.alpha_max && ++guard < 200) {
    lo = hi;
    f_lo = f_hi;
    hi = std::min(hi * 4.0, opts.alpha_max);
    f_hi = alpha_score(d, n_total, mu, hi);
  }
  if (f_lo < 0.0)
    return opts.alpha_min;
  if (f_hi > 0.0)
    return opts.alpha_max;  // no interior root: Poisson-like data

  double alpha = std::clamp(alpha_prev, lo, hi);
  for (int iter = 0; iter < 100; ++iter) {
    const double f = alpha_score(d, n_total, mu, alpha);
    if ((f > 0.0))
      lo = alpha;
    else
      hi = alpha;
    const double df = alpha_score_deriv(d, n_total, mu, alpha);
    double next = alpha - f / df;
    if (!(next > lo) || !(next < hi))
      next = 0.5 * (lo + hi);  // bisection safeguard
    if (std::fabs(next - alpha) <= 1e-12 * alpha)
      return next;
    alpha = next;
  }
  return alpha;
}

// zero-truncated log-likelihood, using
// sum_j N_j [lgamma(j+alpha) - lgamma(alpha)] = sum_k tails[k] ln(alpha+k)
double ztnb_loglik(const ZtnbData &d, double alpha, double beta) {
  double acc = -d.lgamma_const;
  for (std::size_t k = 0; k < d.tails.size(); ++k)
    acc += d.tails[k] * std::log(alpha + static_cast<double>(k));
  const double log1pb = std::log1p(beta);
  acc += d.individuals * (std::log(beta) - log1pb);
  acc -= d.species * alpha * log1pb;
  const double log_p0 = -alpha * log1pb;
  acc -= d.species * std::log(-std::expm1(log_p0));
  return acc;
}

}  // namespace

ZtnbFit fit_ztnb(const FrequencyHistogram &hist, const ZtnbOptions &opts) {
  if (hist.entries().size() < 2)
    throw construction_error(
        "fit_ztnb: need at least two distinct multiplicities");
  const ZtnbData d = ztnb_data(hist);
  const double mean = d.individuals / d.species;

  ZtnbFit fit;
  fit.s1 = d.species;
  fit.alpha = 1.0;
  fit.beta = std::max(mean - 1.0, 0.1);
  fit.loglik_trace.reserve(64);
  fit.loglik_trace.push_back(ztnb_loglik(d, fit.alpha, fit.beta));

  for (std::size_t iter = 0; iter < opts.max_iter; ++iter) {
    // E-step: expected unobserved zero class
    const double log_p0 = -fit.alpha * std::log1p(fit.beta);
    const double n0 = d.species * std::exp(log_p0) / (-std::expm1(log_p0));
    // M-step: complete-data maximum likelihood
    const double n_total = d.species + n0;
    const double mu = d.individuals / n_total;
    fit.alpha = solve_alpha(d, n_total, mu, fit.alpha, opts);
    fit.beta = mu / fit.alpha;

    const double ll = ztnb_loglik(d, fit.alpha, fit.beta);
    const double gain = ll - fit.loglik_trace.back();
    fit.loglik_trace.push_back(ll);
    if (std::fabs(gain) < opts.loglik_tol) {
      fit.converged = true;
      break;
    }
  }
  return fit;
}

double nb_survival(double alpha, double theta, unsigned r) {
  if (r == 0)
    return 1.0;
  if (!(theta > 0.0))
    return 0.0;
  const double q = theta / (1.0 + theta);
  double w = std::exp(-alpha * std::log1p(theta));  // P(X = 0)
  double cdf = 0.0;
  for (unsigned i = 0; i < r; ++i) {
    cdf += w;
    w *= (alpha + static_cast<double>(i)) / (static_cast<double>(i) + 1.0) * q;
  }
  return cdf < 1.0 ? 1.0 - cdf : 0.0;
}

double rsac_ztnb(const ZtnbFit &fit, unsigned r, double t) {
  if (r < 1 || !(t > 0.0))
    throw input_error("rsac_ztnb: r >= 1 and t > 0 required");
  const double p0 = std::exp(-fit.alpha * std::log1p(fit.beta));
  const double scale = fit.s1 / (1.0 - p0);
  return scale * nb_survival(fit.alpha, fit.beta * t, r);
}

// ---------------------------------------------------------------------
// logseries

LogseriesFit fit_logseries(const FrequencyHistogram &hist) {
  const double s1 = static_cast<double>(hist.total_species());
  const double n = static_cast<double>(hist.total_individuals());
  if (!(s1 > 0.0))
    throw input_error("fit_logseries: empty histogram");
  if (!(s1 < n))
    throw construction_error("fit_logseries: requires S_1 < N");
  const auto f = [&](double a) { return a * std::log1p(n / a) - s1; };
  double lo = 1e-6 * s1, hi = 1e6 * s1;
  int guard = 0;
  while (f(lo) > 0.0 && ++guard < 60)
    lo *= 0.25;
  guard = 0;
  while (f(hi) < 0.0 && ++guard < 60)
    hi *= 4.0;
  const double alpha = bisect(f, lo, hi, f(lo), s1, 1e-10);
  return {alpha, s1, n};
}

double rsac_ls(const LogseriesFit &fit, unsigned r, double t) {
  if (r < 1 || !(t > 0.0))
    throw input_error("rsac_ls: r >= 1 and t > 0 required");
  const double x = fit.n * t / (fit.alpha + fit.n * t);
  if (x <= 0.999) {
    // direct series, truncated when a term stops mattering
    double acc = 0.0;
    double xp = std::pow(x, static_cast<double>(r));
    for (unsigned i = r; i < 100000000u; ++i) {
      const double term = fit.alpha * xp / static_cast<double>(i);
      acc += term;
      if (term < 1e-12 * acc)
        break;
      xp *= x;
    }
    return acc;
  }
  // x near 1: same tail through the closed form of the full sum
  double acc = -fit.alpha * std::log1p(-x);
  double xp = 1.0;
  for (unsigned i = 1; i < r; ++i) {
    xp *= x;
    acc -= fit.alpha * xp / static_cast<double>(i);
  }
  return acc;
}

// ---------------------------------------------------------------------
// Boneh-Boneh-Caron

namespace {

double bbc_observed_mass(const FrequencyHistogram &hist) {
  double acc = 0.0;
  for (const auto &[j, nj] : hist.entries()) {
    if (j > 700)
      break;
    acc += static_cast<double>(nj) * std::exp(-static_cast<double>(j));
  }
  return acc;
}

}  // namespace

double bbc_unseen_mass(const FrequencyHistogram &hist) {
  const double n1 = static_cast<double>(hist.count_at(1));
  const double a = bbc_observed_mass(hist);
  if (!(n1 > a))
    throw construction_error(
        "rsac_bbc: requires N_1 > sum of N_i exp(-i); U is undefined");
  const auto f = [&](double u) {
    return u * (-std::expm1(-n1 / u)) - a;
  };
  const double s1 = static_cast<double>(hist.total_species());
  double lo = 1e-6 * s1, hi = 1e6 * s1;
  int guard = 0;
  while (f(lo) > 0.0 && ++guard < 60)
    lo *= 0.25;
  guard = 0;
  while (f(hi) < 0.0 && ++guard < 60)
    hi *= 4.0;
  return bisect(f, lo, hi, f(lo), std::max(a, 1.0), 1e-10);
}

double rsac_bbc(const FrequencyHistogram &hist, unsigned r, double t) {
  if (r < 1)
    throw input_error("rsac_bbc: r must be >= 1");
  if (!(t >= 1.0))
    throw input_error("rsac_bbc: defined for t >= 1");
  const double n1 = static_cast<double>(hist.count_at(1));
  const double u = bbc_unseen_mass(hist);
  double acc = static_cast<double>(hist.total_species());
  for (const auto &[j, nj] : hist.entries()) {
    const double ed = j > 700 ? 0.0 : std::exp(-static_cast<double>(j));
    const double cdf =
        1.0 - kernels::poisson_survival(static_cast<double>(j) * t, r);
    acc += static_cast<double>(nj) * (ed - cdf);
  }
  const double cdf_u = 1.0 - kernels::poisson_survival(n1 * t / u, r);
  acc += u * (std::exp(-n1 / u) - cdf_u);
  return acc;
}

// ---------------------------------------------------------------------
// Chao-Shen

double rsac_cs(const FrequencyHistogram &hist, unsigned r, double t) {
  if (r < 1)
    throw input_error("rsac_cs: r must be >= 1");
  if (!(t >= 1.0))
    throw input_error("rsac_cs: defined for t >= 1");
  const double n1 = static_cast<double>(hist.count_at(1));
  const double n2 = static_cast<double>(hist.count_at(2));
  if (!(n2 > 0.0))
    throw construction_error("rsac_cs: requires N_2 > 0");
  const double s1 = static_cast<double>(hist.total_species());
  const double n0 = n1 * n1 / (2.0 * n2);
  if (n0 == 0.0)
    return s1;
  // sum_{i<r} (N_1 t / N_0)^i / i! * exp(-N_1 (t-1) / N_0); the exponent
  // is shifted relative to a Poisson cdf, so build terms in log space
  const double ratio = n1 * t / n0;
  const double shift = n1 * (t - 1.0) / n0;
  const double log_ratio = std::log(ratio);
  double cdf_like = 0.0;
  for (unsigned i = 0; i < r; ++i)
    cdf_like += std::exp(static_cast<double>(i) * log_ratio -
                         std::lgamma(static_cast<double>(i) + 1.0) - shift);
  return s1 + n0 * (1.0 - cdf_like);
}

// ---------------------------------------------------------------------
// parametric truths

double true_rsac_homogeneous(double L, double lambda, unsigned r, double t) {
  if (!(L > 0.0) || !(lambda > 0.0))
    throw input_error("true_rsac_homogeneous: parameters must be positive");
  return L * kernels::poisson_survival(lambda * t, r);
}

double true_rsac_nb(double L, double alpha, double beta, unsigned r,
                    double t) {
  if (!(L > 0.0) || !(alpha > 0.0) || !(beta > 0.0))
    throw input_error("true_rsac_nb: parameters must be positive");
  return L * nb_survival(alpha, beta * t, r);
}

// ---------------------------------------------------------------------
// column evaluators

std::vector<double> rsac_ztp_curve(const ZtpFit &fit, unsigned r_max,
                                   double t) {
  const double scale = fit.s1 / (-std::expm1(-fit.lambda));
  const double mu = fit.lambda * t;
  std::vector<double> out(r_max, 0.0);
  kernels::poisson_tail_accumulate(std::span<const double>(&mu, 1), out);
  for (double &v : out)
    v *= scale;
  return out;
}

std::vector<double> rsac_ztnb_curve(const ZtnbFit &fit, unsigned r_max,
                                    double t) {
  const double p0 = std::exp(-fit.alpha * std::log1p(fit.beta));
  const double scale = fit.s1 / (1.0 - p0);
  const double theta = fit.beta * t;
  const double q = theta / (1.0 + theta);
  double w = std::exp(-fit.alpha * std::log1p(theta));
  double cdf = 0.0;
  std::vector<double> out(r_max);
  for (unsigned r = 1; r <= r_max; ++r) {
    cdf += w;
    out[r - 1] = scale * (cdf < 1.0 ? 1.0 - cdf : 0.0);
    w *= (fit.alpha + static_cast<double>(r - 1)) / static_cast<double>(r) * q;
  }
  return out;
}

std::vector<double> rsac_ls_curve(const LogseriesFit &fit, unsigned r_max,
                                  double t) {
  const double x = fit.n * t / (fit.alpha + fit.n * t);
  std::vector<double> out(r_max);
  double tail = -fit.alpha * std::log1p(-x);  // r = 1 closed form
  double xp = 1.0;
  for (unsigned r = 1; r <= r_max; ++r) {
    out[r - 1] = std::max(tail, 0.0);
    xp *= x;
    tail -= fit.alpha * xp / static_cast<double>(r);
  }
  return out;
}

std::vector<double> rsac_bbc_curve(const FrequencyHistogram &hist,
                                   unsigned r_max, double t) {
  if (!(t >= 1.0))
    throw input_error("rsac_bbc: defined for t >= 1");
  const double n1 = static_cast<double>(hist.count_at(1));
  const double u = bbc_unseen_mass(hist);
  const double s1 = static_cast<double>(hist.total_species());

  std::vector<double> out(r_max, 0.0);
  std::vector<double> surv(r_max);
  double base = s1;  // r-independent part accumulates separately
  for (const auto &[j, nj] : hist.entries()) {
    const double ed = j > 700 ? 0.0 : std::exp(-static_cast<double>(j));
    base += static_cast<double>(nj) * ed;
    std::fill(surv.begin(), surv.end(), 0.0);
    const double mu = static_cast<double>(j) * t;
    kernels::poisson_tail_accumulate(std::span<const double>(&mu, 1), surv);
    for (unsigned k = 0; k < r_max; ++k)
      out[k] += static_cast<double>(nj) * (surv[k] - 1.0);
  }
  base += u * std::exp(-n1 / u);
  std::fill(surv.begin(), surv.end(), 0.0);
  const double mu_u = n1 * t / u;
  kernels::poisson_tail_accumulate(std::span<const double>(&mu_u, 1), surv);
  for (unsigned k = 0; k < r_max; ++k)
    out[k] += base + u * (surv[k] - 1.0);
  return out;
}

std::vector<double> rsac_cs_curve(const FrequencyHistogram &hist,
                                  unsigned r_max, double t) {
  if (!(t >= 1.0))
    throw input_error("rsac_cs: defined for t >= 1");
  const double n1 = static_cast<double>(hist.count_at(1));
  const double n2 = static_cast<double>(hist.count_at(2));
  if (!(n2 > 0.0))
    throw construction_error("rsac_cs: requires N_2 > 0");
  const double s1 = static_cast<double>(hist.total_species());
  const double n0 = n1 * n1 / (2.0 * n2);
  std::vector<double> out(r_max, s1);
  if (n0 == 0.0)
    return out;
  const double ratio = n1 * t / n0;
  double term = std::exp(-n1 * (t - 1.0) / n0);
  double cdf_like = 0.0;
  for (unsigned r = 1; r <= r_max; ++r) {
    cdf_like += term;
    out[r - 1] = s1 + n0 * (1.0 - cdf_like);
    term *= ratio / static_cast<double>(r);
  }
  return out;
}

}  // namespace rsac
