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

#ifndef RSAC_BASELINES_HPP
#define RSAC_BASELINES_HPP

#include <cstddef>
#include <vector>

#include "rsac/histogram.hpp"

namespace rsac {

// The five comparison estimators, each generalized from an SAC estimator
// to the full r-SAC, plus the parametric closed forms used as truths.

/// Zero-truncated Poisson fit.
struct ZtpFit {
  double lambda;
  double s1;
};

ZtpFit fit_ztp(const FrequencyHistogram &hist);
double rsac_ztp(const ZtpFit &fit, unsigned r, double t);

/// Zero-truncated negative binomial, fit by EM with the unobserved zero
/// class as missing data.
struct ZtnbFit {
  double alpha;  // shape
  double beta;   // scale
  double s1;
  std::vector<double> loglik_trace;  // truncated log-likelihood per sweep
  bool converged = false;
};

struct ZtnbOptions {
  std::size_t max_iter = 10000;
  double loglik_tol = 1e-10;
  double alpha_min = 1e-8;
  double alpha_max = 1e8;
};

ZtnbFit fit_ztnb(const FrequencyHistogram &hist, const ZtnbOptions &opts = {});
double rsac_ztnb(const ZtnbFit &fit, unsigned r, double t);

/// Fisher logseries.
struct LogseriesFit {
  double alpha;
  double s1;
  double n;  // individuals in the initial sample
};

LogseriesFit fit_logseries(const FrequencyHistogram &hist);
double rsac_ls(const LogseriesFit &fit, unsigned r, double t);

/// Boneh-Boneh-Caron estimator; U is the root of
/// U (1 - exp(-N_1/U)) = sum_i N_i exp(-i), defined when N_1 exceeds the
/// right-hand side.
double bbc_unseen_mass(const FrequencyHistogram &hist);
double rsac_bbc(const FrequencyHistogram &hist, unsigned r, double t);

/// Chao-Shen estimator with the Chao1 unseen-species count
/// N_0 = N_1^2 / (2 N_2).
double rsac_cs(const FrequencyHistogram &hist, unsigned r, double t);

/// Parametric truths for simulation cross-checks.
double true_rsac_homogeneous(double L, double lambda, unsigned r, double t);
double true_rsac_nb(double L, double alpha, double beta, unsigned r, double t);

/// Survival function of NB(shape alpha, scale theta): P(X >= r).
double nb_survival(double alpha, double theta, unsigned r);

// Column evaluators: all r = 1..r_max at a fixed t in one sweep.  They
// agree with the pointwise functions and exist because grid evaluation
// over r would otherwise be quadratic in r_max.
std::vector<double> rsac_ztp_curve(const ZtpFit &fit, unsigned r_max,
                                   double t);
std::vector<double> rsac_ztnb_curve(const ZtnbFit &fit, unsigned r_max,
                                    double t);
std::vector<double> rsac_ls_curve(const LogseriesFit &fit, unsigned r_max,
                                  double t);
std::vector<double> rsac_bbc_curve(const FrequencyHistogram &hist,
                                   unsigned r_max, double t);
std::vector<double> rsac_cs_curve(const FrequencyHistogram &hist,
                                  unsigned r_max, double t);

}  // namespace rsac

#endif
