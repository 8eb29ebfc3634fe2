#pragma once

#include <cstdint>
#include <span>

namespace graphmm {

// log(sum_i exp(v[i])), guarded against overflow; -inf entries contribute
// zero mass and an all -inf (or empty) input returns -inf.
double log_sum_exp(std::span<const double> values);

double normal_log_pdf(double x, double mean, double var);

double normal_cdf(double z);

// Inverse standard normal CDF. p in (0,1).
double normal_quantile(double p);

// Regularized incomplete beta I_x(a,b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

double student_t_cdf(double t, double df);

// Two-sided tail probability P(|T| >= |t|) for T ~ t_df.
double student_t_two_sided_p(double t, double df);

// Density of N(0, sigma2*I_m + J_m) at x (J = all-ones), in log space.
// Covers the equicorrelated Gaussians of the two-pair mixing model:
// m=1 gives the marginal density, m=2 the shared-mean pair, m=4 the
// fully blocked null state.
double equicorrelated_normal_log_pdf(std::span<const double> x, double sigma2);

// SplitMix64 step; used to derive independent per-replicate seeds.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace graphmm
