#include "graphmm/toy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "graphmm/numeric.hpp"

namespace graphmm {

namespace {

void check_config(const ToyConfig& config) {
  if (!(config.p0 >= 0.0 && config.p0 <= 1.0))
    throw std::invalid_argument("toy: p0 must be in [0,1]");
  if (!(config.p_block >= 0.0 && config.p_block <= 1.0))
    throw std::invalid_argument("toy: p_block must be in [0,1]");
  if (!(config.sigma2 > 0.0)) throw std::invalid_argument("toy: sigma2 must be positive");
}

double log_g(double x, double sigma2) {
  return equicorrelated_normal_log_pdf(std::array<double, 1>{x}, sigma2);
}

double log_f(double a, double b, double sigma2) {
  return equicorrelated_normal_log_pdf(std::array<double, 2>{a, b}, sigma2);
}

}  // namespace

double toy_lfdr1(double x1, double y1, const ToyConfig& config) {
  check_config(config);
  if (config.p0 == 1.0) return 1.0;
  if (config.p0 == 0.0) return 0.0;
  const double s2 = config.sigma2;
  const double log_null = std::log(config.p0) + log_f(x1, y1, s2);
  const double log_alt = std::log1p(-config.p0) + log_g(x1, s2) + log_g(y1, s2);
  const std::array<double, 2> terms{log_null, log_alt};
  return std::exp(log_null - log_sum_exp(terms));
}

double toy_lfdr2(double x1, double x2, double y1, double y2, const ToyConfig& config) {
  check_config(config);
  if (config.p0 == 1.0) return 1.0;
  if (config.p0 == 0.0) return 0.0;
  const double s2 = config.sigma2;
  const double lp0 = std::log(config.p0);
  const double lp1 = std::log1p(-config.p0);
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  const double lb1 = config.p_block > 0.0 ? std::log(config.p_block) : neg_inf;
  const double lb0 = config.p_block < 1.0 ? std::log1p(-config.p_block) : neg_inf;

  // (null, blocked): one shared mean across all four observations
  const double s_nb =
      lp0 + lb1 + equicorrelated_normal_log_pdf(std::array<double, 4>{x1, x2, y1, y2}, s2);
  // (null, unblocked): tested pair shares a mean, companions independent
  const double s_nu = lp0 + lb0 + log_f(x1, y1, s2) + log_g(x2, s2) + log_g(y2, s2);
  // (non-null, blocked): each condition pair shares its own mean
  const double s_ab = lp1 + lb1 + log_f(x1, x2, s2) + log_f(y1, y2, s2);
  // (non-null, unblocked): four independent margins
  const double s_au = lp1 + lb0 + log_g(x1, s2) + log_g(x2, s2) + log_g(y1, s2) + log_g(y2, s2);

  const std::array<double, 4> all{s_nb, s_nu, s_ab, s_au};
  const std::array<double, 2> null_states{s_nb, s_nu};
  return std::exp(log_sum_exp(null_states) - log_sum_exp(all));
}

std::vector<ToyObservation> simulate_toy(const ToyConfig& config, std::mt19937_64& rng) {
  check_config(config);
  if (config.n_pairs < 1) throw std::invalid_argument("toy: n_pairs must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double sigma = std::sqrt(config.sigma2);
  std::vector<ToyObservation> out;
  out.reserve(config.n_pairs);
  for (int i = 0; i < config.n_pairs; ++i) {
    ToyObservation ob;
    ob.is_null = unif(rng) < config.p0;
    ob.blocked = unif(rng) < config.p_block;
    const double theta_x1 = gauss(rng);
    const double theta_y1 = ob.is_null ? theta_x1 : gauss(rng);
    const double theta_x2 = ob.blocked ? theta_x1 : gauss(rng);
    const double theta_y2 = ob.blocked ? theta_y1 : gauss(rng);
    ob.x1 = theta_x1 + sigma * gauss(rng);
    ob.x2 = theta_x2 + sigma * gauss(rng);
    ob.y1 = theta_y1 + sigma * gauss(rng);
    ob.y2 = theta_y2 + sigma * gauss(rng);
    ob.lfdr1 = toy_lfdr1(ob.x1, ob.y1, config);
    ob.lfdr2 = toy_lfdr2(ob.x1, ob.x2, ob.y1, ob.y2, config);
    out.push_back(ob);
  }
  return out;
}

namespace {

void ranked_curve(const std::vector<ToyObservation>& obs, bool use_lfdr2,
                  std::vector<double>& fdr, std::vector<double>& mean_score) {
  const int n = static_cast<int>(obs.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double sa = use_lfdr2 ? obs[a].lfdr2 : obs[a].lfdr1;
    const double sb = use_lfdr2 ? obs[b].lfdr2 : obs[b].lfdr1;
    return sa < sb;
  });
  fdr.resize(n);
  mean_score.resize(n);
  int nulls = 0;
  double score_sum = 0.0;
  for (int m = 0; m < n; ++m) {
    const auto& ob = obs[order[m]];
    nulls += ob.is_null ? 1 : 0;
    score_sum += use_lfdr2 ? ob.lfdr2 : ob.lfdr1;
    fdr[m] = static_cast<double>(nulls) / (m + 1);
    mean_score[m] = score_sum / (m + 1);
  }
}

}  // namespace

ToyCurve toy_fdr_curve(const ToyConfig& config, std::mt19937_64& rng) {
  if (config.n_pairs < 1000)
    throw std::invalid_argument("toy_fdr_curve: need at least 1000 pairs");
  const auto obs = simulate_toy(config, rng);
  ToyCurve curve;
  ranked_curve(obs, false, curve.fdr1, curve.mean_score1);
  ranked_curve(obs, true, curve.fdr2, curve.mean_score2);
  for (const auto& ob : obs) curve.n_null += ob.is_null ? 1 : 0;
  return curve;
}

}  // namespace graphmm
