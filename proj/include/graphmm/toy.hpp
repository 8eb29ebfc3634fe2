#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace graphmm {

// Two-pair toy system: a tested pair (X1, Y1) plus a companion pair
// (X2, Y2) that shares means with the first pair when the latent blocking
// event occurs. Expected values fluctuate as standard normals and
// observations add N(0, sigma2) noise.
struct ToyConfig {
  int n_pairs = 10000;
  double p0 = 0.8;       // marginal null frequency
  double sigma2 = 0.5;   // observation noise variance
  double p_block = 0.5;  // blocking rate
  std::uint64_t seed = 1;
};

// P(H0 | x1, y1): mixes the shared-mean pair density against independent
// margins.
double toy_lfdr1(double x1, double y1, const ToyConfig& config);

// P(H0 | x1, x2, y1, y2): joint discrete mixing over the four
// (null, blocked) states.
double toy_lfdr2(double x1, double x2, double y1, double y2, const ToyConfig& config);

struct ToyObservation {
  double x1, x2, y1, y2;
  bool is_null;
  bool blocked;
  double lfdr1;
  double lfdr2;
};

std::vector<ToyObservation> simulate_toy(const ToyConfig& config, std::mt19937_64& rng);

// Empirical false-discovery rate (and mean score) of the ascending-ranked
// lists at every list size; entry m-1 covers the top-m list.
struct ToyCurve {
  std::vector<double> fdr1, fdr2;
  std::vector<double> mean_score1, mean_score2;
  int n_null = 0;
};

ToyCurve toy_fdr_curve(const ToyConfig& config, std::mt19937_64& rng);

}  // namespace graphmm
