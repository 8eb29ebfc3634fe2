#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "graphmm/graph.hpp"
#include "graphmm/model.hpp"
#include "graphmm/partition.hpp"
#include "graphmm/types.hpp"

namespace graphmm {

struct ScenarioConfig {
  int rows = 32;
  int cols = 32;
  double block_size_min = 2.0;   // target voxels per block
  double block_size_max = 5.0;
  double frac_shifted = 0.2;     // fraction of blocks with a group shift
  double shift_mean = 1.0;
  double shift_sd = 0.2;
  bool symmetric_shifts = true;  // random sign per shifted block
  double mu0 = 0.0;              // block mean distribution
  double tau2 = 1.0;
  double noise_var = 1.0;        // marginal noise variance
  double noise_decay = 1.0;      // correlation exp(-decay * lattice distance)
  int mx = 30;
  int my = 30;
  std::uint64_t seed = 1;
};

struct SyntheticDataset {
  DataMatrices data;
  Partition truth_partition;
  std::vector<std::uint8_t> truth_delta;  // per block
  std::vector<std::uint8_t> truth_null;   // per vertex
  Vector shifts;                          // per block, 0 where unchanged
};

// Draws a graph-respecting partition targeting the configured mean block
// size, samples block means and per-block shifts, and adds replicate noise
// with covariance s^2 exp(-rho * d(u,v)) on the lattice distance.
SyntheticDataset generate_scenario(const ScenarioConfig& config, std::mt19937_64& rng);

// Starts from a graph-respecting partition and swaps labels of vertex
// pairs until the Rand index against the original is within 0.05 of the
// target; the resulting ground-truth partition generally violates the
// graph-respecting property.
SyntheticDataset generate_non_respecting_scenario(const ScenarioConfig& config,
                                                  double target_rand_index,
                                                  std::mt19937_64& rng);

// Pools all replicate columns and deals them back into two groups of the
// original sizes, uniformly at random.
DataMatrices permute_sample_labels(const DataMatrices& data, std::mt19937_64& rng);

// One random row permutation applied identically to both groups.
DataMatrices permute_vertices(const DataMatrices& data, std::mt19937_64& rng);

struct OperatingPoint {
  double threshold;
  int n_listed;
  double empirical_fdr;  // fraction of listed vertices that are truly null
  double tpr;            // fraction of non-null vertices listed
  double mean_score;     // data-computable FDR surrogate on the list
};

// Operating characteristics of the rule {score <= c} at each threshold.
std::vector<OperatingPoint> evaluate(const std::vector<std::uint8_t>& truth_null,
                                     const Vector& scores, const std::vector<double>& thresholds);

// Best achievable true-positive rate over list prefixes whose empirical
// FDR stays at or below the given level (scores ranked ascending).
double tpr_at_fdr(const std::vector<std::uint8_t>& truth_null, const Vector& scores,
                  double fdr_level);

// Connected-component sizes of the subgraph induced by the listed
// vertices, sorted descending.
std::vector<int> discovery_clusters(const Graph& g, const std::vector<int>& listed);

// Deterministic per-replicate generator derived from a master seed.
std::mt19937_64 replicate_rng(std::uint64_t master_seed, int replicate);

}  // namespace graphmm
