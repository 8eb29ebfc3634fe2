#include "graphmm/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "graphmm/errors.hpp"
#include "graphmm/numeric.hpp"

namespace graphmm {

namespace {

// Lower Cholesky factor of s^2 exp(-rho * manhattan distance) on the grid.
Matrix noise_cholesky(int rows, int cols, double var, double decay) {
  const int n = rows * cols;
  Matrix cov(n, n);
  for (int u = 0; u < n; ++u) {
    const int ur = u / cols, uc = u % cols;
    for (int v = 0; v <= u; ++v) {
      const int vr = v / cols, vc = v % cols;
      const int dist = std::abs(ur - vr) + std::abs(uc - vc);
      cov(u, v) = cov(v, u) = var * std::exp(-decay * dist);
    }
  }
  Eigen::LLT<Matrix> llt(cov);
  if (llt.info() != Eigen::Success)
    throw NumericError("generate_scenario: noise covariance not positive definite");
  return llt.matrixL();
}

Matrix correlated_replicates(const Vector& mean, const Matrix& chol, int m,
                             std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = static_cast<int>(mean.size());
  Matrix z(n, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = gauss(rng);
  Matrix out = chol * z;
  out.colwise() += mean;
  return out;
}

SyntheticDataset assemble_dataset(const ScenarioConfig& config, Partition partition,
                                  std::mt19937_64& rng) {
  const int n = config.rows * config.cols;
  const int k = partition.n_blocks();
  std::normal_distribution<double> gauss(0.0, 1.0);

  Vector phi(k);
  for (int b = 0; b < k; ++b) phi[b] = config.mu0 + std::sqrt(config.tau2) * gauss(rng);

  const int n_shifted = static_cast<int>(std::lround(config.frac_shifted * k));
  std::vector<int> block_ids(k);
  std::iota(block_ids.begin(), block_ids.end(), 0);
  std::shuffle(block_ids.begin(), block_ids.end(), rng);
  std::vector<std::uint8_t> delta(k, 0);
  Vector shifts = Vector::Zero(k);
  for (int i = 0; i < n_shifted; ++i) {
    const int b = block_ids[i];
    delta[b] = 1;
    double d = config.shift_mean + config.shift_sd * gauss(rng);
    if (config.symmetric_shifts && rng() & 1u) d = -d;
    shifts[b] = d;
  }

  Vector mu_x(n), mu_y(n);
  std::vector<std::uint8_t> truth_null(n, 1);
  for (int v = 0; v < n; ++v) {
    const int b = partition.labels[v];
    mu_x[v] = phi[b];
    mu_y[v] = phi[b] + shifts[b];
    truth_null[v] = delta[b] ? 0 : 1;
  }

  const Matrix chol = noise_cholesky(config.rows, config.cols, config.noise_var,
                                     config.noise_decay);
  Matrix x = correlated_replicates(mu_x, chol, config.mx, rng);
  Matrix y = correlated_replicates(mu_y, chol, config.my, rng);
  return SyntheticDataset{DataMatrices(std::move(x), std::move(y)), std::move(partition),
                          std::move(delta), std::move(truth_null), std::move(shifts)};
}

Partition draw_partition(const ScenarioConfig& config, std::mt19937_64& rng) {
  const int n = config.rows * config.cols;
  const double target = 0.5 * (config.block_size_min + config.block_size_max);
  if (!(target >= 1.0 && target <= n))
    throw std::invalid_argument("generate_scenario: infeasible block size target");
  const int k = std::clamp(static_cast<int>(std::lround(n / target)), 1, n);
  const Graph g = lattice_graph(config.rows, config.cols);
  return sample_graph_respecting(g, k, rng);
}

}  // namespace

SyntheticDataset generate_scenario(const ScenarioConfig& config, std::mt19937_64& rng) {
  if (config.frac_shifted < 0.0 || config.frac_shifted > 1.0)
    throw std::invalid_argument("generate_scenario: frac_shifted must be in [0,1]");
  return assemble_dataset(config, draw_partition(config, rng), rng);
}

SyntheticDataset generate_non_respecting_scenario(const ScenarioConfig& config,
                                                  double target_rand_index,
                                                  std::mt19937_64& rng) {
  if (!(target_rand_index > 0.0 && target_rand_index < 1.0))
    throw std::invalid_argument("generate_non_respecting_scenario: target must be in (0,1)");
  const Partition original = draw_partition(config, rng);
  const int n = original.size();
  if (original.n_blocks() < 2)
    throw std::invalid_argument("generate_non_respecting_scenario: need at least two blocks");

  std::vector<int> labels = original.labels;
  std::uniform_int_distribution<int> pick(0, n - 1);
  const long long max_swaps = 200LL * n;
  constexpr double tol = 0.05;
  bool reached = false;
  double achieved = 1.0;
  for (long long swap = 0; swap < max_swaps; ++swap) {
    int u = pick(rng), v = pick(rng);
    if (labels[u] == labels[v]) continue;
    std::swap(labels[u], labels[v]);
    achieved = rand_index(Partition::from_labels(labels), original);
    if (std::fabs(achieved - target_rand_index) <= tol) {
      reached = true;
      break;
    }
  }
  if (!reached)
    throw NumericError("generate_non_respecting_scenario: could not reach Rand index " +
                       std::to_string(target_rand_index) + ", best " + std::to_string(achieved));
  return assemble_dataset(config, Partition::from_labels(std::move(labels)), rng);
}

DataMatrices permute_sample_labels(const DataMatrices& data, std::mt19937_64& rng) {
  const int mx = data.mx();
  const int my = data.my();
  std::vector<int> order(mx + my);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  Matrix x(data.x.rows(), mx), y(data.y.rows(), my);
  auto column = [&](int pooled) {
    return pooled < mx ? data.x.col(pooled) : data.y.col(pooled - mx);
  };
  for (int j = 0; j < mx; ++j) x.col(j) = column(order[j]);
  for (int j = 0; j < my; ++j) y.col(j) = column(order[mx + j]);
  return DataMatrices(std::move(x), std::move(y));
}

DataMatrices permute_vertices(const DataMatrices& data, std::mt19937_64& rng) {
  const int n = data.n_vertices();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  Matrix x(n, data.mx()), y(n, data.my());
  for (int v = 0; v < n; ++v) {
    x.row(v) = data.x.row(order[v]);
    y.row(v) = data.y.row(order[v]);
  }
  return DataMatrices(std::move(x), std::move(y));
}

std::vector<OperatingPoint> evaluate(const std::vector<std::uint8_t>& truth_null,
                                     const Vector& scores,
                                     const std::vector<double>& thresholds) {
  const int n = static_cast<int>(scores.size());
  if (static_cast<int>(truth_null.size()) != n)
    throw std::invalid_argument("evaluate: truth and score lengths differ");
  int n_nonnull = 0;
  for (auto b : truth_null) n_nonnull += b ? 0 : 1;
  std::vector<OperatingPoint> out;
  out.reserve(thresholds.size());
  for (double c : thresholds) {
    int listed = 0, false_disc = 0, true_disc = 0;
    double score_sum = 0.0;
    for (int v = 0; v < n; ++v) {
      if (scores[v] <= c) {
        ++listed;
        score_sum += scores[v];
        if (truth_null[v])
          ++false_disc;
        else
          ++true_disc;
      }
    }
    OperatingPoint pt;
    pt.threshold = c;
    pt.n_listed = listed;
    pt.empirical_fdr = listed ? static_cast<double>(false_disc) / listed : 0.0;
    pt.tpr = n_nonnull ? static_cast<double>(true_disc) / n_nonnull : 0.0;
    pt.mean_score = listed ? score_sum / listed : std::numeric_limits<double>::quiet_NaN();
    out.push_back(pt);
  }
  return out;
}

double tpr_at_fdr(const std::vector<std::uint8_t>& truth_null, const Vector& scores,
                  double fdr_level) {
  const int n = static_cast<int>(scores.size());
  if (static_cast<int>(truth_null.size()) != n)
    throw std::invalid_argument("tpr_at_fdr: truth and score lengths differ");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] < scores[b]; });
  int n_nonnull = 0;
  for (auto b : truth_null) n_nonnull += b ? 0 : 1;
  if (n_nonnull == 0) return 0.0;
  int false_disc = 0, true_disc = 0, best_true = 0;
  for (int i = 0; i < n; ++i) {
    // ties in score enter the list together
    int j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) {
      if (truth_null[order[j]])
        ++false_disc;
      else
        ++true_disc;
      ++j;
    }
    i = j - 1;
    const double fdr = static_cast<double>(false_disc) / (false_disc + true_disc);
    if (fdr <= fdr_level) best_true = std::max(best_true, true_disc);
  }
  return static_cast<double>(best_true) / n_nonnull;
}

std::vector<int> discovery_clusters(const Graph& g, const std::vector<int>& listed) {
  std::vector<char> in_list(g.n_vertices(), 0);
  for (int v : listed) {
    if (v < 0 || v >= g.n_vertices())
      throw std::invalid_argument("discovery_clusters: vertex id out of range");
    in_list[v] = 1;
  }
  std::vector<char> seen(g.n_vertices(), 0);
  std::vector<int> sizes;
  std::vector<int> stack;
  for (int v : listed) {
    if (seen[v]) continue;
    seen[v] = 1;
    stack.assign(1, v);
    int size = 0;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      ++size;
      for (int w : g.neighbors(u)) {
        if (in_list[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    sizes.push_back(size);
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

std::mt19937_64 replicate_rng(std::uint64_t master_seed, int replicate) {
  return std::mt19937_64(split_seed(master_seed, static_cast<std::uint64_t>(replicate)));
}

}  // namespace graphmm
