#include "graphmm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "graphmm/errors.hpp"
#include "graphmm/numeric.hpp"
#include "graphmm/parallel.hpp"

namespace graphmm {

namespace {

std::string describe_state(const DiscreteState& state) {
  std::ostringstream os;
  os << "partition=" << to_string(state.partition) << " delta=";
  for (auto d : state.delta) os << int(d);
  return os.str();
}

}  // namespace

double PatchPosterior::lfdr_of(int local_vertex) const {
  double acc = 0.0;
  for (const auto& sp : states) {
    const int block = sp.state.partition.labels[local_vertex];
    if (!sp.state.delta[block]) acc += sp.probability;
  }
  return acc;
}

PatchPosterior posterior_over_states(const DataMatrices& patch_data, const Graph& patch_graph,
                                     const Hyperparams& hp, const LaplaceOptions& options,
                                     int enumeration_cap) {
  if (patch_data.n_vertices() != patch_graph.n_vertices())
    throw std::invalid_argument("posterior_over_states: data rows != patch vertices");
  const auto partitions = enumerate_graph_respecting(patch_graph, enumeration_cap);
  return posterior_over_states(patch_data, partitions, hp, options);
}

PatchPosterior posterior_over_states(const DataMatrices& patch_data,
                                     const std::vector<Partition>& partitions,
                                     const Hyperparams& hp, const LaplaceOptions& options) {
  const int n_partitions = static_cast<int>(partitions.size());
  if (n_partitions == 0) throw std::invalid_argument("posterior_over_states: no partitions");
  const PredictiveModel model(patch_data, hp);
  PatchPosterior out;
  std::vector<double> log_weights;
  for (const auto& partition : partitions) {
    const int k = partition.n_blocks();
    std::vector<std::uint8_t> delta(k, 0);
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      for (int b = 0; b < k; ++b) delta[b] = (mask >> b) & 1u;
      DiscreteState state{partition, delta};
      const double prior = log_prior_mass(state, hp, n_partitions);
      double lw;
      if (prior == -std::numeric_limits<double>::infinity()) {
        lw = prior;  // impossible under the prior; skip the marginal
      } else {
        try {
          lw = prior + laplace_log_marginal(model, state, hp, options);
        } catch (const NumericError& err) {
          throw NumericError(std::string(err.what()) + " [" + describe_state(state) + "]");
        }
      }
      log_weights.push_back(lw);
      out.states.push_back(StatePosterior{std::move(state), lw, 0.0});
    }
  }
  out.log_normalizer = log_sum_exp(log_weights);
  if (!std::isfinite(out.log_normalizer))
    throw NumericError("posterior_over_states: zero total posterior mass");
  for (auto& sp : out.states)
    sp.probability =
        sp.log_weight == -std::numeric_limits<double>::infinity()
            ? 0.0
            : std::exp(sp.log_weight - out.log_normalizer);
  return out;
}

int LfdrResult::n_failed() const {
  int c = 0;
  for (const auto& f : failures) c += !f.empty();
  return c;
}

namespace {

LfdrResult make_empty_result(int n) {
  LfdrResult result;
  result.lfdr = Vector::Constant(n, std::numeric_limits<double>::quiet_NaN());
  result.patch_id.assign(n, -1);
  result.states_summed.assign(n, 0);
  result.log_normalizer.assign(n, std::numeric_limits<double>::quiet_NaN());
  result.failures.assign(n, "");
  return result;
}

}  // namespace

LfdrResult lfdr_all(const DataMatrices& data, int rows, int cols, const Hyperparams& hp,
                    const EngineOptions& options) {
  const int n = rows * cols;
  if (data.n_vertices() != n)
    throw std::invalid_argument("lfdr_all: data rows != lattice size");
  const int pr = options.patch_rows;
  const int pc = options.patch_cols;
  if (pr < 1 || pc < 1 || pr > rows || pc > cols)
    throw std::invalid_argument("lfdr_all: patch does not fit the lattice");

  // One enumeration serves every window of this shape.
  const Graph patch_graph = lattice_graph(pr, pc);
  const auto partitions = enumerate_graph_respecting(patch_graph, options.enumeration_cap);
  const bool stationary = hp.A.rows() == pr * pc;
  if (stationary) hp.validate(pr * pc);

  // Group vertices by their central window.
  const int window_cols = cols - pc + 1;
  std::map<int, std::vector<int>> window_members;
  for (int v = 0; v < n; ++v) {
    const auto patch = local_patch(rows, cols, v, pr, pc);
    const int r0 = patch.front() / cols;
    const int c0 = patch.front() % cols;
    window_members[r0 * window_cols + c0].push_back(v);
  }
  std::vector<std::pair<int, std::vector<int>>> windows(window_members.begin(),
                                                        window_members.end());

  LfdrResult result = make_empty_result(n);
  parallel_for(static_cast<int>(windows.size()), options.threads, [&](int w) {
    const auto& [window_id, members] = windows[w];
    const int r0 = window_id / window_cols;
    const int c0 = window_id % window_cols;
    VertexSubset patch;
    patch.reserve(static_cast<std::size_t>(pr) * pc);
    for (int r = r0; r < r0 + pr; ++r)
      for (int c = c0; c < c0 + pc; ++c) patch.push_back(r * cols + c);
    try {
      const Hyperparams window_hp = stationary ? hp : patch_hyperparams(hp, patch, n);
      const auto posterior =
          posterior_over_states(data.restrict_to(patch), partitions, window_hp, options.laplace);
      for (int v : members) {
        const int local = static_cast<int>(
            std::find(patch.begin(), patch.end(), v) - patch.begin());
        result.lfdr[v] = posterior.lfdr_of(local);
        result.patch_id[v] = window_id;
        result.states_summed[v] = static_cast<int>(posterior.states.size());
        result.log_normalizer[v] = posterior.log_normalizer;
      }
    } catch (const std::exception& err) {
      for (int v : members) {
        result.patch_id[v] = window_id;
        result.failures[v] = err.what();
      }
    }
  });
  return result;
}

LfdrResult lfdr_all_graph(const DataMatrices& data, const Graph& g, int radius,
                          const Hyperparams& hp, const EngineOptions& options) {
  const int n = g.n_vertices();
  if (data.n_vertices() != n) throw std::invalid_argument("lfdr_all_graph: data rows != vertices");
  if (!is_connected(g)) throw std::invalid_argument("lfdr_all_graph: graph must be connected");

  // Precompute balls and share enumerations between identical patch keys
  // (adjacency bitset of the induced subgraph in discovery order).
  std::vector<VertexSubset> balls(n);
  std::map<std::vector<std::uint64_t>, std::shared_ptr<const std::vector<Partition>>> cache;
  std::vector<std::shared_ptr<const std::vector<Partition>>> partition_sets(n);
  for (int v = 0; v < n; ++v) {
    balls[v] = bfs_ball(g, v, radius);
    const Graph sub = induced_subgraph(g, balls[v]);
    const int m = sub.n_vertices();
    std::vector<std::uint64_t> key((static_cast<std::size_t>(m) * m + 63) / 64 + 1, 0);
    key[0] = static_cast<std::uint64_t>(m);
    for (const auto& [a, b] : sub.edges()) {
      const std::size_t bit = static_cast<std::size_t>(a) * m + b;
      key[1 + bit / 64] |= 1ull << (bit % 64);
    }
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache
               .emplace(key, std::make_shared<const std::vector<Partition>>(
                                 enumerate_graph_respecting(sub, options.enumeration_cap)))
               .first;
    }
    partition_sets[v] = it->second;
  }

  LfdrResult result = make_empty_result(n);
  parallel_for(n, options.threads, [&](int v) {
    try {
      const Hyperparams ball_hp = patch_hyperparams(hp, balls[v], n);
      const auto posterior = posterior_over_states(data.restrict_to(balls[v]), *partition_sets[v],
                                                   ball_hp, options.laplace);
      result.lfdr[v] = posterior.lfdr_of(0);  // center is first in discovery order
      result.patch_id[v] = v;
      result.states_summed[v] = static_cast<int>(posterior.states.size());
      result.log_normalizer[v] = posterior.log_normalizer;
    } catch (const std::exception& err) {
      result.patch_id[v] = v;
      result.failures[v] = err.what();
    }
  });
  return result;
}

DiscoveryList discovery_list(const LfdrResult& result, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw std::invalid_argument("discovery_list: threshold must be in [0,1]");
  DiscoveryList list;
  list.threshold = threshold;
  double acc = 0.0;
  for (int v = 0; v < result.lfdr.size(); ++v) {
    if (result.lfdr[v] <= threshold) {  // NaN never listed
      list.vertices.push_back(v);
      acc += result.lfdr[v];
    }
  }
  list.empty = list.vertices.empty();
  list.controlled_fdr =
      list.empty ? std::numeric_limits<double>::quiet_NaN() : acc / list.vertices.size();
  return list;
}

double controlled_fdr(const LfdrResult& result, const DiscoveryList& list) {
  if (list.empty || list.vertices.empty()) return std::numeric_limits<double>::quiet_NaN();
  double acc = 0.0;
  for (int v : list.vertices) acc += result.lfdr[v];
  return acc / list.vertices.size();
}

}  // namespace graphmm
