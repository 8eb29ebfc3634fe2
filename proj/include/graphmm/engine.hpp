#pragma once

#include <string>
#include <vector>

#include "graphmm/graph.hpp"
#include "graphmm/model.hpp"
#include "graphmm/partition.hpp"
#include "graphmm/types.hpp"

namespace graphmm {

struct StatePosterior {
  DiscreteState state;
  double log_weight;    // unnormalized log posterior mass
  double probability;   // normalized
};

struct PatchPosterior {
  std::vector<StatePosterior> states;
  double log_normalizer;

  // Posterior probability that the block containing the given local vertex
  // is unchanged, i.e. the local false-discovery rate of that vertex.
  double lfdr_of(int local_vertex) const;
};

// Exact mixture posterior over every (partition, change-vector) state of a
// patch: enumerates graph-respecting partitions of patch_graph and all
// change vectors, scores each by Laplace marginal plus prior, normalizes by
// log-sum-exp.
PatchPosterior posterior_over_states(const DataMatrices& patch_data, const Graph& patch_graph,
                                     const Hyperparams& hp, const LaplaceOptions& options = {},
                                     int enumeration_cap = kDefaultEnumerationCap);

// Variant with a precomputed partition list (shared across identical patch
// shapes).
PatchPosterior posterior_over_states(const DataMatrices& patch_data,
                                     const std::vector<Partition>& partitions,
                                     const Hyperparams& hp, const LaplaceOptions& options = {});

struct LfdrResult {
  Vector lfdr;                        // NaN for vertices whose patch failed
  std::vector<int> patch_id;          // window (or ball center) per vertex
  std::vector<int> states_summed;     // discrete states mixed per vertex
  std::vector<double> log_normalizer; // per-vertex patch evidence
  std::vector<std::string> failures;  // one diagnostic per failed vertex, "" otherwise

  int n_failed() const;
};

struct EngineOptions {
  int patch_rows = 2;
  int patch_cols = 2;
  int threads = 1;
  int enumeration_cap = kDefaultEnumerationCap;
  LaplaceOptions laplace;
};

// Per-vertex local false-discovery rates on a rows x cols lattice. Each
// vertex is scored on the fixed-shape window that contains it centrally;
// vertices sharing a window share one state posterior. A failing patch
// marks its vertices NaN instead of aborting the run. Output is
// deterministic and independent of the thread count.
LfdrResult lfdr_all(const DataMatrices& data, int rows, int cols, const Hyperparams& hp,
                    const EngineOptions& options = {});

// Fallback for non-lattice graphs: the patch of each vertex is its
// breadth-first ball of the given radius.
LfdrResult lfdr_all_graph(const DataMatrices& data, const Graph& g, int radius,
                          const Hyperparams& hp, const EngineOptions& options = {});

struct DiscoveryList {
  double threshold;
  std::vector<int> vertices;  // { v : l_v <= threshold }
  double controlled_fdr;      // mean lfdr over the list; NaN when empty
  bool empty;
};

DiscoveryList discovery_list(const LfdrResult& result, double threshold);

// Mean of l_v over the listed vertices; NaN (list.empty) for empty lists.
double controlled_fdr(const LfdrResult& result, const DiscoveryList& list);

}  // namespace graphmm
