#pragma once

#include <random>
#include <string>
#include <vector>

#include "graphmm/graph.hpp"

namespace graphmm {

// Partition of {0..n-1} as a label vector in canonical first-occurrence
// encoding: scanning vertices in id order, block ids appear as 0,1,2,...
struct Partition {
  std::vector<int> labels;

  int size() const { return static_cast<int>(labels.size()); }
  int n_blocks() const;
  std::vector<std::vector<int>> blocks() const;

  // Relabels into canonical first-occurrence encoding.
  static Partition from_labels(std::vector<int> raw);

  bool operator==(const Partition&) const = default;
};

std::string to_string(const Partition& p);
Partition partition_from_string(const std::string& line);

// True iff every block induces a connected subgraph of g.
bool is_graph_respecting(const Graph& g, const Partition& p);

// All set partitions of n elements in canonical encoding (restricted growth
// strings in lexicographic order). n <= 10.
std::vector<Partition> enumerate_all_partitions(int n);

inline constexpr int kDefaultEnumerationCap = 12;

// All graph-respecting partitions of g, canonical encoding, enumeration
// order stable. Requires g connected and n_vertices <= cap.
std::vector<Partition> enumerate_graph_respecting(const Graph& g,
                                                  int cap = kDefaultEnumerationCap);

// Uniform spanning tree by loop-erased random walk (Wilson), then k_blocks-1
// tree edges deleted uniformly at random; components become the blocks.
// Always graph-respecting.
Partition sample_graph_respecting(const Graph& g, int k_blocks, std::mt19937_64& rng);

// Fraction of unordered vertex pairs on which the partitions agree
// (co-clustered in both or separated in both).
double rand_index(const Partition& p1, const Partition& p2);

}  // namespace graphmm
