#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "graphmm/errors.hpp"
#include "graphmm/partition.hpp"
#include "oracles.hpp"

using namespace graphmm;

TEST_CASE("canonical label encoding") {
  const auto p = Partition::from_labels({2, 2, 0, 1, 0});
  CHECK(p.labels == std::vector<int>{0, 0, 1, 2, 1});
  CHECK(p.n_blocks() == 3);
  // re-canonicalizing canonical labels is the identity
  CHECK(Partition::from_labels(p.labels) == p);
}

TEST_CASE("partition serialization round trip") {
  const auto p = Partition::from_labels({0, 1, 1, 2});
  CHECK(to_string(p) == "0,1,1,2");
  CHECK(partition_from_string("0,1,1,2") == p);
}

TEST_CASE("is_graph_respecting") {
  const Graph g = lattice_graph(3, 3);
  // three rows are paths
  CHECK(is_graph_respecting(g, Partition::from_labels({0, 0, 0, 1, 1, 1, 2, 2, 2})));
  // a block of two non-adjacent vertices induces two components
  CHECK_FALSE(is_graph_respecting(g, Partition::from_labels({0, 1, 0, 1, 1, 1, 1, 1, 1})));
  // singletons are connected
  CHECK(is_graph_respecting(g, Partition::from_labels({0, 1, 2, 3, 4, 5, 6, 7, 8})));
  CHECK_THROWS_AS(is_graph_respecting(g, Partition::from_labels({0, 0})),
                  std::invalid_argument);
}

TEST_CASE("enumerate_all_partitions counts and canonical form") {
  CHECK(enumerate_all_partitions(1).size() == 1);
  CHECK(enumerate_all_partitions(4).size() == 15);
  CHECK(enumerate_all_partitions(9).size() == 21147);
  CHECK_THROWS_AS(enumerate_all_partitions(11), ResourceLimitError);

  // duplicate-free and canonical
  const auto all = enumerate_all_partitions(5);
  std::set<std::vector<int>> distinct;
  for (const auto& p : all) {
    CHECK(Partition::from_labels(p.labels) == p);
    distinct.insert(p.labels);
  }
  CHECK(distinct.size() == all.size());
}

TEST_CASE("enumerate_graph_respecting reference counts") {
  CHECK(enumerate_graph_respecting(lattice_graph(3, 3)).size() == 1434);
  CHECK(enumerate_graph_respecting(lattice_graph(1, 4)).size() == 8);
  // complete graph: no restriction
  std::vector<std::pair<int, int>> k4_edges;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) k4_edges.emplace_back(a, b);
  CHECK(enumerate_graph_respecting(Graph(4, k4_edges)).size() == 15);

  // includes the single-block and all-singleton partitions
  const auto parts = enumerate_graph_respecting(lattice_graph(2, 2));
  CHECK(parts.size() == 12);
  CHECK(std::find(parts.begin(), parts.end(), Partition::from_labels({0, 0, 0, 0})) !=
        parts.end());
  CHECK(std::find(parts.begin(), parts.end(), Partition::from_labels({0, 1, 2, 3})) !=
        parts.end());

  CHECK_THROWS_AS(enumerate_graph_respecting(Graph(2, {})), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_graph_respecting(lattice_graph(4, 4)), ResourceLimitError);
}

TEST_CASE("path graph counts follow 2^(n-1)") {
  for (int n = 2; n <= 8; ++n) {
    CHECK(enumerate_graph_respecting(lattice_graph(1, n)).size() == (1u << (n - 1)));
  }
}

TEST_CASE("graph-respecting count is at most Bell with equality iff complete") {
  for (int n = 2; n <= 5; ++n) {
    const auto bell = enumerate_all_partitions(n).size();
    std::vector<std::pair<int, int>> complete_edges;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) complete_edges.emplace_back(a, b);
    CHECK(enumerate_graph_respecting(Graph(n, complete_edges)).size() == bell);
    if (n >= 3) {
      CHECK(enumerate_graph_respecting(lattice_graph(1, n)).size() < bell);
    }
  }
}

TEST_CASE("enumeration equals brute-force filtering on random connected graphs") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 5);  // 3..7
    // random connected graph: spanning path plus random extra edges
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
    for (int a = 0; a < n; ++a) {
      for (int b = a + 2; b < n; ++b) {
        if (rng() % 3 == 0) edges.emplace_back(a, b);
      }
    }
    const Graph g(n, edges);
    const auto fast = enumerate_graph_respecting(g);

    std::set<std::vector<int>> expected;
    for (const auto& blocks : oracle::all_partitions(n)) {
      if (oracle::blocks_connected(n, edges, blocks)) expected.insert(oracle::to_labels(n, blocks));
    }
    std::set<std::vector<int>> got;
    for (const auto& p : fast) got.insert(p.labels);
    CHECK(got == expected);
  }
}

TEST_CASE("sample_graph_respecting") {
  const Graph g = lattice_graph(3, 3);
  std::mt19937_64 rng(99);

  CHECK(sample_graph_respecting(g, 1, rng) == Partition::from_labels({0, 0, 0, 0, 0, 0, 0, 0, 0}));
  CHECK(sample_graph_respecting(g, 9, rng).n_blocks() == 9);
  CHECK_THROWS_AS(sample_graph_respecting(g, 0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_graph_respecting(g, 10, rng), std::invalid_argument);

  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = sample_graph_respecting(g, 3, rng);
    CHECK(p.n_blocks() == 3);
    CHECK(is_graph_respecting(g, p));
  }
}

TEST_CASE("rand_index") {
  const auto p1 = Partition::from_labels({0, 0, 1});
  const auto p2 = Partition::from_labels({0, 1, 2});
  CHECK(rand_index(p1, p1) == 1.0);
  CHECK(rand_index(p1, p2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(rand_index(Partition::from_labels({0, 0}), Partition::from_labels({0, 1})) == 0.0);
  CHECK_THROWS_AS(rand_index(p1, Partition::from_labels({0, 0})), std::invalid_argument);
}
