#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "graphmm/errors.hpp"
#include "graphmm/graph.hpp"

using namespace graphmm;

TEST_CASE("lattice_graph shapes") {
  const Graph g33 = lattice_graph(3, 3);
  CHECK(g33.n_vertices() == 9);
  CHECK(g33.edges().size() == 12);

  const Graph path = lattice_graph(1, 5);
  CHECK(path.n_vertices() == 5);
  CHECK(path.edges().size() == 4);

  const Graph square = lattice_graph(2, 2);
  CHECK(square.n_vertices() == 4);
  CHECK(square.edges().size() == 4);

  CHECK_THROWS_AS(lattice_graph(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(lattice_graph(3, 0), std::invalid_argument);
}

TEST_CASE("graph construction rejects bad edges") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
}

TEST_CASE("induced_subgraph") {
  const Graph g = lattice_graph(3, 3);
  SUBCASE("one full row is a path") {
    const Graph row = induced_subgraph(g, {3, 4, 5});
    CHECK(row.n_vertices() == 3);
    CHECK(row.edges().size() == 2);
    CHECK(row.has_edge(0, 1));
    CHECK(row.has_edge(1, 2));
  }
  SUBCASE("two diagonal corners are disconnected") {
    const Graph pair = induced_subgraph(g, {0, 8});
    CHECK(pair.n_vertices() == 2);
    CHECK(pair.edges().empty());
  }
  SUBCASE("all vertices reproduce the edge count") {
    VertexSubset all;
    for (int v = 0; v < 9; ++v) all.push_back(v);
    CHECK(induced_subgraph(g, all).edges().size() == g.edges().size());
  }
  CHECK_THROWS_AS(induced_subgraph(g, {}), std::invalid_argument);
  CHECK_THROWS_AS(induced_subgraph(g, {0, 9}), std::invalid_argument);
  CHECK_THROWS_AS(induced_subgraph(g, {0, 0}), std::invalid_argument);
}

TEST_CASE("is_connected") {
  CHECK(is_connected(lattice_graph(1, 3)));
  CHECK(is_connected(lattice_graph(4, 4)));
  CHECK_FALSE(is_connected(Graph(2, {})));
  CHECK_FALSE(is_connected(Graph(4, {{0, 1}, {2, 3}})));
}

TEST_CASE("local_patch placement") {
  // interior vertex, odd patch: exactly centered
  const int v55 = 5 * 10 + 5;
  CHECK(local_patch(10, 10, v55, 3, 3) ==
        VertexSubset{44, 45, 46, 54, 55, 56, 64, 65, 66});
  // corner: clipped by shifting
  CHECK(local_patch(10, 10, 0, 3, 3) == VertexSubset{0, 1, 2, 10, 11, 12, 20, 21, 22});
  // even patch with border tie-break: v leans toward the top-left
  CHECK(local_patch(10, 10, 5, 2, 2) == VertexSubset{5, 6, 15, 16});
  CHECK_THROWS_AS(local_patch(2, 2, 0, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(local_patch(10, 10, 100, 2, 2), std::invalid_argument);
}

TEST_CASE("every vertex receives a full connected patch containing it") {
  const int rows = 7, cols = 5;
  const Graph g = lattice_graph(rows, cols);
  for (int pr : {1, 2, 3}) {
    for (int pc : {1, 2, 3}) {
      for (int v = 0; v < rows * cols; ++v) {
        const auto patch = local_patch(rows, cols, v, pr, pc);
        CHECK(static_cast<int>(patch.size()) == pr * pc);
        CHECK(std::find(patch.begin(), patch.end(), v) != patch.end());
        CHECK(is_connected(induced_subgraph(g, patch)));
      }
    }
  }
}

TEST_CASE("bfs_ball") {
  const Graph g = lattice_graph(3, 3);
  const auto ball = bfs_ball(g, 4, 1);  // center of the 3x3
  CHECK(ball.size() == 5);
  CHECK(ball.front() == 4);
  CHECK(is_connected(induced_subgraph(g, ball)));
  CHECK(bfs_ball(g, 0, 0) == VertexSubset{0});
  CHECK(bfs_ball(g, 0, 100).size() == 9);
}

TEST_CASE("edge list round trip and comments") {
  const char* path = "test_edges_tmp.txt";
  {
    std::ofstream out(path);
    out << "# a comment line\n0 1\n1 2\n\n2 3\n";
  }
  const Graph g = read_edge_list(path);
  CHECK(g.n_vertices() == 4);
  CHECK(g.edges().size() == 3);
  write_edge_list(g, path);
  const Graph again = read_edge_list(path);
  CHECK(again.edges() == g.edges());
  std::remove(path);

  CHECK_THROWS_AS(read_edge_list("does_not_exist.txt"), DataError);
}
