#pragma once

#include <string>
#include <utility>
#include <vector>

namespace graphmm {

// Ordered list of distinct vertex ids of a parent graph.
using VertexSubset = std::vector<int>;

// Simple undirected graph, immutable after construction. Edges are stored
// normalized (u < v) and sorted; construction rejects self-loops, duplicate
// edges and out-of-range endpoints.
class Graph {
 public:
  Graph(int n_vertices, std::vector<std::pair<int, int>> edges);

  int n_vertices() const { return n_vertices_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }

  bool has_edge(int u, int v) const;

 private:
  int n_vertices_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;
};

// 4-neighbor grid graph; vertex id = row*cols + col.
Graph lattice_graph(int rows, int cols);

// Subgraph on b with vertices relabeled 0..|b|-1 in b's order.
Graph induced_subgraph(const Graph& g, const VertexSubset& b);

bool is_connected(const Graph& g);

// Axis-aligned patch_rows x patch_cols window containing v as centrally as
// possible on a rows x cols lattice. Windows are shifted (never shrunk) at
// the borders; when v cannot sit exactly central the window is placed so
// that v leans toward its top-left corner. Returned ids are in row-major
// window order.
VertexSubset local_patch(int rows, int cols, int v, int patch_rows, int patch_cols);

// Vertices within the given hop distance of v, in breadth-first discovery
// order (v first). Patch fallback for non-lattice graphs.
VertexSubset bfs_ball(const Graph& g, int v, int radius);

// Plain-text edge list: one "u v" pair per line, 0-based ids, '#' comments.
// Vertex count is max id + 1.
Graph read_edge_list(const std::string& path);
void write_edge_list(const Graph& g, const std::string& path);

}  // namespace graphmm
