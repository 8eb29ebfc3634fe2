#include "graphmm/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "graphmm/errors.hpp"

namespace graphmm {

Graph::Graph(int n_vertices, std::vector<std::pair<int, int>> edges)
    : n_vertices_(n_vertices) {
  if (n_vertices < 1) throw std::invalid_argument("Graph: need at least one vertex");
  for (auto& [u, v] : edges) {
    if (u == v) throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n_vertices || v >= n_vertices)
      throw std::invalid_argument("Graph: edge endpoint out of range");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("Graph: duplicate edge");
  edges_ = std::move(edges);
  adjacency_.resize(n_vertices_);
  for (const auto& [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
}

bool Graph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
}

Graph lattice_graph(int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("lattice_graph: dimensions must be >= 1");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(rows) * (cols - 1) +
                static_cast<std::size_t>(cols) * (rows - 1));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(v, v + 1);
      if (r + 1 < rows) edges.emplace_back(v, v + cols);
    }
  }
  return Graph(rows * cols, std::move(edges));
}

Graph induced_subgraph(const Graph& g, const VertexSubset& b) {
  if (b.empty()) throw std::invalid_argument("induced_subgraph: empty vertex subset");
  std::vector<int> position(g.n_vertices(), -1);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const int v = b[i];
    if (v < 0 || v >= g.n_vertices())
      throw std::invalid_argument("induced_subgraph: vertex id out of range");
    if (position[v] != -1) throw std::invalid_argument("induced_subgraph: duplicate vertex id");
    position[v] = static_cast<int>(i);
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& [u, v] : g.edges()) {
    if (position[u] != -1 && position[v] != -1) edges.emplace_back(position[u], position[v]);
  }
  return Graph(static_cast<int>(b.size()), std::move(edges));
}

bool is_connected(const Graph& g) {
  std::vector<char> seen(g.n_vertices(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(u)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == g.n_vertices();
}

VertexSubset local_patch(int rows, int cols, int v, int patch_rows, int patch_cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("local_patch: bad lattice dims");
  if (patch_rows < 1 || patch_cols < 1 || patch_rows > rows || patch_cols > cols)
    throw std::invalid_argument("local_patch: patch does not fit the lattice");
  if (v < 0 || v >= rows * cols) throw std::invalid_argument("local_patch: vertex out of range");
  const int vr = v / cols;
  const int vc = v % cols;
  const int r0 = std::clamp(vr - (patch_rows - 1) / 2, 0, rows - patch_rows);
  const int c0 = std::clamp(vc - (patch_cols - 1) / 2, 0, cols - patch_cols);
  VertexSubset out;
  out.reserve(static_cast<std::size_t>(patch_rows) * patch_cols);
  for (int r = r0; r < r0 + patch_rows; ++r)
    for (int c = c0; c < c0 + patch_cols; ++c) out.push_back(r * cols + c);
  return out;
}

VertexSubset bfs_ball(const Graph& g, int v, int radius) {
  if (v < 0 || v >= g.n_vertices()) throw std::invalid_argument("bfs_ball: vertex out of range");
  if (radius < 0) throw std::invalid_argument("bfs_ball: radius must be >= 0");
  std::vector<int> dist(g.n_vertices(), -1);
  VertexSubset out{v};
  dist[v] = 0;
  for (std::size_t head = 0; head < out.size(); ++head) {
    const int u = out[head];
    if (dist[u] == radius) continue;
    for (int w : g.neighbors(u)) {
      if (dist[w] == -1) {
        dist[w] = dist[u] + 1;
        out.push_back(w);
      }
    }
  }
  return out;
}

Graph read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open edge list: " + path);
  std::vector<std::pair<int, int>> edges;
  int max_id = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u >> v))
      throw DataError(path + ":" + std::to_string(line_no) + ": expected two vertex ids");
    if (u < 0 || v < 0)
      throw DataError(path + ":" + std::to_string(line_no) + ": negative vertex id");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    max_id = std::max({max_id, static_cast<int>(u), static_cast<int>(v)});
  }
  if (edges.empty()) throw DataError(path + ": no edges");
  return Graph(max_id + 1, std::move(edges));
}

void write_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write edge list: " + path);
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace graphmm
