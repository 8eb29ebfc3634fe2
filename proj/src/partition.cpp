#include "graphmm/partition.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "graphmm/errors.hpp"

namespace graphmm {

int Partition::n_blocks() const {
  int k = 0;
  for (int l : labels) k = std::max(k, l + 1);
  return k;
}

std::vector<std::vector<int>> Partition::blocks() const {
  std::vector<std::vector<int>> out(n_blocks());
  for (std::size_t v = 0; v < labels.size(); ++v) out[labels[v]].push_back(static_cast<int>(v));
  return out;
}

Partition Partition::from_labels(std::vector<int> raw) {
  std::vector<int> remap(raw.size(), -1);
  int next = 0;
  for (int& l : raw) {
    if (l < 0 || l >= static_cast<int>(raw.size()))
      throw std::invalid_argument("Partition: label out of range");
    if (remap[l] == -1) remap[l] = next++;
    l = remap[l];
  }
  return Partition{std::move(raw)};
}

std::string to_string(const Partition& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.labels.size(); ++i) {
    if (i) os << ',';
    os << p.labels[i];
  }
  return os.str();
}

Partition partition_from_string(const std::string& line) {
  std::vector<int> labels;
  std::istringstream is(line);
  std::string tok;
  while (std::getline(is, tok, ',')) labels.push_back(std::stoi(tok));
  if (labels.empty()) throw std::invalid_argument("partition_from_string: empty line");
  return Partition::from_labels(std::move(labels));
}

bool is_graph_respecting(const Graph& g, const Partition& p) {
  if (p.size() != g.n_vertices())
    throw std::invalid_argument("is_graph_respecting: partition length != vertex count");
  const int n = g.n_vertices();
  const int k = p.n_blocks();
  std::vector<int> block_size(k, 0);
  for (int l : p.labels) ++block_size[l];
  // BFS within each block over same-label edges.
  std::vector<char> seen(n, 0);
  std::vector<int> stack;
  std::vector<char> block_done(k, 0);
  for (int v = 0; v < n; ++v) {
    const int bl = p.labels[v];
    if (block_done[bl]) continue;
    block_done[bl] = 1;
    stack.assign(1, v);
    seen[v] = 1;
    int reached = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int w : g.neighbors(u)) {
        if (!seen[w] && p.labels[w] == bl) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    if (reached != block_size[bl]) return false;
  }
  return true;
}

namespace {

// Iterates restricted growth strings in lexicographic order.
template <typename Fn>
void for_each_growth_string(int n, Fn&& fn) {
  std::vector<int> labels(n, 0);
  std::vector<int> prefix_max(n, 0);  // max label over labels[0..i]
  int i = n - 1;
  fn(labels);
  if (n == 1) return;
  while (true) {
    // advance position i, carrying leftward when the digit tops out
    while (i > 0 && labels[i] == prefix_max[i - 1] + 1) {
      labels[i] = 0;
      prefix_max[i] = prefix_max[i - 1];
      --i;
    }
    if (i == 0) break;
    ++labels[i];
    prefix_max[i] = std::max(prefix_max[i - 1], labels[i]);
    for (int j = i + 1; j < n; ++j) prefix_max[j] = prefix_max[i];  // labels there are 0
    i = n - 1;
    fn(labels);
  }
}

}  // namespace

std::vector<Partition> enumerate_all_partitions(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_all_partitions: n must be >= 1");
  if (n > 10)
    throw ResourceLimitError("enumerate_all_partitions: n = " + std::to_string(n) +
                             " exceeds cap 10");
  std::vector<Partition> out;
  for_each_growth_string(n, [&](const std::vector<int>& labels) { out.push_back(Partition{labels}); });
  return out;
}

std::vector<Partition> enumerate_graph_respecting(const Graph& g, int cap) {
  if (!is_connected(g))
    throw std::invalid_argument("enumerate_graph_respecting: graph must be connected");
  if (g.n_vertices() > cap)
    throw ResourceLimitError("enumerate_graph_respecting: " + std::to_string(g.n_vertices()) +
                             " vertices exceeds enumeration cap " + std::to_string(cap));
  std::vector<Partition> out;
  for_each_growth_string(g.n_vertices(), [&](const std::vector<int>& labels) {
    Partition p{labels};
    if (is_graph_respecting(g, p)) out.push_back(std::move(p));
  });
  return out;
}

namespace {

// Wilson's algorithm: uniform spanning tree edges via loop-erased random walks.
std::vector<std::pair<int, int>> uniform_spanning_tree(const Graph& g, std::mt19937_64& rng) {
  const int n = g.n_vertices();
  std::vector<int> next(n, -1);
  std::vector<char> in_tree(n, 0);
  std::uniform_int_distribution<int> pick_root(0, n - 1);
  in_tree[pick_root(rng)] = 1;
  for (int v = 0; v < n; ++v) {
    if (in_tree[v]) continue;
    int u = v;
    while (!in_tree[u]) {
      const auto& nb = g.neighbors(u);
      std::uniform_int_distribution<std::size_t> pick(0, nb.size() - 1);
      next[u] = nb[pick(rng)];
      u = next[u];
    }
    u = v;  // retrace; loops were erased by overwriting next[]
    while (!in_tree[u]) {
      in_tree[u] = 1;
      u = next[u];
    }
  }
  std::vector<std::pair<int, int>> tree;
  tree.reserve(n - 1);
  for (int v = 0; v < n; ++v) {
    if (next[v] >= 0 && in_tree[v]) tree.emplace_back(v, next[v]);
  }
  return tree;
}

}  // namespace

Partition sample_graph_respecting(const Graph& g, int k_blocks, std::mt19937_64& rng) {
  const int n = g.n_vertices();
  if (k_blocks < 1 || k_blocks > n)
    throw std::invalid_argument("sample_graph_respecting: k_blocks out of range");
  if (!is_connected(g))
    throw std::invalid_argument("sample_graph_respecting: graph must be connected");
  auto tree = uniform_spanning_tree(g, rng);
  // Tree trace: retraced walks can record next[] for vertices never folded
  // into the tree path; guard by size.
  if (static_cast<int>(tree.size()) != n - 1)
    throw NumericError("sample_graph_respecting: spanning tree construction failed");
  std::shuffle(tree.begin(), tree.end(), rng);
  // keep n - k_blocks edges; components of the kept forest are the blocks
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n - k_blocks; ++i) {
    const auto [u, v] = tree[i];
    parent[find(u)] = find(v);
  }
  std::vector<int> labels(n);
  for (int v = 0; v < n; ++v) labels[v] = find(v);
  return Partition::from_labels(std::move(labels));
}

double rand_index(const Partition& p1, const Partition& p2) {
  const auto n = p1.labels.size();
  if (n != p2.labels.size()) throw std::invalid_argument("rand_index: length mismatch");
  if (n < 2) throw std::invalid_argument("rand_index: need at least two vertices");
  const int k1 = p1.n_blocks();
  const int k2 = p2.n_blocks();
  std::vector<long long> count1(k1, 0), count2(k2, 0);
  std::vector<long long> joint(static_cast<std::size_t>(k1) * k2, 0);
  for (std::size_t v = 0; v < n; ++v) {
    ++count1[p1.labels[v]];
    ++count2[p2.labels[v]];
    ++joint[static_cast<std::size_t>(p1.labels[v]) * k2 + p2.labels[v]];
  }
  auto choose2 = [](long long m) { return m * (m - 1) / 2; };
  long long same1 = 0, same2 = 0, same_both = 0;
  for (long long c : count1) same1 += choose2(c);
  for (long long c : count2) same2 += choose2(c);
  for (long long c : joint) same_both += choose2(c);
  const long long total = choose2(static_cast<long long>(n));
  // agreements = together-in-both + apart-in-both
  const long long agree = total - same1 - same2 + 2 * same_both;
  return static_cast<double>(agree) / static_cast<double>(total);
}

}  // namespace graphmm
