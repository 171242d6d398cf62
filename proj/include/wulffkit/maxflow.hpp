#pragma once

// Dinic max-flow on integer capacities.

#include <cstdint>
#include <vector>

namespace wulffkit {

class MaxFlow {
 public:
  explicit MaxFlow(int nodes = 0) : nodes_(nodes) {}

  int add_node() { return nodes_++; }
  int node_count() const noexcept { return nodes_; }
  /// Arc u -> v with capacity cap, and optionally v -> u with rev_cap.
  void add_edge(int u, int v, std::int64_t cap, std::int64_t rev_cap = 0);

  std::int64_t solve(int source, int sink);
  /// After solve(): whether v is reachable from the source in the residual graph.
  bool on_source_side(int v) const { return level_[static_cast<std::size_t>(v)] >= 0; }

 private:
  struct Edge {
    int u, v;
    std::int64_t cap, rev_cap;
  };

  void build();
  bool bfs(int s, int t);
  std::int64_t dfs(int v, int t, std::int64_t pushed);

  int nodes_ = 0;
  std::vector<Edge> edges_;
  // Compressed adjacency built by solve().
  std::vector<int> start_;
  std::vector<int> to_;
  std::vector<int> rev_;
  std::vector<std::int64_t> cap_;
  std::vector<int> level_;
  std::vector<int> iter_;
  std::vector<int> queue_;
};

}  // namespace wulffkit
