#include "wulffkit/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace wulffkit {

void MaxFlow::add_edge(int u, int v, std::int64_t cap, std::int64_t rev_cap) {
  if (u < 0 || v < 0 || u >= nodes_ || v >= nodes_) throw std::out_of_range("MaxFlow::add_edge: node index");
  edges_.push_back({u, v, cap, rev_cap});
}

void MaxFlow::build() {
  const auto n = static_cast<std::size_t>(nodes_);
  start_.assign(n + 1, 0);
  for (const auto& e : edges_) {
    ++start_[static_cast<std::size_t>(e.u) + 1];
    ++start_[static_cast<std::size_t>(e.v) + 1];
  }
  for (std::size_t i = 0; i < n; ++i) start_[i + 1] += start_[i];
  const auto m = static_cast<std::size_t>(start_[n]);
  to_.assign(m, 0);
  rev_.assign(m, 0);
  cap_.assign(m, 0);
  std::vector<int> fill(start_.begin(), start_.end() - 1);
  for (const auto& e : edges_) {
    const int a = fill[static_cast<std::size_t>(e.u)]++;
    const int b = fill[static_cast<std::size_t>(e.v)]++;
    to_[static_cast<std::size_t>(a)] = e.v;
    cap_[static_cast<std::size_t>(a)] = e.cap;
    rev_[static_cast<std::size_t>(a)] = b;
    to_[static_cast<std::size_t>(b)] = e.u;
    cap_[static_cast<std::size_t>(b)] = e.rev_cap;
    rev_[static_cast<std::size_t>(b)] = a;
  }
}

bool MaxFlow::bfs(int s, int t) {
  std::fill(level_.begin(), level_.end(), -1);
  queue_.clear();
  level_[static_cast<std::size_t>(s)] = 0;
  queue_.push_back(s);
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const auto v = static_cast<std::size_t>(queue_[head]);
    for (int a = start_[v]; a < start_[v + 1]; ++a) {
      const auto w = static_cast<std::size_t>(to_[static_cast<std::size_t>(a)]);
      if (cap_[static_cast<std::size_t>(a)] > 0 && level_[w] < 0) {
        level_[w] = level_[v] + 1;
        queue_.push_back(static_cast<int>(w));
      }
    }
  }
  return level_[static_cast<std::size_t>(t)] >= 0;
}

std::int64_t MaxFlow::dfs(int v, int t, std::int64_t pushed) {
  if (v == t) return pushed;
  const auto vi = static_cast<std::size_t>(v);
  std::int64_t sent = 0;
  for (int& a = iter_[vi]; a < start_[vi + 1]; ++a) {
    const auto ai = static_cast<std::size_t>(a);
    const int w = to_[ai];
    if (cap_[ai] <= 0 || level_[static_cast<std::size_t>(w)] != level_[vi] + 1) continue;
    const std::int64_t got = dfs(w, t, std::min(pushed - sent, cap_[ai]));
    if (got > 0) {
      cap_[ai] -= got;
      cap_[static_cast<std::size_t>(rev_[ai])] += got;
      sent += got;
      if (sent == pushed) return sent;
    }
  }
  level_[vi] = -1;
  return sent;
}

std::int64_t MaxFlow::solve(int source, int sink) {
  build();
  level_.assign(static_cast<std::size_t>(nodes_), -1);
  std::int64_t flow = 0;
  while (bfs(source, sink)) {
    iter_.assign(start_.begin(), start_.end() - 1);
    flow += dfs(source, sink, std::numeric_limits<std::int64_t>::max());
  }
  return flow;
}

}  // namespace wulffkit
