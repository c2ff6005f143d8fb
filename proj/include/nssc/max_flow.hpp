#pragma once
#include <nssc/core.hpp>

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

namespace nssc {

// Dinic's algorithm on real capacities. Residuals below kEps count as
// saturated so float round-off cannot spin the augmentation loop forever.
class FlowNetwork {
 public:
  static constexpr double kEps = 1e-12;

  explicit FlowNetwork(int node_count) : adj_(node_count) {}

  int node_count() const { return static_cast<int>(adj_.size()); }

  // Returns the edge id; capacities must be nonnegative. rev_cap gives the
  // reverse direction its own capacity (undirected edges in cut graphs).
  int add_edge(int from, int to, double cap, double rev_cap = 0.0) {
    NSSC_REQUIRE(cap >= 0.0 && rev_cap >= 0.0, "negative capacity");
    NSSC_REQUIRE(from >= 0 && from < node_count() && to >= 0 && to < node_count(),
                 "edge endpoint out of range");
    const int id = static_cast<int>(edges_.size());
    edges_.push_back({to, cap});
    edges_.push_back({from, rev_cap});
    adj_[from].push_back(id);
    adj_[to].push_back(id + 1);
    return id;
  }

  double max_flow(int source, int sink) {
    NSSC_REQUIRE(source != sink, "source equals sink");
    source_ = source;
    double total = 0.0;
    while (bfs(source, sink)) {
      std::fill(edge_ptr_.begin(), edge_ptr_.end(), 0);
      double pushed;
      while ((pushed = dfs(source, sink, std::numeric_limits<double>::infinity())) > 0.0) {
        total += pushed;
      }
    }
    return total;
  }

  // Source side of a minimum cut: nodes reachable in the residual graph.
  // Call after max_flow.
  std::vector<char> min_cut_source_side() const {
    std::vector<char> reach(node_count(), 0);
    std::queue<int> q;
    q.push(source_);
    reach[source_] = 1;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int id : adj_[v]) {
        const Edge& e = edges_[id];
        if (e.cap > kEps && !reach[e.to]) {
          reach[e.to] = 1;
          q.push(e.to);
        }
      }
    }
    return reach;
  }

 private:
  struct Edge {
    int to;
    double cap;  // remaining residual capacity
  };

  bool bfs(int source, int sink) {
    level_.assign(node_count(), -1);
    edge_ptr_.assign(node_count(), 0);
    std::queue<int> q;
    q.push(source);
    level_[source] = 0;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int id : adj_[v]) {
        const Edge& e = edges_[id];
        if (e.cap > kEps && level_[e.to] == -1) {
          level_[e.to] = level_[v] + 1;
          q.push(e.to);
        }
      }
    }
    return level_[sink] != -1;
  }

  double dfs(int v, int sink, double limit) {
    if (v == sink) return limit;
    for (int& i = edge_ptr_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
      const int id = adj_[v][i];
      Edge& e = edges_[id];
      if (e.cap > kEps && level_[e.to] == level_[v] + 1) {
        const double pushed = dfs(e.to, sink, std::min(limit, e.cap));
        if (pushed > 0.0) {
          e.cap -= pushed;
          edges_[id ^ 1].cap += pushed;
          return pushed;
        }
      }
    }
    return 0.0;
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> level_;
  std::vector<int> edge_ptr_;
  int source_ = 0;
};

}  // namespace nssc
