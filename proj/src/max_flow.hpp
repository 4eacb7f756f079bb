#pragma once

// Dinic's algorithm over an arbitrary exact capacity type (int64 or cpp_int).

#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace odx::detail {

template <typename Cap>
class MaxFlow {
 public:
  struct Arc {
    std::size_t to;
    Cap capacity;  // residual
  };

  explicit MaxFlow(std::size_t node_count) : out_(node_count) {}

  // Returns the arc id; arc id ^ 1 is its reverse.
  std::size_t add_arc(std::size_t from, std::size_t to, Cap capacity) {
    const std::size_t id = arcs_.size();
    arcs_.push_back({to, std::move(capacity)});
    arcs_.push_back({from, Cap(0)});
    original_.push_back(arcs_[id].capacity);
    original_.push_back(Cap(0));
    out_[from].push_back(id);
    out_[to].push_back(id + 1);
    return id;
  }

  Cap run(std::size_t source, std::size_t sink) {
    Cap total = 0;
    level_.assign(out_.size(), -1);
    next_.assign(out_.size(), 0);
    while (build_levels(source, sink)) {
      std::fill(next_.begin(), next_.end(), 0);
      while (true) {
        Cap pushed = augment(source, sink);
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

  // Flow currently carried by an arc added with add_arc.
  Cap flow(std::size_t arc) const { return original_[arc] - arcs_[arc].capacity; }

  // Nodes reachable from source in the residual network.
  std::vector<bool> residual_reachable(std::size_t source) const {
    std::vector<bool> seen(out_.size(), false);
    std::vector<std::size_t> stack{source};
    seen[source] = true;
    while (!stack.empty()) {
      const std::size_t node = stack.back();
      stack.pop_back();
      for (std::size_t id : out_[node]) {
        const Arc& a = arcs_[id];
        if (a.capacity > 0 && !seen[a.to]) {
          seen[a.to] = true;
          stack.push_back(a.to);
        }
      }
    }
    return seen;
  }

 private:
  bool build_levels(std::size_t source, std::size_t sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      const std::size_t node = queue.front();
      queue.pop();
      for (std::size_t id : out_[node]) {
        const Arc& a = arcs_[id];
        if (a.capacity > 0 && level_[a.to] < 0) {
          level_[a.to] = level_[node] + 1;
          queue.push(a.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  // One blocking-flow path found by iterative DFS along the level graph.
  Cap augment(std::size_t source, std::size_t sink) {
    path_.clear();
    std::size_t node = source;
    while (true) {
      if (node == sink) {
        Cap bottleneck = arcs_[path_.front()].capacity;
        for (std::size_t id : path_) {
          if (arcs_[id].capacity < bottleneck) bottleneck = arcs_[id].capacity;
        }
        for (std::size_t id : path_) {
          arcs_[id].capacity -= bottleneck;
          arcs_[id ^ 1].capacity += bottleneck;
        }
        return bottleneck;
      }
      bool advanced = false;
      for (; next_[node] < out_[node].size(); ++next_[node]) {
        const std::size_t id = out_[node][next_[node]];
        const Arc& a = arcs_[id];
        if (a.capacity > 0 && level_[a.to] == level_[node] + 1) {
          path_.push_back(id);
          node = a.to;
          advanced = true;
          break;
        }
      }
      if (advanced) continue;
      // Dead end: retire this node and back up.
      level_[node] = -1;
      if (path_.empty()) return 0;
      const std::size_t back = path_.back();
      path_.pop_back();
      node = arcs_[back ^ 1].to;
      ++next_[node];
    }
  }

  std::vector<Arc> arcs_;
  std::vector<Cap> original_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
  std::vector<std::size_t> path_;
};

}  // namespace odx::detail
