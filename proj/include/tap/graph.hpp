#pragma once

#include "tap/rational.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace tap {

class TapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Interval {
  Rational start;
  Rational end;

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.start == b.start && a.end == b.end;
  }
};

inline Rational interval_length(const Interval& iv) { return iv.end - iv.start; }

struct Edge {
  int from;
  int to;
  Rational length;
};

// A path is a sequence of vertex ids; revisits are legal. A profile holds
// the times at which the robot crosses the midpoint of each traversed edge,
// so it has one entry less than the path.
using Path = std::vector<int>;
using Profile = std::vector<Rational>;

// Directed graph whose vertices carry reward time intervals. Immutable once
// built; all solver entry points take it by const reference.
class TaskAssistanceGraph {
 public:
  explicit TaskAssistanceGraph(Rational horizon = Rational(1)) : horizon_(std::move(horizon)) {
    if (horizon_ < 0) throw TapError("horizon must be nonnegative");
  }

  int add_vertex(const std::string& name) {
    if (name.empty()) throw TapError("vertex name must not be empty");
    if (index_.count(name)) throw TapError("duplicate vertex name: " + name);
    int id = static_cast<int>(names_.size());
    index_.emplace(name, id);
    names_.push_back(name);
    intervals_.emplace_back();
    out_.emplace_back();
    return id;
  }

  int vertex(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw TapError("unknown vertex: " + name);
    return it->second;
  }

  std::optional<int> find_vertex(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  void add_edge(int u, int v, Rational len) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw TapError("self-loops are not allowed: " + names_[u]);
    if (len < 0) throw TapError("edge length must be nonnegative");
    if (edge_between(u, v)) throw TapError("duplicate edge " + names_[u] + " -> " + names_[v]);
    out_[u].push_back(static_cast<int>(edges_.size()));
    edges_.push_back(Edge{u, v, std::move(len)});
  }

  // Inserts an interval keeping the per-vertex list sorted and
  // non-overlapping. merge_touching additionally coalesces abutting
  // intervals; interval splitting relies on it being off so that the cut
  // pieces survive.
  void add_interval(int v, Interval iv, bool merge_touching = true) {
    check_vertex(v);
    if (iv.start < 0 || iv.start > iv.end || iv.end > horizon_)
      throw TapError("interval out of range at vertex " + names_[v]);
    auto& list = intervals_[v];
    auto pos = std::upper_bound(list.begin(), list.end(), iv,
                                [](const Interval& a, const Interval& b) { return a.start < b.start; });
    pos = list.insert(pos, std::move(iv));
    std::size_t i = pos - list.begin();
    while (i > 0 && mergeable(list[i - 1], list[i], merge_touching)) {
      list[i - 1].end = std::max(list[i - 1].end, list[i].end);
      list.erase(list.begin() + static_cast<long>(i));
      --i;
    }
    while (i + 1 < list.size() && mergeable(list[i], list[i + 1], merge_touching)) {
      list[i].end = std::max(list[i].end, list[i + 1].end);
      list.erase(list.begin() + static_cast<long>(i) + 1);
    }
  }

  // Canonical load-time form: overlapping or abutting intervals merged.
  void coalesce_intervals() {
    for (auto& list : intervals_) {
      if (list.size() < 2) continue;
      std::vector<Interval> merged;
      for (auto& iv : list) {
        if (!merged.empty() && iv.start <= merged.back().end)
          merged.back().end = std::max(merged.back().end, iv.end);
        else
          merged.push_back(iv);
      }
      list = std::move(merged);
    }
  }

  void set_start(const std::string& name) { start_ = vertex(name); }
  void set_start(int v) {
    check_vertex(v);
    start_ = v;
  }

  int vertex_count() const { return static_cast<int>(names_.size()); }
  const std::string& name(int v) const { return names_.at(static_cast<std::size_t>(v)); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Interval>& intervals(int v) const { return intervals_.at(static_cast<std::size_t>(v)); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& out_edge_ids(int u) const { return out_.at(static_cast<std::size_t>(u)); }
  const Rational& horizon() const { return horizon_; }

  int start_vertex() const {
    if (start_ < 0) throw TapError("start vertex not set");
    return start_;
  }
  bool has_start() const { return start_ >= 0; }

  const Edge* edge_between(int u, int v) const {
    for (int e : out_[static_cast<std::size_t>(u)])
      if (edges_[static_cast<std::size_t>(e)].to == v) return &edges_[static_cast<std::size_t>(e)];
    return nullptr;
  }

  Rational total_interval_mass() const {
    Rational mass = 0;
    for (const auto& list : intervals_)
      for (const auto& iv : list) mass += interval_length(iv);
    return mass;
  }

  friend bool operator==(const TaskAssistanceGraph& a, const TaskAssistanceGraph& b) {
    if (a.horizon_ != b.horizon_ || a.start_ != b.start_ || a.names_ != b.names_ ||
        a.intervals_ != b.intervals_)
      return false;
    if (a.edges_.size() != b.edges_.size()) return false;
    auto key = [](const Edge& e) { return std::pair<int, int>(e.from, e.to); };
    std::vector<std::size_t> ia(a.edges_.size()), ib(b.edges_.size());
    for (std::size_t i = 0; i < ia.size(); ++i) ia[i] = ib[i] = i;
    auto by_key = [&](const std::vector<Edge>& es) {
      return [&es, key](std::size_t l, std::size_t r) { return key(es[l]) < key(es[r]); };
    };
    std::sort(ia.begin(), ia.end(), by_key(a.edges_));
    std::sort(ib.begin(), ib.end(), by_key(b.edges_));
    for (std::size_t i = 0; i < ia.size(); ++i) {
      const Edge& ea = a.edges_[ia[i]];
      const Edge& eb = b.edges_[ib[i]];
      if (ea.from != eb.from || ea.to != eb.to || ea.length != eb.length) return false;
    }
    return true;
  }

 private:
  static bool mergeable(const Interval& a, const Interval& b, bool merge_touching) {
    // a.start <= b.start holds by list order.
    if (b.start < a.end) return true;
    if (b.start > a.end) return false;
    if (merge_touching) return true;
    // Keep abutting positive intervals apart, but absorb zero-length ones.
    return interval_length(a) == 0 || interval_length(b) == 0;
  }

  void check_vertex(int v) const {
    if (v < 0 || v >= vertex_count()) throw TapError("vertex id out of range");
  }

  Rational horizon_;
  int start_ = -1;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<Interval>> intervals_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
};

// True when the subgraph of zero-length edges contains a directed cycle.
// Exhaustive path enumeration refuses such instances.
inline bool has_zero_length_cycle(const TaskAssistanceGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> color(static_cast<std::size_t>(n), 0);  // 0 new, 1 open, 2 done
  std::vector<std::pair<int, std::size_t>> stack;
  for (int root = 0; root < n; ++root) {
    if (color[static_cast<std::size_t>(root)] != 0) continue;
    stack.push_back({root, 0});
    color[static_cast<std::size_t>(root)] = 1;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      const auto& out = g.out_edge_ids(u);
      bool advanced = false;
      while (next < out.size()) {
        const Edge& e = g.edges()[static_cast<std::size_t>(out[next])];
        ++next;
        if (e.length != 0) continue;
        int c = color[static_cast<std::size_t>(e.to)];
        if (c == 1) return true;
        if (c == 0) {
          color[static_cast<std::size_t>(e.to)] = 1;
          stack.push_back({e.to, 0});
          advanced = true;
          break;
        }
      }
      if (!advanced && (stack.back().second >= g.out_edge_ids(stack.back().first).size())) {
        color[static_cast<std::size_t>(stack.back().first)] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

}  // namespace tap
