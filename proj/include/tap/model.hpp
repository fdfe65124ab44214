#pragma once

#include "tap/graph.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace tap {

// Per-index path lengths. With edge lengths l(v_i, v_{i+1}) and the boundary
// conventions l(v_-1, v_0) = l(v_k, v_{k+1}) = 0:
//   prefix[i]  distance from v_0 to v_i
//   minus[i]   distance from v_0 to the middle of v_i's incoming edge
//   plus[i]    distance from v_0 to the middle of v_i's outgoing edge
// Note minus[i] == plus[i-1]; both views are kept because the bound layer
// uses them independently.
struct PathGeometry {
  std::vector<Rational> prefix;
  std::vector<Rational> minus;
  std::vector<Rational> plus;

  Rational plus_between(int i, int j) const {
    return plus[static_cast<std::size_t>(j)] - plus[static_cast<std::size_t>(i)];
  }
  int last_index() const { return static_cast<int>(plus.size()) - 1; }
};

inline PathGeometry path_lengths(const TaskAssistanceGraph& g, const Path& path) {
  if (path.empty()) throw TapError("path must contain at least one vertex");
  const std::size_t n = path.size();
  std::vector<Rational> edge_len(n, Rational(0));  // edge_len[i] = l(v_i, v_{i+1}), 0 at the end
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Edge* e = g.edge_between(path[i], path[i + 1]);
    if (!e)
      throw TapError("path uses non-edge " + g.name(path[i]) + " -> " + g.name(path[i + 1]));
    edge_len[i] = e->length;
  }
  PathGeometry geo;
  geo.prefix.resize(n);
  geo.minus.resize(n);
  geo.plus.resize(n);
  Rational acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    geo.prefix[i] = acc;
    geo.minus[i] = i == 0 ? acc : acc - edge_len[i - 1] / 2;
    geo.plus[i] = acc + edge_len[i] / 2;
    acc += edge_len[i];
  }
  return geo;
}

// Total overlap of [t, t2] with the reward intervals of u.
inline Rational reward_at_vertex(const TaskAssistanceGraph& g, int u, const Rational& t,
                                 const Rational& t2) {
  if (t > t2) throw std::invalid_argument("reward window reversed: t > t'");
  Rational sum = 0;
  for (const Interval& iv : g.intervals(u)) {
    Rational lo = std::max(iv.start, t);
    Rational hi = std::min(iv.end, t2);
    if (lo < hi) sum += hi - lo;
  }
  return sum;
}

struct ProfileViolation {
  int clause;  // 0 length mismatch, 1..3 the timing constraints in order
  std::string message;
};

// Checks the three timing constraints exactly and reports the first one that
// fails: (1) t_0 >= l+(v_0), (2) t_{i+1} >= t_i + l+(v_i, v_{i+1}),
// (3) t_{k-1} + l+(v_{k-1}, v_k) <= horizon.
inline std::optional<ProfileViolation> validate_profile(const TaskAssistanceGraph& g,
                                                        const Path& path,
                                                        const Profile& profile) {
  PathGeometry geo = path_lengths(g, path);
  const int k = geo.last_index();
  if (static_cast<int>(profile.size()) != k) {
    std::ostringstream msg;
    msg << "profile has " << profile.size() << " timestamps, path needs " << k;
    return ProfileViolation{0, msg.str()};
  }
  if (k == 0) return std::nullopt;
  if (profile[0] < geo.plus[0]) {
    return ProfileViolation{1, "t_0 = " + format_rational(profile[0]) + " is before l+(v_0) = " +
                                   format_rational(geo.plus[0])};
  }
  for (int i = 0; i + 1 < k; ++i) {
    Rational need = profile[static_cast<std::size_t>(i)] + geo.plus_between(i, i + 1);
    if (profile[static_cast<std::size_t>(i) + 1] < need) {
      std::ostringstream msg;
      msg << "t_" << (i + 1) << " = " << format_rational(profile[static_cast<std::size_t>(i) + 1])
          << " is before t_" << i << " + l+(v_" << i << ", v_" << (i + 1)
          << ") = " << format_rational(need);
      return ProfileViolation{2, msg.str()};
    }
  }
  Rational arrive = profile[static_cast<std::size_t>(k) - 1] + geo.plus_between(k - 1, k);
  if (arrive > g.horizon()) {
    return ProfileViolation{3, "t_{k-1} + l+(v_{k-1}, v_k) = " + format_rational(arrive) +
                                   " exceeds horizon " + format_rational(g.horizon())};
  }
  return std::nullopt;
}

// Reward of a timing profile: sum over vertices of the overlap between the
// stay window [t_{i-1}, t_i] and the vertex intervals, with t_{-1} = 0 and
// t_k = horizon.
inline Rational reward_of_profile(const TaskAssistanceGraph& g, const Path& path,
                                  const Profile& profile) {
  if (auto bad = validate_profile(g, path, profile))
    throw TapError("invalid timing profile: " + bad->message);
  Rational total = 0;
  Rational prev = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Rational& next = i < profile.size() ? profile[i] : g.horizon();
    total += reward_at_vertex(g, path[i], prev, next);
    prev = next;
  }
  return total;
}

// Reward accrued within [t, horizon] only.
inline Rational partial_reward(const TaskAssistanceGraph& g, const Path& path,
                               const Profile& profile, const Rational& t) {
  if (auto bad = validate_profile(g, path, profile))
    throw TapError("invalid timing profile: " + bad->message);
  if (t < 0 || t > g.horizon()) throw TapError("partial reward cutoff outside [0, horizon]");
  Rational total = 0;
  Rational prev = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Rational& next = i < profile.size() ? profile[i] : g.horizon();
    Rational lo = std::max(prev, t);
    Rational hi = std::max(next, lo);
    total += reward_at_vertex(g, path[i], lo, hi);
    prev = next;
  }
  return total;
}

namespace detail {

// Cumulative interval mass of one vertex; turns window-overlap queries into
// two prefix lookups. Lists are sorted and non-overlapping by construction.
class VertexMass {
 public:
  VertexMass() = default;
  explicit VertexMass(const std::vector<Interval>& intervals) : intervals_(&intervals) {
    cumulative_.reserve(intervals.size());
    Rational acc = 0;
    for (const Interval& iv : intervals) {
      cumulative_.push_back(acc);
      acc += interval_length(iv);
    }
  }

  // Mass of intervals covered in [0, t].
  Rational upto(const Rational& t) const {
    if (!intervals_ || intervals_->empty()) return Rational(0);
    const auto& ivs = *intervals_;
    std::size_t lo = 0, hi = ivs.size();
    while (lo < hi) {  // first interval with start > t
      std::size_t mid = (lo + hi) / 2;
      if (ivs[mid].start <= t)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo == 0) return Rational(0);
    const Interval& iv = ivs[lo - 1];
    return cumulative_[lo - 1] + std::min(t, iv.end) - iv.start;
  }

  Rational between(const Rational& a, const Rational& b) const { return upto(b) - upto(a); }

 private:
  const std::vector<Interval>* intervals_ = nullptr;
  std::vector<Rational> cumulative_;
};

}  // namespace detail

}  // namespace tap
