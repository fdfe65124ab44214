#pragma once

#include "tap/model.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace tap {

struct TimeRewardPair {
  Rational time;
  Rational reward;

  friend bool operator==(const TimeRewardPair& a, const TimeRewardPair& b) {
    return a.time == b.time && a.reward == b.reward;
  }
};

// Exit pairs of one vertex kept on the Pareto frontier: times strictly
// increase and so do rewards, so "best reward with exit <= t" is the last
// pair at or before t.
class ParetoList {
 public:
  void append_if_improving(TimeRewardPair p) {
    if (pairs_.empty() || p.reward > pairs_.back().reward) pairs_.push_back(std::move(p));
  }

  Rational best_reward_at_or_before(const Rational& t) const {
    std::size_t lo = 0, hi = pairs_.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (pairs_[mid].time <= t)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo == 0 ? Rational(0) : pairs_[lo - 1].reward;
  }

  const std::vector<TimeRewardPair>& pairs() const { return pairs_; }
  bool empty() const { return pairs_.empty(); }

 private:
  std::vector<TimeRewardPair> pairs_;
};

// Critical times of the first path vertex, expressed as exit times of v_0.
// Two families, one value per interval each:
//   ends:   t_e - l+(v_i) + l+(v_0)   for intervals at v_i, i < k
//   starts: t_s - l-(v_j) + l+(v_0)   for intervals at v_j, j >= 1
// plus the two virtual marker intervals [l+(v_0), l+(v_0)] at v_0 and
// [horizon - l+(v_{k-1}, v_k), same] at v_k. The markers never enter the
// graph; they contribute the earliest feasible departure and the time from
// which the tail reward of the last vertex is fully determined.
inline std::vector<Rational> compute_ct0(const TaskAssistanceGraph& g, const Path& path,
                                         const PathGeometry& geo) {
  const int k = geo.last_index();
  std::vector<Rational> times;
  if (k == 0) {
    // Degenerate path: both markers sit on v_0 and there are no vertex
    // pairs; interval ends still matter as evaluation points.
    times.push_back(Rational(0));
    times.push_back(g.horizon());
    for (const Interval& iv : g.intervals(path[0])) times.push_back(iv.end);
  } else {
    times.push_back(geo.plus[0]);  // start marker
    times.push_back(g.horizon() - geo.plus_between(k - 1, k) - geo.minus[static_cast<std::size_t>(k)] +
                    geo.plus[0]);  // end marker
    for (int i = 0; i < k; ++i)
      for (const Interval& iv : g.intervals(path[static_cast<std::size_t>(i)]))
        times.push_back(iv.end - geo.plus[static_cast<std::size_t>(i)] + geo.plus[0]);
    for (int j = 1; j <= k; ++j)
      for (const Interval& iv : g.intervals(path[static_cast<std::size_t>(j)]))
        times.push_back(iv.start - geo.minus[static_cast<std::size_t>(j)] + geo.plus[0]);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

// Critical times of any later vertex are the v_0 times shifted forward.
inline std::vector<Rational> shift_ct(const std::vector<Rational>& ct0, const Rational& offset) {
  std::vector<Rational> out;
  out.reserve(ct0.size());
  for (const Rational& t : ct0) out.push_back(t + offset);
  return out;
}

enum class EntryRule {
  Standard,  // entry + l+(v_{i-1}, v_i) <= exit
  Relaxed    // entry <= exit; only valid inside the prefix bound
};

namespace detail {

// Best reward over feasible entries for one exit time, plus the incremental
// variant used by the solver sweep (entries and exits are both sorted by
// time, so the feasible prefix only grows and the per-entry term
// r - mass(t_entry) admits a running maximum).
struct EntryScan {
  const std::vector<TimeRewardPair>* entries;
  const VertexMass* mass;
  Rational offset;  // l+(v_{i-1}, v_i), or 0 under the relaxed rule
  std::size_t next = 0;
  std::optional<Rational> best_base;  // max of r - mass(t_entry) over the prefix

  std::optional<Rational> advance(const Rational& t_exit) {
    while (next < entries->size() && (*entries)[next].time + offset <= t_exit) {
      const TimeRewardPair& p = (*entries)[next];
      Rational base = p.reward - mass->upto(p.time);
      if (!best_base || base > *best_base) best_base = base;
      ++next;
    }
    if (!best_base) return std::nullopt;
    return *best_base + mass->upto(t_exit);
  }
};

}  // namespace detail

// Best reward obtainable when leaving `vertex` exactly at t_exit, given the
// entry pairs of the previous vertex. entry_offset is l+(v_{i-1}, v_i)
// (l+(v_0) for the first vertex); it is ignored under the relaxed rule.
// Entries that cannot make the exit are skipped; with no feasible entry the
// result is 0.
inline Rational compute_best_reward(const TaskAssistanceGraph& g,
                                    const std::vector<TimeRewardPair>& entry, int vertex,
                                    const Rational& entry_offset, const Rational& t_exit,
                                    EntryRule rule = EntryRule::Standard) {
  Rational best = 0;
  bool any = false;
  for (const TimeRewardPair& p : entry) {
    Rational gate = rule == EntryRule::Relaxed ? p.time : p.time + entry_offset;
    if (gate > t_exit) continue;
    Rational value = p.reward + reward_at_vertex(g, vertex, p.time, t_exit);
    if (!any || value > best) best = value;
    any = true;
  }
  return best;
}

struct OtpOptions {
  EntryRule entry_rule = EntryRule::Standard;
  bool pareto_pruning = true;
  bool trace_profile = false;
};

struct OtpResult {
  bool feasible = false;
  Rational reward{0};
  std::vector<ParetoList> exit_lists;  // one per path index, Pareto-pruned
  Profile profile;                     // optimal witness when traced
};

// Optimal timing profile reward for a fixed path. Sweeps the path once,
// evaluating every critical exit time of every vertex against the entry
// pairs of the previous one. Exit candidates that cannot be extended into a
// complete profile (t + l+(v_i, v_k) > horizon) are dropped, as are exits no
// feasible entry can make.
inline OtpResult otp_solve(const TaskAssistanceGraph& g, const Path& path, OtpOptions opt = {}) {
  if (opt.trace_profile && opt.entry_rule == EntryRule::Relaxed)
    throw TapError("profile traceback requires the standard entry rule");

  PathGeometry geo = path_lengths(g, path);
  const int k = geo.last_index();
  OtpResult result;
  if (geo.plus[static_cast<std::size_t>(k)] > g.horizon()) return result;  // unreachable end
  result.feasible = true;

  std::vector<Rational> ct0 = compute_ct0(g, path, geo);
  std::vector<detail::VertexMass> mass;
  mass.reserve(path.size());
  for (int v : path) mass.emplace_back(g.intervals(v));

  result.exit_lists.resize(path.size());
  std::vector<std::vector<TimeRewardPair>> table(path.size());  // unpruned, for traceback
  std::vector<TimeRewardPair> entries{TimeRewardPair{Rational(0), Rational(0)}};

  for (int i = 0; i <= k; ++i) {
    Rational entry_offset;
    if (opt.entry_rule == EntryRule::Standard)
      entry_offset = i == 0 ? geo.plus[0] : geo.plus_between(i - 1, i);
    detail::EntryScan scan{&entries, &mass[static_cast<std::size_t>(i)], entry_offset};

    const Rational tail = geo.plus_between(i, k);
    for (const Rational& t0 : ct0) {
      Rational t = t0 + geo.plus_between(0, i);
      if (t + tail > g.horizon()) continue;
      std::optional<Rational> value = scan.advance(t);
      if (!value) continue;
      TimeRewardPair pair{t, *value};
      result.exit_lists[static_cast<std::size_t>(i)].append_if_improving(pair);
      table[static_cast<std::size_t>(i)].push_back(std::move(pair));
    }
    entries = opt.pareto_pruning ? result.exit_lists[static_cast<std::size_t>(i)].pairs()
                                 : table[static_cast<std::size_t>(i)];
  }

  const auto& last = table[static_cast<std::size_t>(k)];
  for (const TimeRewardPair& p : last)
    if (p.reward > result.reward) result.reward = p.reward;

  if (opt.trace_profile && k >= 1) {
    if (last.empty()) throw TapError("internal: feasible path produced no exit pairs");
    // Reconstruct one optimal witness backwards over the unpruned tables,
    // always taking the latest departure that still achieves the value.
    std::size_t anchor = 0;
    for (std::size_t j = 1; j < last.size(); ++j)
      if (last[j].reward > last[anchor].reward ||
          (last[j].reward == last[anchor].reward && last[j].time > last[anchor].time))
        anchor = j;
    Rational need = last[anchor].reward;
    Rational t_next = last[anchor].time;
    result.profile.assign(static_cast<std::size_t>(k), Rational(0));
    for (int i = k - 1; i >= 0; --i) {
      const auto& row = table[static_cast<std::size_t>(i)];
      const Rational step = geo.plus_between(i, i + 1);
      bool found = false;
      for (auto it = row.rbegin(); it != row.rend(); ++it) {
        if (it->time + step > t_next) continue;
        if (it->reward + mass[static_cast<std::size_t>(i) + 1].between(it->time, t_next) == need) {
          result.profile[static_cast<std::size_t>(i)] = it->time;
          need = it->reward;
          t_next = it->time;
          found = true;
          break;
        }
      }
      if (!found) throw TapError("internal: profile traceback lost the optimum");
    }
  }
  return result;
}

}  // namespace tap
