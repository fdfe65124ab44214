#pragma once

#include "tap/model.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace tap {

// Ground-truth brute force for desk-scale instances, kept deliberately free
// of the production solver's machinery. Times are moved onto an integer grid
// by clearing every denominator, and candidate timestamps come from a
// lattice that strictly contains every timestamp an optimal profile can
// use: each interval endpoint (plus 0 and the horizon) offset by every
// signed difference of edge-midpoint prefix distances.
struct OracleLimits {
  std::size_t max_candidates = 50000;
  std::uint64_t max_paths = 500000;
};

struct OracleOtp {
  Rational reward{0};
  Profile profile;
};

struct OracleOptp {
  Rational reward{0};
  Path path;
  Profile profile;
  std::uint64_t paths_enumerated = 0;
};

namespace oracle_detail {

struct ScaledGraph {
  BigInt scale = 1;
  BigInt horizon;
  std::vector<std::vector<std::pair<BigInt, BigInt>>> intervals;
  std::vector<std::vector<BigInt>> cumulative;

  explicit ScaledGraph(const TaskAssistanceGraph& g) {
    using boost::multiprecision::gcd;
    auto fold = [&](const BigInt& den) { scale = scale / gcd(scale, den) * den; };
    fold(rat_den(g.horizon()));
    for (int v = 0; v < g.vertex_count(); ++v)
      for (const Interval& iv : g.intervals(v)) {
        fold(rat_den(iv.start));
        fold(rat_den(iv.end));
      }
    for (const Edge& e : g.edges()) fold(rat_den(e.length));
    scale *= 2;  // half-edge offsets stay integral

    horizon = to_units(g.horizon());
    intervals.resize(static_cast<std::size_t>(g.vertex_count()));
    cumulative.resize(intervals.size());
    for (int v = 0; v < g.vertex_count(); ++v) {
      BigInt acc = 0;
      for (const Interval& iv : g.intervals(v)) {
        intervals[static_cast<std::size_t>(v)].push_back({to_units(iv.start), to_units(iv.end)});
        cumulative[static_cast<std::size_t>(v)].push_back(acc);
        acc += to_units(iv.end) - to_units(iv.start);
      }
    }
  }

  BigInt to_units(const Rational& r) const { return rat_num(r) * (scale / rat_den(r)); }
  Rational to_rational(const BigInt& units) const { return Rational(units, scale); }

  // Interval mass of v covered within [0, t].
  BigInt mass_upto(int v, const BigInt& t) const {
    const auto& ivs = intervals[static_cast<std::size_t>(v)];
    std::size_t lo = 0, hi = ivs.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (ivs[mid].first <= t)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo == 0) return BigInt(0);
    return cumulative[static_cast<std::size_t>(v)][lo - 1] +
           std::min(t, ivs[lo - 1].second) - ivs[lo - 1].first;
  }

  BigInt mass_between(int v, const BigInt& a, const BigInt& b) const {
    return mass_upto(v, b) - mass_upto(v, a);
  }
};

struct ScaledOtp {
  BigInt reward{0};
  std::vector<BigInt> profile;
};

// Exhaustive optimum over the candidate lattice. Writing the per-level
// maximisation as max over t of [mass(v_i, 0, t) + best_suffix(t)] minus
// mass(v_i, 0, t_prev) turns the cross product into one suffix-maximum per
// level without changing the maximised set.
inline ScaledOtp oracle_otp_scaled(const TaskAssistanceGraph& g, const ScaledGraph& sg,
                                   const Path& path, const OracleLimits& limits,
                                   bool want_profile) {
  PathGeometry geo = path_lengths(g, path);
  const int k = geo.last_index();
  ScaledOtp out;
  if (geo.plus[static_cast<std::size_t>(k)] > g.horizon()) return out;
  if (k == 0) {
    out.reward = sg.mass_between(path[0], BigInt(0), sg.horizon);
    return out;
  }

  std::vector<BigInt> plus;
  plus.reserve(path.size());
  for (const Rational& p : geo.plus) plus.push_back(sg.to_units(p));

  std::vector<BigInt> offsets{BigInt(0)};
  for (const BigInt& p : plus) offsets.push_back(p);
  std::vector<BigInt> anchors{BigInt(0), sg.horizon};
  for (int v : path)
    for (const auto& iv : sg.intervals[static_cast<std::size_t>(v)]) {
      anchors.push_back(iv.first);
      anchors.push_back(iv.second);
    }
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  std::sort(offsets.begin(), offsets.end());
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());

  std::vector<BigInt> cand;
  for (const BigInt& e : anchors)
    for (const BigInt& a : offsets)
      for (const BigInt& b : offsets) {
        BigInt t = e + a - b;
        if (t >= 0 && t <= sg.horizon) cand.push_back(std::move(t));
      }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  if (cand.size() > limits.max_candidates)
    throw TapError("oracle limit exceeded: candidate lattice too large");
  const std::size_t m = cand.size();

  auto gate_of = [&](int i) {
    return i == 0 ? plus[0]
                  : plus[static_cast<std::size_t>(i)] - plus[static_cast<std::size_t>(i) - 1];
  };
  auto first_at_or_after = [&](const BigInt& t) {
    return static_cast<std::size_t>(std::lower_bound(cand.begin(), cand.end(), t) - cand.begin());
  };

  // Values derived from unreachable states must stay negative through up to
  // k additions of at most horizon each.
  const BigInt kNegInf = -((sg.horizon + 1) * (k + 2));

  // value[j] = G_{i+1}(cand[j]), the best reward of the remaining suffix
  // given index i is exited at cand[j]. Initialised for i = k - 1.
  std::vector<BigInt> value(m);
  for (std::size_t j = 0; j < m; ++j)
    value[j] = sg.mass_between(path[static_cast<std::size_t>(k)], cand[j], sg.horizon);

  std::vector<std::vector<BigInt>> suffix_max(static_cast<std::size_t>(k),
                                              std::vector<BigInt>(m));
  std::vector<std::vector<std::size_t>> suffix_arg(static_cast<std::size_t>(k),
                                                   std::vector<std::size_t>(m));

  for (int i = k - 1; i >= 0; --i) {
    const int v = path[static_cast<std::size_t>(i)];
    const BigInt last_exit_limit =
        i == k - 1 ? sg.horizon - gate_of(k) : sg.horizon;  // timing constraint (3)
    auto& sm = suffix_max[static_cast<std::size_t>(i)];
    auto& sa = suffix_arg[static_cast<std::size_t>(i)];
    for (std::size_t j = m; j-- > 0;) {
      BigInt w = (cand[j] <= last_exit_limit && value[j] >= 0)
                     ? sg.mass_upto(v, cand[j]) + value[j]
                     : kNegInf;
      sm[j] = w;
      sa[j] = j;
      if (j + 1 < m && sm[j + 1] > sm[j]) {
        sm[j] = sm[j + 1];
        sa[j] = sa[j + 1];
      }
    }
    if (i > 0) {
      std::vector<BigInt> prev(m);
      for (std::size_t j = 0; j < m; ++j) {
        std::size_t r = first_at_or_after(cand[j] + gate_of(i));
        prev[j] = (r < m && sm[r] >= 0) ? sm[r] - sg.mass_upto(v, cand[j]) : kNegInf;
      }
      value = std::move(prev);
    }
  }

  std::size_t j0 = first_at_or_after(gate_of(0));
  if (j0 >= m || suffix_max[0][j0] < 0) return out;  // no valid profile on the lattice
  out.reward = suffix_max[0][j0];                    // mass_upto(v_0, 0) == 0

  if (want_profile) {
    out.profile.assign(static_cast<std::size_t>(k), BigInt(0));
    BigInt prev = 0;
    for (int i = 0; i < k; ++i) {
      std::size_t from = first_at_or_after(prev + gate_of(i));
      std::size_t pick = suffix_arg[static_cast<std::size_t>(i)][from];
      out.profile[static_cast<std::size_t>(i)] = cand[pick];
      prev = cand[pick];
    }
  }
  return out;
}

// Depth-first enumeration of every path extending `seed` whose total length
// fits in the horizon; the seed itself is visited first.
template <typename Visit>
inline std::uint64_t enumerate_feasible_paths(const TaskAssistanceGraph& g, const Path& seed,
                                              const OracleLimits& limits, Visit&& visit) {
  if (has_zero_length_cycle(g))
    throw TapError(
        "instance has a directed cycle of zero-length edges; "
        "exhaustive path enumeration refuses it");
  PathGeometry geo = path_lengths(g, seed);
  if (geo.prefix.back() > g.horizon()) return 0;

  std::uint64_t count = 1;
  Path path = seed;
  std::vector<Rational> length{geo.prefix.back()};
  visit(path);

  std::vector<std::size_t> next_edge{0};
  while (!next_edge.empty()) {
    const auto& out = g.out_edge_ids(path.back());
    if (next_edge.back() >= out.size()) {
      next_edge.pop_back();
      if (!next_edge.empty()) {
        path.pop_back();
        length.pop_back();
      }
      continue;
    }
    const Edge& e = g.edges()[static_cast<std::size_t>(out[next_edge.back()++])];
    Rational grown = length.back() + e.length;
    if (grown > g.horizon()) continue;
    if (++count > limits.max_paths) throw TapError("oracle limit exceeded: too many paths");
    path.push_back(e.to);
    length.push_back(std::move(grown));
    visit(path);
    next_edge.push_back(0);
  }
  return count;
}

}  // namespace oracle_detail

inline Rational brute_force_otp(const TaskAssistanceGraph& g, const Path& path,
                                const OracleLimits& limits = {}) {
  oracle_detail::ScaledGraph sg(g);
  auto r = oracle_detail::oracle_otp_scaled(g, sg, path, limits, false);
  return sg.to_rational(r.reward);
}

inline OracleOtp brute_force_otp_with_profile(const TaskAssistanceGraph& g, const Path& path,
                                              const OracleLimits& limits = {}) {
  oracle_detail::ScaledGraph sg(g);
  auto r = oracle_detail::oracle_otp_scaled(g, sg, path, limits, true);
  OracleOtp out;
  out.reward = sg.to_rational(r.reward);
  for (const BigInt& t : r.profile) out.profile.push_back(sg.to_rational(t));
  return out;
}

// Exhaustive optimum over all paths from the start vertex whose total length
// fits in the horizon. Refuses instances where that path set is infinite.
inline OracleOptp brute_force_optp(const TaskAssistanceGraph& g, const OracleLimits& limits = {}) {
  oracle_detail::ScaledGraph sg(g);
  OracleOptp best;
  best.reward = -1;
  Path seed{g.start_vertex()};
  best.paths_enumerated =
      oracle_detail::enumerate_feasible_paths(g, seed, limits, [&](const Path& path) {
        auto r = oracle_detail::oracle_otp_scaled(g, sg, path, limits, false);
        Rational reward = sg.to_rational(r.reward);
        if (reward > best.reward) {
          best.reward = reward;
          best.path = path;
        }
      });
  if (best.reward < 0) throw TapError("start vertex admits no feasible path");
  auto traced = oracle_detail::oracle_otp_scaled(g, sg, best.path, limits, true);
  for (const BigInt& t : traced.profile) best.profile.push_back(sg.to_rational(t));
  return best;
}

// Best oracle reward over feasible paths extending `prefix` (including the
// prefix itself when include_prefix is set).
inline Rational brute_force_best_extension(const TaskAssistanceGraph& g, const Path& prefix,
                                           bool include_prefix, const OracleLimits& limits = {}) {
  oracle_detail::ScaledGraph sg(g);
  Rational best = -1;
  bool first = true;
  oracle_detail::enumerate_feasible_paths(g, prefix, limits, [&](const Path& path) {
    if (first) {
      first = false;
      if (!include_prefix) return;
    }
    auto r = oracle_detail::oracle_otp_scaled(g, sg, path, limits, false);
    Rational reward = sg.to_rational(r.reward);
    if (reward > best) best = reward;
  });
  return best < 0 ? Rational(0) : best;
}

}  // namespace tap
