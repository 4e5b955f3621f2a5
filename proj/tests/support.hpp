#pragma once

// Shared test utilities: seeded generators and independent oracles. The
// oracles here deliberately re-derive results with plain containers and
// direct definitions so they share no code path with the library internals
// they check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "cellgames/constructions.hpp"
#include "cellgames/decide.hpp"
#include "cellgames/engine.hpp"
#include "cellgames/formula.hpp"
#include "cellgames/game.hpp"

namespace testsupport {

using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) {  // inclusive
  return static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)) + lo;
}

// ---------------------------------------------------------------------------
// Random formulas

inline cellgames::logic::FormulaPtr random_formula(Rng& rng, int depth,
                                                   int atom_range) {
  using cellgames::logic::Formula;
  const int pick = depth <= 0 ? rand_int(rng, 0, 1) : rand_int(rng, 0, 7);
  switch (pick) {
    case 0:
      return Formula::bottom();
    case 1:
    case 2:
    case 3: {
      std::int64_t a = rand_int(rng, -atom_range, atom_range);
      std::int64_t b = rand_int(rng, -atom_range, atom_range);
      return Formula::atom(a, b);
    }
    case 4:
      return Formula::negation(random_formula(rng, depth - 1, atom_range));
    case 5:
      return Formula::conjunction(random_formula(rng, depth - 1, atom_range),
                                  random_formula(rng, depth - 1, atom_range));
    case 6:
      return Formula::disjunction(random_formula(rng, depth - 1, atom_range),
                                  random_formula(rng, depth - 1, atom_range));
    default:
      return Formula::implication(random_formula(rng, depth - 1, atom_range),
                                  random_formula(rng, depth - 1, atom_range));
  }
}

// ---------------------------------------------------------------------------
// Independent validity oracle: separate evaluator, separate subset walk.

inline bool oracle_eval(const cellgames::logic::Formula& f, bool all_true,
                        const std::set<std::uint64_t>& blocked) {
  using cellgames::logic::FormulaKind;
  switch (f.kind()) {
    case FormulaKind::Bottom:
      return false;
    case FormulaKind::Atom: {
      if (all_true) return true;
      if (f.atom_a() == f.atom_b()) return false;
      return blocked.count(
                 cellgames::logic::atom_distance(f.atom_a(), f.atom_b())) == 0;
    }
    case FormulaKind::Not:
      return !oracle_eval(*f.lhs(), all_true, blocked);
    case FormulaKind::And:
      return oracle_eval(*f.lhs(), all_true, blocked) &&
             oracle_eval(*f.rhs(), all_true, blocked);
    case FormulaKind::Or:
      return oracle_eval(*f.lhs(), all_true, blocked) ||
             oracle_eval(*f.rhs(), all_true, blocked);
    case FormulaKind::Implies:
      return !oracle_eval(*f.lhs(), all_true, blocked) ||
             oracle_eval(*f.rhs(), all_true, blocked);
  }
  return false;
}

inline void oracle_distances(const cellgames::logic::Formula& f,
                             std::set<std::uint64_t>& out) {
  using cellgames::logic::FormulaKind;
  if (f.kind() == FormulaKind::Atom) {
    if (f.atom_a() != f.atom_b())
      out.insert(cellgames::logic::atom_distance(f.atom_a(), f.atom_b()));
    return;
  }
  if (f.lhs()) oracle_distances(*f.lhs(), out);
  if (f.rhs()) oracle_distances(*f.rhs(), out);
}

/// True when the formula holds under AllTrue and all 2^k distance subsets,
/// enumerated by bitmask.
inline bool oracle_valid(const cellgames::logic::Formula& f) {
  std::set<std::uint64_t> dset;
  oracle_distances(f, dset);
  std::vector<std::uint64_t> dists(dset.begin(), dset.end());
  if (!oracle_eval(f, true, {})) return false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << dists.size());
       ++mask) {
    std::set<std::uint64_t> blocked;
    for (std::size_t i = 0; i < dists.size(); ++i)
      if ((mask >> i) & 1) blocked.insert(dists[i]);
    if (!oracle_eval(f, false, blocked)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Naive equilibrium-structure oracle over plain sets.

struct NaiveStructure {
  int s = 0;
  std::map<std::pair<int, int>, long long> max_payoff;
  std::set<std::pair<int, int>> core;  // pairs on bi-infinite walks

  explicit NaiveStructure(const cellgames::games::FiniteCellularGame& game) {
    s = game.strategy_count();
    for (int x = 0; x < s; ++x)
      for (int z = 0; z < s; ++z) {
        long long best = game.payoff(x, 0, z);
        for (int y = 1; y < s; ++y) best = std::max(best, game.payoff(x, y, z));
        max_payoff[{x, z}] = best;
      }
    // forward/backward walk-length oracle, iterated to the s^2 bound
    std::set<std::pair<int, int>> fwd, bwd;
    for (int x = 0; x < s; ++x)
      for (int y = 0; y < s; ++y) {
        fwd.insert({x, y});
        bwd.insert({x, y});
      }
    auto game_member = [&](int x, int y, int z) {
      return game.payoff(x, y, z) == max_payoff[{x, z}];
    };
    const std::size_t bound = static_cast<std::size_t>(s) * s;
    for (std::size_t step = 0; step < bound; ++step) {
      std::set<std::pair<int, int>> next;
      for (const auto& [x, y] : fwd)
        for (int z = 0; z < s; ++z)
          if (game_member(x, y, z) && fwd.count({y, z})) {
            next.insert({x, y});
            break;
          }
      if (next == fwd) break;
      fwd = std::move(next);
    }
    for (std::size_t step = 0; step < bound; ++step) {
      std::set<std::pair<int, int>> next;
      for (const auto& [y, z] : bwd)
        for (int x = 0; x < s; ++x)
          if (game_member(x, y, z) && bwd.count({x, y})) {
            next.insert({y, z});
            break;
          }
      if (next == bwd) break;
      bwd = std::move(next);
    }
    for (const auto& p : fwd)
      if (bwd.count(p)) core.insert(p);
  }

  bool member(const cellgames::games::FiniteCellularGame& game, int x, int y,
              int z) const {
    return game.payoff(x, y, z) == max_payoff.at({x, z});
  }

  std::set<int> realizable() const {
    std::set<int> out;
    for (const auto& [x, y] : core) out.insert(x);
    return out;
  }

  /// Heads reachable in exactly d steps from core pairs headed at s0,
  /// stepping through the full relation but ending in the core. This mirrors
  /// enumerating equilibrium windows over [a-1, b+1] with extendable ends.
  std::set<int> heads_at_depth(const cellgames::games::FiniteCellularGame& game,
                               int s0, std::uint64_t d) const {
    std::set<std::pair<int, int>> frontier;
    for (const auto& p : core)
      if (p.first == s0) frontier.insert(p);
    for (std::uint64_t step = 0; step < d; ++step) {
      std::set<std::pair<int, int>> next;
      for (const auto& [x, y] : frontier)
        for (int z = 0; z < s; ++z)
          if (member(game, x, y, z)) next.insert({y, z});
      frontier = std::move(next);
    }
    std::set<int> heads;
    for (const auto& p : frontier)
      if (core.count(p)) heads.insert(p.first);
    return heads;
  }

  bool interchangeable(const cellgames::games::FiniteCellularGame& game,
                       std::int64_t a, std::int64_t b) const {
    auto r = realizable();
    if (r.empty()) return true;
    if (a == b) return r.size() <= 1;
    const std::uint64_t d = a > b ? static_cast<std::uint64_t>(a) -
                                        static_cast<std::uint64_t>(b)
                                  : static_cast<std::uint64_t>(b) -
                                        static_cast<std::uint64_t>(a);
    for (int s0 : r) {
      std::set<int> heads = heads_at_depth(game, s0, d);
      for (int t : r)
        if (!heads.count(t)) return false;
    }
    return true;
  }
};

/// Flat-array variant of the naive oracle, fast enough for the 256-strategy
/// matrix game. Same independent route: full-relation frontier stepping
/// between pairs of a walk-length core.
struct FlatOracle {
  int s = 0;
  std::vector<long long> maxp;  // x*s+z -> max payoff
  std::vector<char> core;      // x*s+y -> on a bi-infinite walk

  explicit FlatOracle(const cellgames::games::FiniteCellularGame& game) {
    s = game.strategy_count();
    const std::size_t v = static_cast<std::size_t>(s) * s;
    maxp.assign(v, 0);
    for (int x = 0; x < s; ++x)
      for (int z = 0; z < s; ++z) {
        long long best = game.payoff(x, 0, z);
        for (int y = 1; y < s; ++y) best = std::max(best, game.payoff(x, y, z));
        maxp[static_cast<std::size_t>(x) * s + z] = best;
      }
    std::vector<char> fwd(v, 1), bwd(v, 1);
    auto member = [&](int x, int y, int z) {
      return game.payoff(x, y, z) == maxp[static_cast<std::size_t>(x) * s + z];
    };
    for (bool changed = true; changed;) {
      changed = false;
      for (int x = 0; x < s; ++x)
        for (int y = 0; y < s; ++y) {
          const std::size_t node = static_cast<std::size_t>(x) * s + y;
          if (!fwd[node]) continue;
          bool keep = false;
          for (int z = 0; z < s && !keep; ++z)
            keep = member(x, y, z) && fwd[static_cast<std::size_t>(y) * s + z];
          if (!keep) {
            fwd[node] = 0;
            changed = true;
          }
        }
    }
    for (bool changed = true; changed;) {
      changed = false;
      for (int y = 0; y < s; ++y)
        for (int z = 0; z < s; ++z) {
          const std::size_t node = static_cast<std::size_t>(y) * s + z;
          if (!bwd[node]) continue;
          bool keep = false;
          for (int x = 0; x < s && !keep; ++x)
            keep = member(x, y, z) && bwd[static_cast<std::size_t>(x) * s + y];
          if (!keep) {
            bwd[node] = 0;
            changed = true;
          }
        }
    }
    core.assign(v, 0);
    for (std::size_t i = 0; i < v; ++i) core[i] = fwd[i] && bwd[i];
  }

  std::set<int> realizable() const {
    std::set<int> out;
    for (int x = 0; x < s; ++x)
      for (int y = 0; y < s; ++y)
        if (core[static_cast<std::size_t>(x) * s + y]) out.insert(x);
    return out;
  }

  /// Heads seen at each depth 1..dmax from core pairs headed s0 (frontier
  /// steps through the full relation; heads counted at core pairs only).
  std::vector<std::set<int>> heads_by_depth(
      const cellgames::games::FiniteCellularGame& game, int s0,
      int dmax) const {
    const std::size_t v = static_cast<std::size_t>(s) * s;
    std::vector<char> frontier(v, 0);
    for (int y = 0; y < s; ++y) {
      const std::size_t node = static_cast<std::size_t>(s0) * s + y;
      frontier[node] = core[node];
    }
    std::vector<std::set<int>> out;
    for (int d = 1; d <= dmax; ++d) {
      std::vector<char> next(v, 0);
      for (int x = 0; x < s; ++x)
        for (int y = 0; y < s; ++y) {
          if (!frontier[static_cast<std::size_t>(x) * s + y]) continue;
          for (int z = 0; z < s; ++z)
            if (game.payoff(x, y, z) ==
                maxp[static_cast<std::size_t>(x) * s + z])
              next[static_cast<std::size_t>(y) * s + z] = 1;
        }
      frontier = std::move(next);
      std::set<int> heads;
      for (int x = 0; x < s; ++x)
        for (int y = 0; y < s; ++y) {
          const std::size_t node = static_cast<std::size_t>(x) * s + y;
          if (frontier[node] && core[node]) heads.insert(x);
        }
      out.push_back(std::move(heads));
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Random matrix-game material.

/// Random matrix with optional forced entries.
inline cellgames::games::MatrixStrategy random_matrix(Rng& rng, int n) {
  cellgames::games::MatrixStrategy m(n);
  for (int r = 1; r <= n - 1; ++r)
    for (int c = 1; c <= 2; ++c) m.set(r, c, rand_int(rng, 0, n));
  return m;
}

/// Random window of the given length that is semi-perfect at every interior
/// player: each next cell is sampled from the conditions' two-choice slack.
/// Interior cells keep top-left zero so the window stays extendable.
inline cellgames::constructions::MatrixWindow random_semiperfect_window(
    Rng& rng, int n, int length, bool first_topright_zero) {
  using cellgames::games::MatrixStrategy;
  cellgames::constructions::MatrixWindow w;
  w.n = n;
  w.start = 0;
  MatrixStrategy first = random_matrix(rng, n);
  first.set(1, 1, 0);
  if (first_topright_zero) first.set(1, 2, 0);
  w.cells.push_back(first);
  MatrixStrategy second = random_matrix(rng, n);
  second.set(1, 1, 0);
  w.cells.push_back(second);
  while (static_cast<int>(w.cells.size()) < length) {
    const MatrixStrategy& x = w.cells[w.cells.size() - 2];
    const MatrixStrategy& y = w.cells.back();
    MatrixStrategy z = random_matrix(rng, n);
    z.set(1, 1, 0);
    // condition 2 pins column 1 rows 2..n-1 up to a {0,1} slack
    for (int k = 1; k <= n - 2; ++k)
      z.set(k + 1, 1,
            x.at(k, 2) + y.at(k, 1) - y.at(k + 1, 2) + rand_int(rng, 0, 1));
    // condition 3 pins the top-right entry up to a {0,1} slack
    z.set(1, 2, x.at(n - 1, 2) + y.at(n - 1, 1) + rand_int(rng, 0, 1));
    w.cells.push_back(z);
  }
  return w;
}

/// Random equilibrium of the matrix game: a random semi-perfect window
/// closed into a full profile.
inline cellgames::constructions::MatrixProfile random_matrix_equilibrium(
    Rng& rng, int n) {
  auto w = random_semiperfect_window(rng, n, n + 2, false);
  return cellgames::constructions::close_to_equilibrium(n, w);
}

/// Random equilibrium of an analyzed game: a random core walk closed through
/// the library's constrained search (seeded by a random realizable head).
inline cellgames::engine::EventuallyPeriodicProfile random_engine_equilibrium(
    Rng& rng, const cellgames::engine::Analysis& analysis, int walk_len) {
  const auto& r = analysis.realizable();
  std::vector<std::pair<std::int64_t, cellgames::games::StrategyId>> cons;
  std::int64_t pos = 0;
  for (int i = 0; i < std::min(walk_len, 3); ++i) {
    cons.emplace_back(pos, r[rng() % r.size()]);
    pos += 1 + static_cast<std::int64_t>(rng() % 3);
    auto attempt = analysis.constrained_equilibrium(cons);
    if (!attempt) {
      cons.pop_back();
      break;
    }
  }
  if (cons.empty()) cons.emplace_back(0, r[rng() % r.size()]);
  auto profile = analysis.constrained_equilibrium(cons);
  return *profile;
}

/// Engine profile from a matrix profile (n must be small enough that the
/// matrix game is buildable, so ids are the row-major encodings).
inline cellgames::engine::EventuallyPeriodicProfile to_engine_profile(
    const cellgames::constructions::MatrixProfile& p) {
  cellgames::engine::EventuallyPeriodicProfile out;
  out.anchor = p.anchor;
  auto conv = [](const std::vector<cellgames::games::MatrixStrategy>& in) {
    std::vector<cellgames::games::StrategyId> word;
    for (const auto& m : in) word.push_back(cellgames::games::gn_strategy_id(m));
    return word;
  };
  out.left = conv(p.left);
  out.mid = conv(p.mid);
  out.right = conv(p.right);
  return out;
}

}  // namespace testsupport
