#include "cellgames/engine.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>

#include "cellgames/errors.hpp"

namespace cellgames::engine {

namespace {

using Bits = std::vector<std::uint64_t>;

Bits make_bits(std::size_t n) { return Bits((n + 63) / 64, 0); }

inline void set_bit(Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t(1) << (i & 63); }

inline bool test_bit(const Bits& b, std::size_t i) {
  return (b[i >> 6] >> (i & 63)) & 1;
}

bool bits_empty(const Bits& b) {
  for (std::uint64_t w : b)
    if (w) return false;
  return true;
}

template <typename Fn>
void for_each_bit(const Bits& b, Fn&& fn) {
  for (std::size_t wi = 0; wi < b.size(); ++wi) {
    std::uint64_t w = b[wi];
    while (w) {
      int tz = std::countr_zero(w);
      fn(wi * 64 + static_cast<std::size_t>(tz));
      w &= w - 1;
    }
  }
}

std::uint64_t unsigned_distance(std::int64_t a, std::int64_t b) {
  std::uint64_t ua = static_cast<std::uint64_t>(a);
  std::uint64_t ub = static_cast<std::uint64_t>(b);
  return a > b ? ua - ub : ub - ua;
}

}  // namespace

TransferRelation TransferRelation::build(FiniteCellularGame game,
                                         const EngineLimits& limits) {
  const int s = game.strategy_count();
  if (s > limits.max_strategies)
    throw ResourceLimitError(
        "relation construction needs " + std::to_string(s) +
        " strategies, above the cap of " + std::to_string(limits.max_strategies));
  TransferRelation rel;
  rel.game_ = std::make_shared<const FiniteCellularGame>(std::move(game));
  rel.s_ = s;
  rel.max_.assign(static_cast<std::size_t>(s) * s, 0);
  for (int x = 0; x < s; ++x) {
    for (int z = 0; z < s; ++z) {
      long long best = rel.game_->payoff(x, 0, z);
      for (int y = 1; y < s; ++y)
        best = std::max(best, rel.game_->payoff(x, y, z));
      rel.max_[static_cast<std::size_t>(x) * s + z] = best;
    }
  }
  return rel;
}

std::vector<StrategyId> TransferRelation::successors(StrategyId x,
                                                     StrategyId y) const {
  std::vector<StrategyId> out;
  for (int z = 0; z < s_; ++z)
    if (contains(x, y, z)) out.push_back(z);
  return out;
}

CoreGraph CoreGraph::build(const TransferRelation& relation) {
  CoreGraph g;
  const int s = relation.strategy_count();
  g.s_ = s;
  const std::size_t v = static_cast<std::size_t>(s) * s;
  g.out_.assign(v, {});
  g.in_.assign(v, {});
  g.alive_.assign(v, 1);

  std::vector<std::size_t> out_deg(v, 0), in_deg(v, 0);
  for (int x = 0; x < s; ++x) {
    for (int y = 0; y < s; ++y) {
      const std::size_t node = static_cast<std::size_t>(x) * s + y;
      for (int z = 0; z < s; ++z) {
        if (!relation.contains(x, y, z)) continue;
        const std::size_t to = static_cast<std::size_t>(y) * s + z;
        g.out_[node].push_back(static_cast<int>(to));
      }
    }
  }
  for (std::size_t node = 0; node < v; ++node)
    for (int to : g.out_[node]) g.in_[to].push_back(static_cast<int>(node));
  for (std::size_t node = 0; node < v; ++node) {
    out_deg[node] = g.out_[node].size();
    in_deg[node] = g.in_[node].size();
  }

  // Peel nodes that cannot lie on a bi-infinite walk.
  std::vector<int> stack;
  for (std::size_t node = 0; node < v; ++node)
    if (out_deg[node] == 0 || in_deg[node] == 0) {
      g.alive_[node] = 0;
      stack.push_back(static_cast<int>(node));
    }
  while (!stack.empty()) {
    int node = stack.back();
    stack.pop_back();
    for (int to : g.out_[node]) {
      if (!g.alive_[to]) continue;
      if (--in_deg[to] == 0) {
        g.alive_[to] = 0;
        stack.push_back(to);
      }
    }
    for (int from : g.in_[node]) {
      if (!g.alive_[from]) continue;
      if (--out_deg[from] == 0) {
        g.alive_[from] = 0;
        stack.push_back(from);
      }
    }
  }

  std::size_t alive_count = 0;
  for (std::size_t node = 0; node < v; ++node) {
    if (!g.alive_[node]) {
      g.out_[node].clear();
      g.out_[node].shrink_to_fit();
      g.in_[node].clear();
      g.in_[node].shrink_to_fit();
      continue;
    }
    ++alive_count;
    auto keep_alive = [&g](std::vector<int>& edges) {
      edges.erase(std::remove_if(edges.begin(), edges.end(),
                                 [&g](int e) { return !g.alive_[e]; }),
                  edges.end());
    };
    keep_alive(g.out_[node]);
    keep_alive(g.in_[node]);
  }
  g.nodes_ = alive_count;

  std::vector<std::uint8_t> head_seen(s, 0);
  for (std::size_t node = 0; node < v; ++node)
    if (g.alive_[node]) head_seen[node / s] = 1;
  for (int h = 0; h < s; ++h)
    if (head_seen[h]) g.realizable_.push_back(h);
  return g;
}

Analysis::Analysis(FiniteCellularGame game, const EngineLimits& limits)
    : relation_(TransferRelation::build(std::move(game), limits)),
      core_(CoreGraph::build(relation_)),
      limits_(limits) {}

namespace {

Bits propagate(const CoreGraph& core, const Bits& cur, std::size_t v) {
  Bits next = make_bits(v);
  for_each_bit(cur, [&](std::size_t node) {
    for (int to : core.out(static_cast<int>(node))) set_bit(next, to);
  });
  return next;
}

bool any_with_head(const CoreGraph& core, const Bits& bits, StrategyId head) {
  const int s = core.strategy_count();
  const std::size_t begin = static_cast<std::size_t>(head) * s;
  for (std::size_t i = begin; i < begin + static_cast<std::size_t>(s); ++i)
    if (test_bit(bits, i)) return true;
  return false;
}

/// Frontier after exactly d steps from all core nodes with the given head.
/// The frontier orbit is detected for cycles so large d stays cheap.
Bits frontier_at_depth(const CoreGraph& core, StrategyId head, std::uint64_t d,
                       const EngineLimits& limits) {
  const int s = core.strategy_count();
  const std::size_t v = static_cast<std::size_t>(s) * s;
  Bits cur = make_bits(v);
  const std::size_t begin = static_cast<std::size_t>(head) * s;
  for (int y = 0; y < s; ++y)
    if (core.alive_node(static_cast<int>(begin) + y)) set_bit(cur, begin + y);
  if (d == 0 || bits_empty(cur)) return cur;

  std::vector<Bits> history;
  std::map<Bits, std::uint64_t> seen;
  history.push_back(cur);
  seen.emplace(cur, 0);
  for (std::uint64_t step = 1;; ++step) {
    cur = propagate(core, history.back(), v);
    if (step == d) return cur;
    auto [it, inserted] = seen.emplace(cur, step);
    if (!inserted) {
      const std::uint64_t j = it->second;
      const std::uint64_t period = step - j;
      return history[j + (d - j) % period];
    }
    history.push_back(cur);
    if (step > limits.max_steps)
      throw ResourceLimitError("frontier propagation budget exceeded");
  }
}

}  // namespace

bool Analysis::path_exists(StrategyId s, StrategyId t, std::uint64_t d) const {
  if (d == 0) throw InputError("path length must be positive");
  Bits frontier = frontier_at_depth(core_, s, d, limits_);
  return any_with_head(core_, frontier, t);
}

bool Analysis::interchangeable(std::int64_t a, std::int64_t b) const {
  const auto& realizable = core_.realizable();
  if (realizable.empty()) return true;  // empty equilibrium set, vacuous
  if (a == b) return realizable.size() <= 1;
  const std::uint64_t d = unsigned_distance(a, b);
  for (StrategyId s : realizable) {
    Bits frontier = frontier_at_depth(core_, s, d, limits_);
    for (StrategyId t : realizable)
      if (!any_with_head(core_, frontier, t)) return false;
  }
  return true;
}

std::vector<ProfileWindow> Analysis::enumerate_ne_windows(int length) const {
  if (length < 1) throw InputError("window length must be positive");
  const int s = core_.strategy_count();
  std::vector<ProfileWindow> out;
  const auto& game = relation_.game();
  auto by_labels = [&game](const ProfileWindow& a, const ProfileWindow& b) {
    return std::lexicographical_compare(
        a.cells.begin(), a.cells.end(), b.cells.begin(), b.cells.end(),
        [&game](StrategyId x, StrategyId y) {
          return game.label(x) < game.label(y);
        });
  };
  if (length == 1) {
    for (StrategyId r : core_.realizable()) out.push_back({0, {r}});
    std::sort(out.begin(), out.end(), by_labels);
    return out;
  }
  std::uint64_t budget = limits_.max_expansions;
  std::vector<StrategyId> word(static_cast<std::size_t>(length));
  // DFS over core paths of length-1 nodes.
  auto emit = [&](int last_node) {
    word[static_cast<std::size_t>(length) - 1] = core_.tail(last_node);
    out.push_back({0, word});
  };
  std::vector<std::pair<int, int>> stack;  // (node, depth), depth = cell index
  for (std::size_t node = 0; node < static_cast<std::size_t>(s) * s; ++node) {
    if (!core_.alive_node(static_cast<int>(node))) continue;
    stack.push_back({static_cast<int>(node), 0});
    while (!stack.empty()) {
      auto [cur, depth] = stack.back();
      stack.pop_back();
      if (budget-- == 0)
        throw ResourceLimitError("window enumeration budget exceeded");
      word[static_cast<std::size_t>(depth)] = core_.head(cur);
      if (depth == length - 2) {
        emit(cur);
        continue;
      }
      for (auto it = core_.out(cur).rbegin(); it != core_.out(cur).rend(); ++it)
        stack.push_back({*it, depth + 1});
    }
  }
  std::sort(out.begin(), out.end(), by_labels);
  return out;
}

namespace {

int min_set_bit(const Bits& b) {
  for (std::size_t wi = 0; wi < b.size(); ++wi)
    if (b[wi]) return static_cast<int>(wi * 64 + std::countr_zero(b[wi]));
  return -1;
}

}  // namespace

std::optional<EventuallyPeriodicProfile> Analysis::constrained_equilibrium(
    std::vector<std::pair<std::int64_t, StrategyId>> constraints) const {
  if (constraints.empty())
    throw InputError("constrained_equilibrium needs at least one constraint");
  if (constraints.size() > 8)
    throw InputError("at most 8 constraints are supported");
  std::sort(constraints.begin(), constraints.end());
  for (std::size_t i = 1; i < constraints.size(); ++i)
    if (constraints[i].first == constraints[i - 1].first)
      throw InputError("constraint positions must be distinct");
  const int s = core_.strategy_count();
  for (auto& [pos, id] : constraints)
    if (id < 0 || id >= s) throw InputError("constraint strategy id out of range");

  const std::int64_t p0 = constraints.front().first;
  const std::int64_t p_last = constraints.back().first;
  const std::uint64_t span = unsigned_distance(p0, p_last);
  if (span > limits_.max_steps)
    throw ResourceLimitError("constraint span exceeds the propagation budget");

  const std::size_t v = static_cast<std::size_t>(s) * s;
  std::vector<Bits> layers(span + 1, make_bits(v));
  {
    const std::size_t begin = static_cast<std::size_t>(constraints[0].second) * s;
    for (int y = 0; y < s; ++y)
      if (core_.alive_node(static_cast<int>(begin) + y))
        set_bit(layers[0], begin + y);
  }
  std::size_t next_constraint = 1;
  for (std::uint64_t k = 1; k <= span; ++k) {
    layers[k] = propagate(core_, layers[k - 1], v);
    const std::int64_t pos = p0 + static_cast<std::int64_t>(k);
    if (next_constraint < constraints.size() &&
        constraints[next_constraint].first == pos) {
      const StrategyId want = constraints[next_constraint].second;
      Bits filtered = make_bits(v);
      const std::size_t begin = static_cast<std::size_t>(want) * s;
      for (int y = 0; y < s; ++y)
        if (test_bit(layers[k], begin + y)) set_bit(filtered, begin + y);
      layers[k] = std::move(filtered);
      ++next_constraint;
    }
    if (bits_empty(layers[k])) return std::nullopt;
  }
  if (bits_empty(layers[0])) return std::nullopt;

  // Deterministic backtrack: smallest node at the end, smallest predecessor
  // at each earlier layer.
  std::vector<int> nodes(span + 1);
  nodes[span] = min_set_bit(layers[span]);
  for (std::uint64_t k = span; k > 0; --k) {
    int pick = -1;
    for (int u : core_.in(nodes[k])) {
      if (!test_bit(layers[k - 1], static_cast<std::size_t>(u))) continue;
      pick = u;
      break;
    }
    if (pick < 0) return std::nullopt;  // cannot happen for propagated layers
    nodes[k - 1] = pick;
  }

  // Close both ends by walking into cycles of the core.
  auto walk_cycle = [&](int start, bool forward) {
    std::vector<int> walk{start};
    std::unordered_map<int, std::size_t> first_at{{start, 0}};
    for (;;) {
      const auto& adj = forward ? core_.out(walk.back()) : core_.in(walk.back());
      int next = adj.front();
      auto it = first_at.find(next);
      if (it != first_at.end())
        return std::make_pair(std::move(walk), it->second);
      first_at.emplace(next, walk.size());
      walk.push_back(next);
    }
  };

  auto [left_walk, lj] = walk_cycle(nodes[0], /*forward=*/false);
  auto [right_walk, rj] = walk_cycle(nodes[span], /*forward=*/true);
  const std::size_t lp = left_walk.size() - lj;   // left cycle length
  const std::size_t rp = right_walk.size() - rj;  // right cycle length

  // left_walk[k] covers positions (p0-k, p0-k+1); cells repeat with period lp
  // from walk index lj on. right_walk[k] covers (p_last+k, p_last+1+k).
  EventuallyPeriodicProfile profile;
  profile.anchor = p0 - static_cast<std::int64_t>(lj);
  for (std::size_t k = lj; k >= 1; --k)
    profile.mid.push_back(core_.head(left_walk[k]));
  for (std::uint64_t k = 0; k <= span; ++k)
    profile.mid.push_back(core_.head(nodes[k]));
  profile.mid.push_back(core_.tail(nodes[span]));
  for (std::size_t k = 1; k <= rj; ++k)
    profile.mid.push_back(core_.tail(right_walk[k]));

  // left word covers positions anchor-lp .. anchor-1, walk indices
  // lj+lp .. lj+1; index lj+lp wraps to the repeated node left_walk[lj].
  for (std::size_t t = 0; t < lp; ++t) {
    std::size_t k = lj + lp - t;
    if (k >= left_walk.size()) k = lj;
    profile.left.push_back(core_.head(left_walk[k]));
  }
  for (std::size_t t = 0; t < rp; ++t) {
    std::size_t k = rj + 1 + t;
    if (k >= right_walk.size()) k = rj;
    profile.right.push_back(core_.tail(right_walk[k]));
  }

  profile.left = primitive_period(profile.left);
  profile.right = primitive_period(profile.right);

  if (!verify_profile(profile))
    throw InternalCheckError("constrained equilibrium failed verification");
  for (const auto& [pos, id] : constraints)
    if (profile.value(pos) != id)
      throw InternalCheckError("constrained equilibrium misses a constraint");
  return profile;
}

bool Analysis::verify_profile(const EventuallyPeriodicProfile& profile) const {
  return verify_periodic(profile, [this](StrategyId x, StrategyId y,
                                         StrategyId z) {
    return relation_.contains(x, y, z);
  });
}

bool Analysis::verify_window(const ProfileWindow& window,
                             WindowMode mode) const {
  const auto& cells = window.cells;
  if (cells.empty()) throw InputError("window must have at least one cell");
  for (std::size_t i = 1; i + 1 < cells.size(); ++i)
    if (!relation_.contains(cells[i - 1], cells[i], cells[i + 1])) return false;
  if (mode == WindowMode::Interior) return true;
  if (cells.size() == 1) {
    const auto& r = core_.realizable();
    return std::binary_search(r.begin(), r.end(), cells[0]);
  }
  return core_.alive(cells[0], cells[1]) &&
         core_.alive(cells[cells.size() - 2], cells.back());
}

std::string profile_to_text(const FiniteCellularGame& game,
                            const EventuallyPeriodicProfile& profile) {
  auto join = [&game](const std::vector<StrategyId>& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out += ',';
      out += game.label(w[i]);
    }
    return out;
  };
  return "profile v1; anchor: " + std::to_string(profile.anchor) +
         "; left: " + join(profile.left) + "; mid: " + join(profile.mid) +
         "; right: " + join(profile.right);
}

std::string window_to_text(const FiniteCellularGame& game,
                           const ProfileWindow& window) {
  std::string out = "window v1; start: " + std::to_string(window.start) +
                    "; cells: ";
  for (std::size_t i = 0; i < window.cells.size(); ++i) {
    if (i) out += ',';
    out += game.label(window.cells[i]);
  }
  return out;
}

std::vector<GameSpec> flatten_spec(const GameSpec& spec) {
  std::vector<GameSpec> out;
  if (spec.kind == GameSpec::Kind::Prod) {
    for (const GameSpec& part : spec.parts)
      for (GameSpec& sub : flatten_spec(part)) out.push_back(std::move(sub));
  } else {
    out.push_back(spec);
  }
  return out;
}

bool components_have_equilibrium(const std::vector<Analysis>& components) {
  for (const Analysis& a : components)
    if (!a.has_equilibrium()) return false;
  return true;
}

std::uint64_t components_realizable_count(
    const std::vector<Analysis>& components) {
  std::uint64_t total = 1;
  for (const Analysis& a : components)
    total *= static_cast<std::uint64_t>(a.realizable().size());
  return total;
}

bool components_interchangeable(const std::vector<Analysis>& components,
                                std::int64_t a, std::int64_t b) {
  if (!components_have_equilibrium(components)) return true;  // vacuous
  for (const Analysis& c : components)
    if (!c.interchangeable(a, b)) return false;
  return true;
}

namespace {

std::vector<Analysis> build_components(const GameSpec& spec,
                                       const SpecLimits& limits) {
  std::vector<Analysis> out;
  for (const GameSpec& part : flatten_spec(spec))
    out.emplace_back(games::build_game(part, limits.build), limits.engine);
  return out;
}

}  // namespace

bool spec_has_equilibrium(const GameSpec& spec, const SpecLimits& limits) {
  return components_have_equilibrium(build_components(spec, limits));
}

std::uint64_t spec_realizable_count(const GameSpec& spec,
                                    const SpecLimits& limits) {
  auto components = build_components(spec, limits);
  if (!components_have_equilibrium(components)) return 0;
  return components_realizable_count(components);
}

bool spec_interchangeable(const GameSpec& spec, std::int64_t a, std::int64_t b,
                          const SpecLimits& limits) {
  return components_interchangeable(build_components(spec, limits), a, b);
}

}  // namespace cellgames::engine
