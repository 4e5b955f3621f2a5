#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cellgames/game.hpp"
#include "cellgames/periodic.hpp"

namespace cellgames::engine {

using games::FiniteCellularGame;
using games::GameSpec;
using games::StrategyId;

struct EngineLimits {
  int max_strategies = 4096;            // monolithic relation construction
  std::uint64_t max_steps = 1 << 16;    // frontier propagation budget
  std::uint64_t max_expansions = 1 << 22;  // window enumeration budget
};

/// Best-response relation T: (x,y,z) is in T when y maximizes the middle
/// player's pay-off against neighbors x and z. Stores the per-(x,z) maximum,
/// so membership is one pay-off evaluation.
class TransferRelation {
 public:
  static TransferRelation build(FiniteCellularGame game,
                                const EngineLimits& limits = {});

  const FiniteCellularGame& game() const { return *game_; }
  int strategy_count() const { return s_; }

  bool contains(StrategyId x, StrategyId y, StrategyId z) const {
    return game_->payoff(x, y, z) == max_[static_cast<std::size_t>(x) * s_ + z];
  }
  std::vector<StrategyId> successors(StrategyId x, StrategyId y) const;

 private:
  std::shared_ptr<const FiniteCellularGame> game_;
  int s_ = 0;
  std::vector<long long> max_;  // max over y of payoff(x, y, z), indexed x*s+z
};

/// Pairs (x,y) lying on some bi-infinite T-walk, with the edges
/// (x,y) -> (y,z) for (x,y,z) in T restricted to those pairs. Node ids are
/// x * strategy_count + y.
class CoreGraph {
 public:
  static CoreGraph build(const TransferRelation& relation);

  int strategy_count() const { return s_; }
  bool alive(StrategyId x, StrategyId y) const {
    return alive_[static_cast<std::size_t>(x) * s_ + y] != 0;
  }
  bool alive_node(int node) const { return alive_[node] != 0; }
  std::size_t node_count() const { return nodes_; }
  StrategyId head(int node) const { return node / s_; }
  StrategyId tail(int node) const { return node % s_; }

  /// Out-neighbors within the core.
  const std::vector<int>& out(int node) const { return out_[node]; }
  const std::vector<int>& in(int node) const { return in_[node]; }

  /// Strategies played at some position of some equilibrium: heads of the
  /// core, sorted by id.
  const std::vector<StrategyId>& realizable() const { return realizable_; }

 private:
  int s_ = 0;
  std::size_t nodes_ = 0;
  std::vector<std::uint8_t> alive_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  std::vector<StrategyId> realizable_;
};

struct ProfileWindow {
  std::int64_t start = 0;
  std::vector<StrategyId> cells;
};

using EventuallyPeriodicProfile = PeriodicSequence<StrategyId>;

enum class WindowMode { Interior, Extendable };

std::string profile_to_text(const FiniteCellularGame& game,
                            const EventuallyPeriodicProfile& profile);
std::string window_to_text(const FiniteCellularGame& game,
                           const ProfileWindow& window);

/// One game's equilibrium analysis: relation, core, and the operations on
/// top of them. Build once, query many times.
class Analysis {
 public:
  explicit Analysis(FiniteCellularGame game, const EngineLimits& limits = {});

  const FiniteCellularGame& game() const { return relation_.game(); }
  const TransferRelation& relation() const { return relation_; }
  const CoreGraph& core() const { return core_; }

  bool has_equilibrium() const { return !core_.realizable().empty(); }
  const std::vector<StrategyId>& realizable() const {
    return core_.realizable();
  }

  /// Exact-length reachability between heads inside the core.
  bool path_exists(StrategyId s, StrategyId t, std::uint64_t d) const;

  bool interchangeable(std::int64_t a, std::int64_t b) const;

  std::vector<ProfileWindow> enumerate_ne_windows(int length) const;

  std::optional<EventuallyPeriodicProfile> constrained_equilibrium(
      std::vector<std::pair<std::int64_t, StrategyId>> constraints) const;

  bool verify_profile(const EventuallyPeriodicProfile& profile) const;
  bool verify_window(const ProfileWindow& window, WindowMode mode) const;

 private:
  std::vector<StrategyId> start_nodes(StrategyId head) const;

  TransferRelation relation_;
  CoreGraph core_;
  EngineLimits limits_;
};

/// Componentwise layer over GameSpec: products are analyzed per component
/// (the relation of a product is the componentwise conjunction), other specs
/// are built monolithically.
struct SpecLimits {
  games::BuildLimits build;
  EngineLimits engine;
};

bool spec_has_equilibrium(const GameSpec& spec, const SpecLimits& limits = {});
std::uint64_t spec_realizable_count(const GameSpec& spec,
                                    const SpecLimits& limits = {});
bool spec_interchangeable(const GameSpec& spec, std::int64_t a, std::int64_t b,
                          const SpecLimits& limits = {});

/// Product components in order (nested products flattened); a non-product
/// spec is its own single component.
std::vector<GameSpec> flatten_spec(const GameSpec& spec);

/// has_equilibrium / realizable-count / interchangeable over prebuilt
/// component analyses, combined by the product laws.
bool components_have_equilibrium(const std::vector<Analysis>& components);
std::uint64_t components_realizable_count(
    const std::vector<Analysis>& components);
bool components_interchangeable(const std::vector<Analysis>& components,
                                std::int64_t a, std::int64_t b);

}  // namespace cellgames::engine
