#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cellgames/matrix_strategy.hpp"

namespace cellgames::games {

using StrategyId = int;

/// A finite cellular game: canonical strategy labels plus an integer pay-off
/// on triples (left neighbor, self, right neighbor) of strategy ids.
class FiniteCellularGame {
 public:
  using PayoffFn = std::function<long long(StrategyId, StrategyId, StrategyId)>;

  FiniteCellularGame(std::vector<std::string> labels, PayoffFn payoff);

  int strategy_count() const { return static_cast<int>(labels_->size()); }
  const std::string& label(StrategyId s) const { return (*labels_)[s]; }
  const std::vector<std::string>& labels() const { return *labels_; }

  long long payoff(StrategyId x, StrategyId y, StrategyId z) const {
    return payoff_(x, y, z);
  }

  StrategyId parse_strategy(std::string_view label) const;  // throws InputError

 private:
  std::shared_ptr<const std::vector<std::string>> labels_;
  PayoffFn payoff_;
};

/// Symbolic descriptor of the built-in game families.
struct GameSpec {
  enum class Kind { G0, G1, G2, GN, GInf, Prod, File };

  Kind kind = Kind::G0;
  std::int64_t n = 0;           // GN parameter, >= 3
  std::vector<GameSpec> parts;  // Prod components, nonempty
  std::string path;             // File source

  static GameSpec g0() { return {Kind::G0, 0, {}, {}}; }
  static GameSpec g1() { return {Kind::G1, 0, {}, {}}; }
  static GameSpec g2() { return {Kind::G2, 0, {}, {}}; }
  static GameSpec gn(std::int64_t n);
  static GameSpec ginf() { return {Kind::GInf, 0, {}, {}}; }
  static GameSpec prod(std::vector<GameSpec> parts);
  static GameSpec file(std::string path);

  /// The family whose non-interchangeable distance is d: G0/G1/G2 for
  /// d = 0, 1, 2 and the matrix game for d >= 3.
  static GameSpec for_distance(std::uint64_t d);

  std::string to_string() const;
  static GameSpec parse(std::string_view text);  // throws InputError
};

struct BuildLimits {
  // Cap on the number of enumerated strategies of a single built game.
  std::uint64_t max_strategies = 65536;
};

/// Materializes a spec into a finite game with canonical labels.
FiniteCellularGame build_game(const GameSpec& spec, const BuildLimits& limits = {});

/// Reads the `cellgame-table v1` format.
FiniteCellularGame load_game_table(std::istream& in);
FiniteCellularGame load_game_table(const std::string& path);

/// Strategy of the pennies game: a residue mod 3 or an ordered pair of coin
/// sides (first component faces the left neighbor).
struct G2Strategy {
  bool pennies = false;
  int residue = 0;  // 0..2 when !pennies
  bool y1_head = true;
  bool y2_head = true;

  static G2Strategy from_id(StrategyId id);
  StrategyId id() const;
};

// Pay-off components of the pennies game, exposed for decomposition tests.
long long g2_u1(const G2Strategy& x, const G2Strategy& y, const G2Strategy& z);
long long g2_u2(const G2Strategy& x, const G2Strategy& y);
long long g2_u3(const G2Strategy& y, const G2Strategy& z);

/// Id mapping of matrix strategies inside build_game(GN).
std::uint64_t gn_strategy_count(int n);
MatrixStrategy gn_strategy_from_id(int n, StrategyId id);
StrategyId gn_strategy_id(const MatrixStrategy& s);

}  // namespace cellgames::games
