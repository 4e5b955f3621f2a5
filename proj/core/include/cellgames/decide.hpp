#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "cellgames/formula.hpp"
#include "cellgames/game.hpp"

namespace cellgames::logic {

/// Atom valuation realized by a concrete game: AllTrue by the one-strategy
/// game, Distance(D) by the product of the games whose blocked distance is
/// in D (the two-strategy trivial game when D is empty).
class Assignment {
 public:
  static Assignment all_true();
  static Assignment distance(std::set<std::uint64_t> blocked);

  bool is_all_true() const { return all_true_; }
  const std::set<std::uint64_t>& blocked() const { return blocked_; }

  bool atom_true(std::int64_t a, std::int64_t b) const;

  std::string to_string() const;  // "ALL" or "D={1,3}"

 private:
  bool all_true_ = false;
  std::set<std::uint64_t> blocked_;
};

bool eval_formula(const Formula& f, const Assignment& assignment);
bool eval_formula(const FormulaPtr& f, const Assignment& assignment);

struct Verdict {
  bool valid = true;
  std::optional<games::GameSpec> countermodel;
  std::optional<Assignment> assignment;
};

struct DecideLimits {
  // Cap on |distances(f)|; the procedure enumerates 2^k subsets.
  std::size_t max_distances = 20;
};

/// VALID iff the formula holds under AllTrue and under Distance(D) for every
/// subset D of its atom distances. On INVALID the first falsifying
/// assignment is reported (AllTrue first, then subsets by size, then
/// lexicographically) together with the game spec realizing it.
Verdict decide(const Formula& f, const DecideLimits& limits = {});
Verdict decide(const FormulaPtr& f, const DecideLimits& limits = {});

/// The concrete game realizing an assignment: GINF, G0, a single distance
/// game, or their product.
games::GameSpec countermodel_spec(const Assignment& assignment);

}  // namespace cellgames::logic
