#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cellgames::logic {

enum class FormulaKind { Bottom, Atom, Not, And, Or, Implies };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// AST of the interchangeability language: `false`, atoms `a||b` over 64-bit
/// integers, implication, plus native !, &, | connectives evaluated
/// classically.
class Formula {
 public:
  static FormulaPtr bottom();
  static FormulaPtr atom(std::int64_t a, std::int64_t b);
  static FormulaPtr negation(FormulaPtr operand);
  static FormulaPtr conjunction(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr disjunction(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr implication(FormulaPtr lhs, FormulaPtr rhs);

  FormulaKind kind() const { return kind_; }
  std::int64_t atom_a() const;
  std::int64_t atom_b() const;
  const FormulaPtr& lhs() const;  // Not keeps its operand here
  const FormulaPtr& rhs() const;

 private:
  Formula(FormulaKind kind, std::int64_t a, std::int64_t b, FormulaPtr lhs,
          FormulaPtr rhs)
      : kind_(kind), a_(a), b_(b), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

  FormulaKind kind_;
  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
  FormulaPtr lhs_;
  FormulaPtr rhs_;
};

bool equal(const Formula& x, const Formula& y);
inline bool equal(const FormulaPtr& x, const FormulaPtr& y) {
  return equal(*x, *y);
}

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t position);
  std::size_t position;
};

/// Parses the concrete syntax (maximal-munch tokens INT, ||, ->, !, &, |,
/// parentheses, `false`; whitespace ignored).
FormulaPtr parse_formula(std::string_view text);

/// Canonical text form; parse_formula(print_formula(f)) reproduces f.
std::string print_formula(const Formula& f);
std::string print_formula(const FormulaPtr& f);

/// |a-b| computed without signed overflow.
std::uint64_t atom_distance(std::int64_t a, std::int64_t b);

/// {|a-b| : atom a||b occurs in f, a != b}.
std::set<std::uint64_t> distances(const Formula& f);
std::set<std::uint64_t> distances(const FormulaPtr& f);

}  // namespace cellgames::logic
