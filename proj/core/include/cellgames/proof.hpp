#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cellgames/formula.hpp"

namespace cellgames::logic {

// Justifications of one proof line: propositional tautology, one of the
// three axiom schemes, or modus ponens over two earlier lines.
struct JustTaut {};
struct JustRefl {
  std::int64_t a, b;
};
struct JustHom {
  std::int64_t a, b, c;
};
struct JustSym {
  std::int64_t a, b;
};
struct JustMP {
  std::size_t i, j;
};

using Justification =
    std::variant<JustTaut, JustRefl, JustHom, JustSym, JustMP>;

struct ProofLine {
  std::size_t index = 0;  // declared index, strictly increasing
  FormulaPtr formula;
  Justification justification;
};

using ProofScript = std::vector<ProofLine>;

struct ProofError : std::runtime_error {
  ProofError(std::size_t line_index, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_index) + ": " + msg),
        line_index(line_index) {}
  std::size_t line_index;
};

struct ProofLimits {
  std::size_t max_taut_atoms = 20;  // truth table enumerates 2^k rows
};

/// Verifies every line and returns the conclusion (the last line's formula).
FormulaPtr check_proof(const ProofScript& script,
                       const ProofLimits& limits = {});

/// True when the formula holds under every assignment of truth values to its
/// distinct atoms (atoms compared as ordered integer pairs).
bool is_tautology(const Formula& f, const ProofLimits& limits = {});

/// Script concluding a||b -> c||d for |a-b| = |c-d|: one homogeneity
/// instance when the orientations match, otherwise symmetry first and a
/// tautological chain.
ProofScript abs_value_script(std::int64_t a, std::int64_t b, std::int64_t c,
                             std::int64_t d);

/// One line per step: `<index>. <formula> ; TAUT|REFL a b|HOM a b c|SYM a b|
/// MP i j`. `#` starts a comment.
ProofScript parse_proof_script(std::istream& in);
ProofScript parse_proof_script(const std::string& text);
std::string print_proof_script(const ProofScript& script);

}  // namespace cellgames::logic
