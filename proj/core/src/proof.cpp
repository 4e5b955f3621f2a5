#include "cellgames/proof.hpp"

#include <charconv>
#include <istream>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "cellgames/errors.hpp"

namespace cellgames::logic {

namespace {

void collect_atoms(const Formula& f,
                   std::map<std::pair<std::int64_t, std::int64_t>, std::size_t>&
                       atoms) {
  switch (f.kind()) {
    case FormulaKind::Bottom:
      return;
    case FormulaKind::Atom:
      atoms.try_emplace({f.atom_a(), f.atom_b()}, atoms.size());
      return;
    case FormulaKind::Not:
      collect_atoms(*f.lhs(), atoms);
      return;
    default:
      collect_atoms(*f.lhs(), atoms);
      collect_atoms(*f.rhs(), atoms);
      return;
  }
}

bool eval_rows(const Formula& f,
               const std::map<std::pair<std::int64_t, std::int64_t>,
                              std::size_t>& atoms,
               std::uint64_t mask) {
  switch (f.kind()) {
    case FormulaKind::Bottom:
      return false;
    case FormulaKind::Atom:
      return (mask >> atoms.at({f.atom_a(), f.atom_b()})) & 1;
    case FormulaKind::Not:
      return !eval_rows(*f.lhs(), atoms, mask);
    case FormulaKind::And:
      return eval_rows(*f.lhs(), atoms, mask) &&
             eval_rows(*f.rhs(), atoms, mask);
    case FormulaKind::Or:
      return eval_rows(*f.lhs(), atoms, mask) ||
             eval_rows(*f.rhs(), atoms, mask);
    case FormulaKind::Implies:
      return !eval_rows(*f.lhs(), atoms, mask) ||
             eval_rows(*f.rhs(), atoms, mask);
  }
  return false;
}

std::int64_t checked_add(std::int64_t a, std::int64_t c, std::size_t line) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, c, &out))
    throw ProofError(line, "homogeneity shift overflows 64-bit range");
  return out;
}

FormulaPtr atom_implies(std::int64_t a, std::int64_t b, std::int64_t c,
                        std::int64_t d) {
  return Formula::implication(Formula::atom(a, b), Formula::atom(c, d));
}

}  // namespace

bool is_tautology(const Formula& f, const ProofLimits& limits) {
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> atoms;
  collect_atoms(f, atoms);
  if (atoms.size() > limits.max_taut_atoms)
    throw ResourceLimitError("tautology check over " +
                             std::to_string(atoms.size()) +
                             " atoms, above the cap of " +
                             std::to_string(limits.max_taut_atoms));
  const std::uint64_t rows = std::uint64_t(1) << atoms.size();
  for (std::uint64_t mask = 0; mask < rows; ++mask)
    if (!eval_rows(f, atoms, mask)) return false;
  return true;
}

FormulaPtr check_proof(const ProofScript& script, const ProofLimits& limits) {
  if (script.empty()) throw InputError("proof script is empty");
  std::map<std::size_t, const ProofLine*> by_index;
  std::size_t prev_index = 0;
  for (const ProofLine& line : script) {
    if (line.index == 0)
      throw ProofError(line.index, "indices must be positive");
    if (line.index <= prev_index)
      throw ProofError(line.index, "indices must be strictly increasing");
    prev_index = line.index;

    if (std::holds_alternative<JustTaut>(line.justification)) {
      bool taut;
      try {
        taut = is_tautology(*line.formula, limits);
      } catch (const ResourceLimitError& e) {
        throw ProofError(line.index, e.what());
      }
      if (!taut) throw ProofError(line.index, "formula is not a tautology");
    } else if (const auto* r = std::get_if<JustRefl>(&line.justification)) {
      FormulaPtr expected = atom_implies(r->a, r->a, r->a, r->b);
      if (!equal(line.formula, expected))
        throw ProofError(line.index, "reflexivity scheme mismatch (expected " +
                                         print_formula(expected) + ")");
    } else if (const auto* h = std::get_if<JustHom>(&line.justification)) {
      FormulaPtr expected =
          atom_implies(h->a, h->b, checked_add(h->a, h->c, line.index),
                       checked_add(h->b, h->c, line.index));
      if (!equal(line.formula, expected))
        throw ProofError(line.index, "homogeneity scheme mismatch (expected " +
                                         print_formula(expected) + ")");
    } else if (const auto* s = std::get_if<JustSym>(&line.justification)) {
      FormulaPtr expected = atom_implies(s->a, s->b, s->b, s->a);
      if (!equal(line.formula, expected))
        throw ProofError(line.index, "symmetry scheme mismatch (expected " +
                                         print_formula(expected) + ")");
    } else {
      const auto& mp = std::get<JustMP>(line.justification);
      auto it_i = by_index.find(mp.i);
      auto it_j = by_index.find(mp.j);
      if (it_i == by_index.end() || it_j == by_index.end())
        throw ProofError(line.index,
                         "modus ponens references a missing earlier line");
      const Formula& major = *it_j->second->formula;
      if (major.kind() != FormulaKind::Implies ||
          !equal(*major.lhs(), *it_i->second->formula) ||
          !equal(*major.rhs(), *line.formula))
        throw ProofError(line.index, "modus ponens mismatch");
    }
    by_index.emplace(line.index, &line);
  }
  return script.back().formula;
}

ProofScript abs_value_script(std::int64_t a, std::int64_t b, std::int64_t c,
                             std::int64_t d) {
  if (atom_distance(a, b) != atom_distance(c, d))
    throw InputError("abs_value_script requires |a-b| = |c-d|");
  const bool matched = (a >= b) == (c >= d) || a == b;
  if (matched) {
    // c = a + k and d = b + k for k = c - a
    std::int64_t k = 0;
    if (__builtin_sub_overflow(c, a, &k))
      throw ResourceLimitError("homogeneity shift overflows 64-bit range");
    return {{1, atom_implies(a, b, c, d), JustHom{a, b, k}}};
  }
  // Orientation flipped: go through b||a, then shift by k = c - b = d - a.
  std::int64_t k = 0;
  if (__builtin_sub_overflow(c, b, &k))
    throw ResourceLimitError("homogeneity shift overflows 64-bit range");
  FormulaPtr x_ab = Formula::atom(a, b);
  FormulaPtr x_ba = Formula::atom(b, a);
  FormulaPtr x_cd = Formula::atom(c, d);
  FormulaPtr sym = Formula::implication(x_ab, x_ba);
  FormulaPtr hom = Formula::implication(x_ba, x_cd);
  FormulaPtr goal = Formula::implication(x_ab, x_cd);
  FormulaPtr chain =
      Formula::implication(sym, Formula::implication(hom, goal));
  return {
      {1, sym, JustSym{a, b}},
      {2, hom, JustHom{b, a, k}},
      {3, chain, JustTaut{}},
      {4, Formula::implication(hom, goal), JustMP{1, 3}},
      {5, goal, JustMP{2, 4}},
  };
}

namespace {

std::string strip_comment_and_trim(const std::string& line) {
  std::string s = line;
  auto hash = s.find('#');
  if (hash != std::string::npos) s.resize(hash);
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int_token(std::stringstream& ss, std::size_t lineno) {
  std::string tok;
  if (!(ss >> tok))
    throw InputError("line " + std::to_string(lineno) +
                     ": missing integer in justification");
  std::int64_t v = 0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw InputError("line " + std::to_string(lineno) +
                     ": bad integer '" + tok + "'");
  return v;
}

}  // namespace

ProofScript parse_proof_script(std::istream& in) {
  ProofScript script;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip_comment_and_trim(raw);
    if (line.empty()) continue;

    auto dot = line.find('.');
    if (dot == std::string::npos)
      throw InputError("line " + std::to_string(lineno) +
                       ": missing '.' after index");
    std::size_t index = 0;
    {
      std::string head = line.substr(0, dot);
      auto res =
          std::from_chars(head.data(), head.data() + head.size(), index);
      if (res.ec != std::errc{} || res.ptr != head.data() + head.size())
        throw InputError("line " + std::to_string(lineno) + ": bad index '" +
                         head + "'");
    }
    auto semi = line.find(';', dot + 1);
    if (semi == std::string::npos)
      throw InputError("line " + std::to_string(lineno) +
                       ": missing ';' before justification");
    FormulaPtr formula;
    try {
      formula = parse_formula(line.substr(dot + 1, semi - dot - 1));
    } catch (const ParseError& e) {
      throw InputError("line " + std::to_string(lineno) + ": " + e.what());
    }

    std::stringstream ss(line.substr(semi + 1));
    std::string kind;
    if (!(ss >> kind))
      throw InputError("line " + std::to_string(lineno) +
                       ": missing justification");
    Justification just;
    if (kind == "TAUT") {
      just = JustTaut{};
    } else if (kind == "REFL") {
      std::int64_t a = parse_int_token(ss, lineno);
      std::int64_t b = parse_int_token(ss, lineno);
      just = JustRefl{a, b};
    } else if (kind == "HOM") {
      std::int64_t a = parse_int_token(ss, lineno);
      std::int64_t b = parse_int_token(ss, lineno);
      std::int64_t c = parse_int_token(ss, lineno);
      just = JustHom{a, b, c};
    } else if (kind == "SYM") {
      std::int64_t a = parse_int_token(ss, lineno);
      std::int64_t b = parse_int_token(ss, lineno);
      just = JustSym{a, b};
    } else if (kind == "MP") {
      std::int64_t i = parse_int_token(ss, lineno);
      std::int64_t j = parse_int_token(ss, lineno);
      if (i <= 0 || j <= 0)
        throw InputError("line " + std::to_string(lineno) +
                         ": MP references must be positive");
      just = JustMP{static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
    } else {
      throw InputError("line " + std::to_string(lineno) +
                       ": unknown justification '" + kind + "'");
    }
    std::string extra;
    if (ss >> extra)
      throw InputError("line " + std::to_string(lineno) +
                       ": trailing tokens after justification");
    script.push_back({index, std::move(formula), just});
  }
  return script;
}

ProofScript parse_proof_script(const std::string& text) {
  std::istringstream in(text);
  return parse_proof_script(in);
}

std::string print_proof_script(const ProofScript& script) {
  std::string out;
  for (const ProofLine& line : script) {
    out += std::to_string(line.index) + ". " + print_formula(line.formula) +
           " ; ";
    if (std::holds_alternative<JustTaut>(line.justification)) {
      out += "TAUT";
    } else if (const auto* r = std::get_if<JustRefl>(&line.justification)) {
      out += "REFL " + std::to_string(r->a) + " " + std::to_string(r->b);
    } else if (const auto* h = std::get_if<JustHom>(&line.justification)) {
      out += "HOM " + std::to_string(h->a) + " " + std::to_string(h->b) + " " +
             std::to_string(h->c);
    } else if (const auto* s = std::get_if<JustSym>(&line.justification)) {
      out += "SYM " + std::to_string(s->a) + " " + std::to_string(s->b);
    } else {
      const auto& mp = std::get<JustMP>(line.justification);
      out += "MP " + std::to_string(mp.i) + " " + std::to_string(mp.j);
    }
    out += '\n';
  }
  return out;
}

}  // namespace cellgames::logic
