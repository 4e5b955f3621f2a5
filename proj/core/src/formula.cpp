#include "cellgames/formula.hpp"

#include <cassert>
#include <charconv>
#include <vector>

namespace cellgames::logic {

FormulaPtr Formula::bottom() {
  return FormulaPtr(new Formula(FormulaKind::Bottom, 0, 0, nullptr, nullptr));
}

FormulaPtr Formula::atom(std::int64_t a, std::int64_t b) {
  return FormulaPtr(new Formula(FormulaKind::Atom, a, b, nullptr, nullptr));
}

FormulaPtr Formula::negation(FormulaPtr operand) {
  return FormulaPtr(
      new Formula(FormulaKind::Not, 0, 0, std::move(operand), nullptr));
}

FormulaPtr Formula::conjunction(FormulaPtr lhs, FormulaPtr rhs) {
  return FormulaPtr(
      new Formula(FormulaKind::And, 0, 0, std::move(lhs), std::move(rhs)));
}

FormulaPtr Formula::disjunction(FormulaPtr lhs, FormulaPtr rhs) {
  return FormulaPtr(
      new Formula(FormulaKind::Or, 0, 0, std::move(lhs), std::move(rhs)));
}

FormulaPtr Formula::implication(FormulaPtr lhs, FormulaPtr rhs) {
  return FormulaPtr(
      new Formula(FormulaKind::Implies, 0, 0, std::move(lhs), std::move(rhs)));
}

std::int64_t Formula::atom_a() const {
  assert(kind_ == FormulaKind::Atom);
  return a_;
}

std::int64_t Formula::atom_b() const {
  assert(kind_ == FormulaKind::Atom);
  return b_;
}

const FormulaPtr& Formula::lhs() const { return lhs_; }
const FormulaPtr& Formula::rhs() const { return rhs_; }

bool equal(const Formula& x, const Formula& y) {
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case FormulaKind::Bottom:
      return true;
    case FormulaKind::Atom:
      return x.atom_a() == y.atom_a() && x.atom_b() == y.atom_b();
    case FormulaKind::Not:
      return equal(*x.lhs(), *y.lhs());
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      return equal(*x.lhs(), *y.lhs()) && equal(*x.rhs(), *y.rhs());
  }
  return false;
}

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::runtime_error(msg + " at position " + std::to_string(pos)),
      position(pos) {}

namespace {

enum class TokKind {
  Int,
  AtomOp,  // ||
  Arrow,   // ->
  Bang,
  Amp,
  Pipe,
  LParen,
  RParen,
  False,
  End,
};

struct Token {
  TokKind kind;
  std::int64_t value = 0;
  std::size_t pos = 0;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto isdig = [](char c) { return c >= '0' && c <= '9'; };
  while (i < n) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (c == '(') {
      out.push_back({TokKind::LParen, 0, start});
      ++i;
    } else if (c == ')') {
      out.push_back({TokKind::RParen, 0, start});
      ++i;
    } else if (c == '!') {
      out.push_back({TokKind::Bang, 0, start});
      ++i;
    } else if (c == '&') {
      out.push_back({TokKind::Amp, 0, start});
      ++i;
    } else if (c == '|') {
      // maximal munch: `||` beats `|`
      if (i + 1 < n && text[i + 1] == '|') {
        out.push_back({TokKind::AtomOp, 0, start});
        i += 2;
      } else {
        out.push_back({TokKind::Pipe, 0, start});
        ++i;
      }
    } else if (c == '-') {
      if (i + 1 < n && text[i + 1] == '>') {
        out.push_back({TokKind::Arrow, 0, start});
        i += 2;
      } else if (i + 1 < n && isdig(text[i + 1])) {
        std::size_t j = i + 1;
        while (j < n && isdig(text[j])) ++j;
        std::int64_t v = 0;
        auto res = std::from_chars(text.data() + i, text.data() + j, v);
        if (res.ec != std::errc{} || res.ptr != text.data() + j)
          throw ParseError("integer out of 64-bit range", start);
        out.push_back({TokKind::Int, v, start});
        i = j;
      } else {
        throw ParseError("stray '-'", start);
      }
    } else if (isdig(c)) {
      std::size_t j = i;
      while (j < n && isdig(text[j])) ++j;
      std::int64_t v = 0;
      auto res = std::from_chars(text.data() + i, text.data() + j, v);
      if (res.ec != std::errc{} || res.ptr != text.data() + j)
        throw ParseError("integer out of 64-bit range", start);
      out.push_back({TokKind::Int, v, start});
      i = j;
    } else if (text.substr(i, 5) == "false") {
      out.push_back({TokKind::False, 0, start});
      i += 5;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }
  out.push_back({TokKind::End, 0, n});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  FormulaPtr parse() {
    FormulaPtr f = formula();
    if (peek().kind != TokKind::End)
      throw ParseError("trailing input", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  // formula := or ( "->" formula )?   right-associative
  FormulaPtr formula() {
    FormulaPtr l = or_expr();
    if (peek().kind == TokKind::Arrow) {
      take();
      return Formula::implication(std::move(l), formula());
    }
    return l;
  }

  FormulaPtr or_expr() {
    FormulaPtr l = and_expr();
    while (peek().kind == TokKind::Pipe) {
      take();
      l = Formula::disjunction(std::move(l), and_expr());
    }
    return l;
  }

  FormulaPtr and_expr() {
    FormulaPtr l = unary();
    while (peek().kind == TokKind::Amp) {
      take();
      l = Formula::conjunction(std::move(l), unary());
    }
    return l;
  }

  FormulaPtr unary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokKind::Bang:
        take();
        return Formula::negation(unary());
      case TokKind::False:
        take();
        return Formula::bottom();
      case TokKind::LParen: {
        take();
        FormulaPtr f = formula();
        if (peek().kind != TokKind::RParen)
          throw ParseError("expected ')'", peek().pos);
        take();
        return f;
      }
      case TokKind::Int: {
        Token a = take();
        if (peek().kind != TokKind::AtomOp)
          throw ParseError("expected '||' after integer", peek().pos);
        take();
        if (peek().kind != TokKind::Int)
          throw ParseError("expected integer after '||'", peek().pos);
        Token b = take();
        return Formula::atom(a.value, b.value);
      }
      default:
        throw ParseError("expected formula", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Precedence levels used when printing: implies 0, or 1, and 2, unary 3.
int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::Implies:
      return 0;
    case FormulaKind::Or:
      return 1;
    case FormulaKind::And:
      return 2;
    default:
      return 3;
  }
}

void print_rec(const Formula& f, int min_prec, std::string& out) {
  int prec = precedence(f.kind());
  bool paren = prec < min_prec;
  if (paren) out += '(';
  switch (f.kind()) {
    case FormulaKind::Bottom:
      out += "false";
      break;
    case FormulaKind::Atom:
      out += std::to_string(f.atom_a());
      out += "||";
      out += std::to_string(f.atom_b());
      break;
    case FormulaKind::Not: {
      out += '!';
      const Formula& c = *f.lhs();
      if (c.kind() == FormulaKind::Bottom || c.kind() == FormulaKind::Not) {
        print_rec(c, 3, out);
      } else {
        out += '(';
        print_rec(c, 0, out);
        out += ')';
      }
      break;
    }
    case FormulaKind::And:
      print_rec(*f.lhs(), 2, out);
      out += " & ";
      print_rec(*f.rhs(), 3, out);
      break;
    case FormulaKind::Or:
      print_rec(*f.lhs(), 1, out);
      out += " | ";
      print_rec(*f.rhs(), 2, out);
      break;
    case FormulaKind::Implies:
      print_rec(*f.lhs(), 1, out);
      out += " -> ";
      print_rec(*f.rhs(), 0, out);
      break;
  }
  if (paren) out += ')';
}

void collect_distances(const Formula& f, std::set<std::uint64_t>& out) {
  switch (f.kind()) {
    case FormulaKind::Bottom:
      return;
    case FormulaKind::Atom:
      if (f.atom_a() != f.atom_b())
        out.insert(atom_distance(f.atom_a(), f.atom_b()));
      return;
    case FormulaKind::Not:
      collect_distances(*f.lhs(), out);
      return;
    default:
      collect_distances(*f.lhs(), out);
      collect_distances(*f.rhs(), out);
      return;
  }
}

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
  return Parser(tokenize(text)).parse();
}

std::string print_formula(const Formula& f) {
  std::string out;
  print_rec(f, 0, out);
  return out;
}

std::string print_formula(const FormulaPtr& f) { return print_formula(*f); }

std::uint64_t atom_distance(std::int64_t a, std::int64_t b) {
  std::uint64_t ua = static_cast<std::uint64_t>(a);
  std::uint64_t ub = static_cast<std::uint64_t>(b);
  return a > b ? ua - ub : ub - ua;
}

std::set<std::uint64_t> distances(const Formula& f) {
  std::set<std::uint64_t> out;
  collect_distances(f, out);
  return out;
}

std::set<std::uint64_t> distances(const FormulaPtr& f) {
  return distances(*f);
}

}  // namespace cellgames::logic
