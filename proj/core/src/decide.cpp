#include "cellgames/decide.hpp"

#include <vector>

#include "cellgames/errors.hpp"

namespace cellgames::logic {

Assignment Assignment::all_true() {
  Assignment a;
  a.all_true_ = true;
  return a;
}

Assignment Assignment::distance(std::set<std::uint64_t> blocked) {
  Assignment a;
  a.all_true_ = false;
  a.blocked_ = std::move(blocked);
  return a;
}

bool Assignment::atom_true(std::int64_t a, std::int64_t b) const {
  if (all_true_) return true;
  if (a == b) return false;
  return blocked_.count(atom_distance(a, b)) == 0;
}

std::string Assignment::to_string() const {
  if (all_true_) return "ALL";
  std::string out = "D={";
  bool first = true;
  for (std::uint64_t d : blocked_) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(d);
  }
  out += '}';
  return out;
}

bool eval_formula(const Formula& f, const Assignment& assignment) {
  switch (f.kind()) {
    case FormulaKind::Bottom:
      return false;
    case FormulaKind::Atom:
      return assignment.atom_true(f.atom_a(), f.atom_b());
    case FormulaKind::Not:
      return !eval_formula(*f.lhs(), assignment);
    case FormulaKind::And:
      return eval_formula(*f.lhs(), assignment) &&
             eval_formula(*f.rhs(), assignment);
    case FormulaKind::Or:
      return eval_formula(*f.lhs(), assignment) ||
             eval_formula(*f.rhs(), assignment);
    case FormulaKind::Implies:
      return !eval_formula(*f.lhs(), assignment) ||
             eval_formula(*f.rhs(), assignment);
  }
  return false;
}

bool eval_formula(const FormulaPtr& f, const Assignment& assignment) {
  return eval_formula(*f, assignment);
}

games::GameSpec countermodel_spec(const Assignment& assignment) {
  if (assignment.is_all_true()) return games::GameSpec::ginf();
  const auto& blocked = assignment.blocked();
  if (blocked.empty()) return games::GameSpec::g0();
  std::vector<games::GameSpec> parts;
  for (std::uint64_t d : blocked)
    parts.push_back(games::GameSpec::for_distance(d));
  if (parts.size() == 1) return parts.front();
  return games::GameSpec::prod(std::move(parts));
}

Verdict decide(const Formula& f, const DecideLimits& limits) {
  const std::set<std::uint64_t> dist_set = distances(f);
  if (dist_set.size() > limits.max_distances)
    throw ResourceLimitError(
        "formula has " + std::to_string(dist_set.size()) +
        " distinct distances, above the cap of " +
        std::to_string(limits.max_distances));

  auto falsified = [&f](const Assignment& a) -> std::optional<Verdict> {
    if (eval_formula(f, a)) return std::nullopt;
    Verdict v;
    v.valid = false;
    v.countermodel = countermodel_spec(a);
    v.assignment = a;
    return v;
  };

  if (auto v = falsified(Assignment::all_true())) return *v;

  const std::vector<std::uint64_t> dists(dist_set.begin(), dist_set.end());
  const std::size_t k = dists.size();
  auto next_combination = [k](std::vector<std::size_t>& idx) {
    const std::size_t size = idx.size();
    for (std::size_t i = size; i-- > 0;) {
      if (idx[i] != i + k - size) {
        ++idx[i];
        for (std::size_t j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  // Subsets by size, then lexicographically on the sorted distance list.
  for (std::size_t size = 0; size <= k; ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    do {
      std::set<std::uint64_t> subset;
      for (std::size_t i : idx) subset.insert(dists[i]);
      if (auto v = falsified(Assignment::distance(std::move(subset)))) return *v;
    } while (next_combination(idx));
  }
  return Verdict{};
}

Verdict decide(const FormulaPtr& f, const DecideLimits& limits) {
  return decide(*f, limits);
}

}  // namespace cellgames::logic
