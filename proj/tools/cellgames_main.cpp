#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cellgames/constructions.hpp"
#include "cellgames/decide.hpp"
#include "cellgames/engine.hpp"
#include "cellgames/errors.hpp"
#include "cellgames/formula.hpp"
#include "cellgames/game.hpp"
#include "cellgames/proof.hpp"

namespace {

namespace logic = cellgames::logic;
namespace games = cellgames::games;
namespace engine = cellgames::engine;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;
constexpr int kExitInternal = 4;

struct Options {
  std::string format = "text";
  std::uint64_t seed = 0;  // reserved; every code path is deterministic
  std::optional<std::uint64_t> max_strategies;
  std::optional<std::size_t> max_atoms;

  bool lines() const { return format == "lines"; }

  games::BuildLimits build_limits() const {
    games::BuildLimits l;
    if (max_strategies) l.max_strategies = *max_strategies;
    return l;
  }
  engine::EngineLimits engine_limits() const {
    engine::EngineLimits l;
    if (max_strategies)
      l.max_strategies = static_cast<int>(
          std::min<std::uint64_t>(*max_strategies, 1u << 20));
    return l;
  }
  logic::DecideLimits decide_limits() const {
    logic::DecideLimits l;
    if (max_atoms) l.max_distances = *max_atoms;
    return l;
  }
  logic::ProofLimits proof_limits() const {
    logic::ProofLimits l;
    if (max_atoms) l.max_taut_atoms = *max_atoms;
    return l;
  }
};

int run_decide(const Options& opt, const std::string& text) {
  logic::FormulaPtr f = logic::parse_formula(text);
  logic::Verdict v = logic::decide(f, opt.decide_limits());
  if (v.valid) {
    std::cout << (opt.lines() ? "verdict=VALID" : "VALID") << '\n';
    return kExitTrue;
  }
  if (opt.lines()) {
    std::cout << "verdict=INVALID countermodel=" << v.countermodel->to_string()
              << " assignment=" << v.assignment->to_string() << '\n';
  } else {
    std::cout << "INVALID\n";
    std::cout << "countermodel: " << v.countermodel->to_string() << '\n';
    std::cout << "assignment: " << v.assignment->to_string() << '\n';
  }
  return kExitFalse;
}

int run_check_proof(const Options& opt, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cellgames::InputError("cannot open proof file: " + path);
  logic::ProofScript script = logic::parse_proof_script(in);
  if (script.empty()) throw cellgames::InputError("proof script is empty");
  try {
    logic::FormulaPtr conclusion =
        logic::check_proof(script, opt.proof_limits());
    if (opt.lines())
      std::cout << "conclusion=" << logic::print_formula(conclusion) << '\n';
    else
      std::cout << logic::print_formula(conclusion) << '\n';
    return kExitTrue;
  } catch (const logic::ProofError& e) {
    std::cout << "error: " << e.what() << '\n';
    return kExitFalse;
  }
}

std::vector<engine::Analysis> build_components(const games::GameSpec& spec,
                                               const Options& opt) {
  std::vector<engine::Analysis> components;
  for (const games::GameSpec& part : engine::flatten_spec(spec))
    components.emplace_back(games::build_game(part, opt.build_limits()),
                            opt.engine_limits());
  return components;
}

int run_game_ne(const Options& opt, const games::GameSpec& spec) {
  auto components = build_components(spec, opt);
  const bool has_eq = engine::components_have_equilibrium(components);
  const std::uint64_t realizable =
      has_eq ? engine::components_realizable_count(components) : 0;
  if (opt.lines()) {
    std::cout << "has_equilibrium=" << (has_eq ? "true" : "false")
              << " realizable=" << realizable << '\n';
  } else {
    std::cout << "has_equilibrium: " << (has_eq ? "true" : "false") << '\n';
    std::cout << "realizable: " << realizable << '\n';
  }
  return kExitTrue;
}

int run_game_interchange(const Options& opt, const games::GameSpec& spec,
                         std::int64_t a, std::int64_t b) {
  auto components = build_components(spec, opt);
  const bool ok = engine::components_interchangeable(components, a, b);
  if (opt.lines())
    std::cout << "interchangeable=" << (ok ? "true" : "false") << '\n';
  else
    std::cout << (ok ? "true" : "false") << '\n';
  return ok ? kExitTrue : kExitFalse;
}

int run_game_windows(const Options& opt, const games::GameSpec& spec,
                     int length) {
  engine::Analysis analysis(games::build_game(spec, opt.build_limits()),
                            opt.engine_limits());
  for (const engine::ProfileWindow& w : analysis.enumerate_ne_windows(length))
    std::cout << engine::window_to_text(analysis.game(), w) << '\n';
  return kExitTrue;
}

int run_game_constrain(const Options& opt, const games::GameSpec& spec,
                       const std::vector<std::string>& at) {
  engine::Analysis analysis(games::build_game(spec, opt.build_limits()),
                            opt.engine_limits());
  std::vector<std::pair<std::int64_t, games::StrategyId>> constraints;
  for (const std::string& item : at) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw cellgames::InputError("constraint must look like <pos>=<label>: " +
                                  item);
    std::int64_t pos = 0;
    try {
      pos = std::stoll(item.substr(0, eq));
    } catch (...) {
      throw cellgames::InputError("bad constraint position in: " + item);
    }
    constraints.emplace_back(pos,
                             analysis.game().parse_strategy(item.substr(eq + 1)));
  }
  auto profile = analysis.constrained_equilibrium(std::move(constraints));
  if (!profile) {
    std::cout << "NONE\n";
    return kExitFalse;
  }
  std::cout << engine::profile_to_text(analysis.game(), *profile) << '\n';
  return kExitTrue;
}

void collect_atoms_in_order(
    const logic::Formula& f,
    std::vector<std::pair<std::int64_t, std::int64_t>>& atoms) {
  switch (f.kind()) {
    case logic::FormulaKind::Bottom:
      return;
    case logic::FormulaKind::Atom: {
      std::pair<std::int64_t, std::int64_t> key{f.atom_a(), f.atom_b()};
      for (const auto& seen : atoms)
        if (seen == key) return;
      atoms.push_back(key);
      return;
    }
    case logic::FormulaKind::Not:
      collect_atoms_in_order(*f.lhs(), atoms);
      return;
    default:
      collect_atoms_in_order(*f.lhs(), atoms);
      collect_atoms_in_order(*f.rhs(), atoms);
      return;
  }
}

int run_synth(const Options& opt, const std::string& text) {
  logic::FormulaPtr f = logic::parse_formula(text);
  logic::Verdict v = logic::decide(f, opt.decide_limits());
  if (v.valid) {
    if (opt.lines()) {
      std::cout << "verdict=VALID\n";
    } else {
      std::cout << "VALID\n";
      std::cout << "nothing to synthesize\n";
    }
    return kExitTrue;
  }

  const std::string cm = v.countermodel->to_string();
  if (opt.lines()) {
    std::cout << "verdict=INVALID countermodel=" << cm
              << " assignment=" << v.assignment->to_string() << '\n';
  } else {
    std::cout << "INVALID\n";
    std::cout << "countermodel: " << cm << '\n';
    std::cout << "assignment: " << v.assignment->to_string() << '\n';
  }

  // Model-check each atom with the engine where the components fit the caps.
  std::vector<engine::Analysis> components;
  bool feasible = true;
  for (const games::GameSpec& part : engine::flatten_spec(*v.countermodel)) {
    try {
      components.emplace_back(games::build_game(part, opt.build_limits()),
                              opt.engine_limits());
    } catch (const cellgames::ResourceLimitError&) {
      feasible = false;
      break;
    }
  }

  std::vector<std::pair<std::int64_t, std::int64_t>> atoms;
  collect_atoms_in_order(*f, atoms);
  bool all_match = true;
  for (const auto& [a, b] : atoms) {
    const std::string name =
        std::to_string(a) + "||" + std::to_string(b);
    if (!feasible) {
      if (opt.lines())
        std::cout << "atom=" << name << " value=symbolic\n";
      else
        std::cout << "atom " << name << ": symbolic (engine cap)\n";
      continue;
    }
    const bool engine_true =
        engine::components_interchangeable(components, a, b);
    const bool assigned_true = v.assignment->atom_true(a, b);
    if (engine_true != assigned_true) all_match = false;
    if (opt.lines())
      std::cout << "atom=" << name << " value="
                << (engine_true ? "true" : "false") << '\n';
    else
      std::cout << "atom " << name << ": " << (engine_true ? "true" : "false")
                << '\n';
  }
  if (feasible) {
    if (!all_match) {
      std::cerr << "error: engine disagrees with the falsifying assignment\n";
      return kExitInternal;
    }
    std::cout << (opt.lines() ? "confirmed=true" : "confirmed") << '\n';
  }
  return kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  if (const char* env = std::getenv("CELLGAMES_MAX_STRATEGIES"))
    opt.max_strategies = std::strtoull(env, nullptr, 10);
  if (const char* env = std::getenv("CELLGAMES_MAX_ATOMS"))
    opt.max_atoms = std::strtoull(env, nullptr, 10);

  CLI::App app{"interchangeability of equilibria in one-dimensional cellular games"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "lines"}))
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "random seed (reserved; runs are deterministic)");
  std::uint64_t max_strategies_flag = 0;
  std::size_t max_atoms_flag = 0;
  auto* ms = app.add_option("--max-strategies", max_strategies_flag,
                            "strategy cap for game building and analysis");
  auto* ma = app.add_option("--max-atoms", max_atoms_flag,
                            "atom/distance cap for decide and tautology checks");

  std::string formula_text;
  std::string proof_path;
  std::string spec_text;
  std::string action;
  std::int64_t pos_a = 0, pos_b = 0;
  int window_length = 1;
  std::vector<std::string> at_constraints;

  CLI::App* decide_cmd = app.add_subcommand("decide", "decide validity of a formula");
  decide_cmd->add_option("formula", formula_text, "formula text")->required();

  CLI::App* proof_cmd =
      app.add_subcommand("check-proof", "check a proof script file");
  proof_cmd->add_option("path", proof_path, "proof file")->required();

  CLI::App* game_cmd = app.add_subcommand("game", "analyze a cellular game");
  game_cmd->add_option("spec", spec_text, "game spec, e.g. G2 or PROD(G1,GN:3)")
      ->required();
  game_cmd->add_option("action", action, "ne | interchange | windows | constrain")
      ->required()
      ->check(CLI::IsMember({"ne", "interchange", "windows", "constrain"}));
  game_cmd->add_option("--a", pos_a, "first position");
  game_cmd->add_option("--b", pos_b, "second position");
  game_cmd->add_option("--length", window_length, "window length");
  game_cmd->add_option("--at", at_constraints,
                       "constraint <pos>=<label>; repeatable");

  CLI::App* synth_cmd = app.add_subcommand(
      "synth", "synthesize and engine-check a countermodel");
  synth_cmd->add_option("formula", formula_text, "formula text")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  if (ms->count()) opt.max_strategies = max_strategies_flag;
  if (ma->count()) opt.max_atoms = max_atoms_flag;

  try {
    if (decide_cmd->parsed()) return run_decide(opt, formula_text);
    if (proof_cmd->parsed()) return run_check_proof(opt, proof_path);
    if (synth_cmd->parsed()) return run_synth(opt, formula_text);
    const games::GameSpec spec = games::GameSpec::parse(spec_text);
    if (action == "ne") return run_game_ne(opt, spec);
    if (action == "interchange") {
      if (!game_cmd->count("--a") || !game_cmd->count("--b"))
        throw cellgames::InputError("interchange needs --a and --b");
      return run_game_interchange(opt, spec, pos_a, pos_b);
    }
    if (action == "windows") {
      if (!game_cmd->count("--length"))
        throw cellgames::InputError("windows needs --length");
      return run_game_windows(opt, spec, window_length);
    }
    if (at_constraints.empty())
      throw cellgames::InputError("constrain needs at least one --at");
    return run_game_constrain(opt, spec, at_constraints);
  } catch (const logic::ParseError& e) {
    std::cerr << "error: parse: " << e.what() << '\n';
    return kExitInput;
  } catch (const cellgames::ResourceLimitError& e) {
    std::cerr << "error: resource: " << e.what() << '\n';
    return kExitResource;
  } catch (const cellgames::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const cellgames::InternalCheckError& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return kExitInternal;
  }
}
