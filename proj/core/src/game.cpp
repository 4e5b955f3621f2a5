#include "cellgames/game.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "cellgames/errors.hpp"

namespace cellgames::games {

FiniteCellularGame::FiniteCellularGame(std::vector<std::string> labels,
                                       PayoffFn payoff)
    : labels_(std::make_shared<const std::vector<std::string>>(
          std::move(labels))),
      payoff_(std::move(payoff)) {
  if (labels_->empty()) throw InputError("game needs at least one strategy");
}

StrategyId FiniteCellularGame::parse_strategy(std::string_view label) const {
  for (std::size_t i = 0; i < labels_->size(); ++i)
    if ((*labels_)[i] == label) return static_cast<StrategyId>(i);
  throw InputError("unknown strategy label: " + std::string(label));
}

GameSpec GameSpec::gn(std::int64_t n) {
  if (n < 3) throw InputError("GN parameter must be >= 3");
  GameSpec s;
  s.kind = Kind::GN;
  s.n = n;
  return s;
}

GameSpec GameSpec::prod(std::vector<GameSpec> parts) {
  if (parts.empty()) throw InputError("PROD needs at least one component");
  GameSpec s;
  s.kind = Kind::Prod;
  s.parts = std::move(parts);
  return s;
}

GameSpec GameSpec::file(std::string path) {
  GameSpec s;
  s.kind = Kind::File;
  s.path = std::move(path);
  return s;
}

GameSpec GameSpec::for_distance(std::uint64_t d) {
  switch (d) {
    case 0:
      return g0();
    case 1:
      return g1();
    case 2:
      return g2();
    default:
      return gn(static_cast<std::int64_t>(d));
  }
}

std::string GameSpec::to_string() const {
  switch (kind) {
    case Kind::G0:
      return "G0";
    case Kind::G1:
      return "G1";
    case Kind::G2:
      return "G2";
    case Kind::GInf:
      return "GINF";
    case Kind::GN:
      return "GN:" + std::to_string(n);
    case Kind::File:
      return "FILE:" + path;
    case Kind::Prod: {
      std::string out = "PROD(";
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ',';
        out += parts[i].to_string();
      }
      out += ')';
      return out;
    }
  }
  return {};
}

namespace {

GameSpec parse_spec_rec(std::string_view text, std::size_t& i, bool nested);

std::string_view spec_rest(std::string_view text, std::size_t i) {
  return text.substr(i);
}

GameSpec parse_spec_rec(std::string_view text, std::size_t& i, bool nested) {
  auto starts = [&](std::string_view kw) {
    return spec_rest(text, i).substr(0, kw.size()) == kw;
  };
  if (starts("GINF")) {
    i += 4;
    return GameSpec::ginf();
  }
  if (starts("G0")) {
    i += 2;
    return GameSpec::g0();
  }
  if (starts("G1")) {
    i += 2;
    return GameSpec::g1();
  }
  if (starts("G2")) {
    i += 2;
    return GameSpec::g2();
  }
  if (starts("GN:")) {
    i += 3;
    std::size_t j = i;
    while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
    std::int64_t n = 0;
    auto res = std::from_chars(text.data() + i, text.data() + j, n);
    if (j == i || res.ec != std::errc{})
      throw InputError("bad GN parameter in game spec");
    i = j;
    return GameSpec::gn(n);
  }
  if (starts("PROD(")) {
    i += 5;
    std::vector<GameSpec> parts;
    while (true) {
      parts.push_back(parse_spec_rec(text, i, true));
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      throw InputError("expected ',' or ')' in PROD spec");
    }
    return GameSpec::prod(std::move(parts));
  }
  if (starts("FILE:")) {
    i += 5;
    std::size_t j = i;
    if (nested) {
      while (j < text.size() && text[j] != ',' && text[j] != ')') ++j;
    } else {
      j = text.size();
    }
    std::string path(text.substr(i, j - i));
    if (path.empty()) throw InputError("empty FILE path in game spec");
    i = j;
    return GameSpec::file(std::move(path));
  }
  throw InputError("unrecognized game spec: " + std::string(text));
}

}  // namespace

GameSpec GameSpec::parse(std::string_view text) {
  std::size_t i = 0;
  GameSpec s = parse_spec_rec(text, i, false);
  if (i != text.size())
    throw InputError("trailing characters in game spec: " + std::string(text));
  return s;
}

G2Strategy G2Strategy::from_id(StrategyId id) {
  G2Strategy s;
  if (id < 3) {
    s.pennies = false;
    s.residue = id;
  } else {
    s.pennies = true;
    int p = id - 3;
    s.y1_head = (p / 2) == 0;
    s.y2_head = (p % 2) == 0;
  }
  return s;
}

StrategyId G2Strategy::id() const {
  if (!pennies) return residue;
  return 3 + (y1_head ? 0 : 2) + (y2_head ? 0 : 1);
}

long long g2_u1(const G2Strategy& x, const G2Strategy& y, const G2Strategy& z) {
  bool rewarded = x.pennies || z.pennies ||
                  (!x.pennies && !z.pennies && (x.residue + 2) % 3 == z.residue);
  if (!rewarded) return 0;
  return y.pennies ? 1 : 0;
}

long long g2_u2(const G2Strategy& x, const G2Strategy& y) {
  if (!x.pennies || !y.pennies) return 0;
  return x.y2_head == y.y1_head ? 1 : 0;
}

long long g2_u3(const G2Strategy& y, const G2Strategy& z) {
  if (!y.pennies || !z.pennies) return 0;
  return y.y2_head != z.y1_head ? 1 : 0;
}

std::uint64_t gn_strategy_count(int n) {
  if (n < 3) throw InputError("GN parameter must be >= 3");
  std::uint64_t count = 1;
  const std::uint64_t base = static_cast<std::uint64_t>(n) + 1;
  for (int i = 0; i < 2 * (n - 1); ++i) {
    if (count > (std::uint64_t(1) << 62) / base)
      throw ResourceLimitError("GN strategy space does not fit in 64 bits");
    count *= base;
  }
  return count;
}

MatrixStrategy gn_strategy_from_id(int n, StrategyId id) {
  return MatrixStrategy::decode(n, static_cast<std::uint64_t>(id));
}

StrategyId gn_strategy_id(const MatrixStrategy& s) {
  return static_cast<StrategyId>(s.encode());
}

namespace {

FiniteCellularGame build_g0() {
  return FiniteCellularGame({"0", "1"},
                            [](StrategyId, StrategyId, StrategyId) -> long long {
                              return 0;
                            });
}

FiniteCellularGame build_g1() {
  return FiniteCellularGame(
      {"0", "1", "2"},
      [](StrategyId x, StrategyId y, StrategyId) -> long long {
        // rewarded unless y == x + [2] in Z3
        return ((y - x) % 3 + 3) % 3 != 2 ? 1 : 0;
      });
}

FiniteCellularGame build_g2() {
  std::vector<std::string> labels = {"0", "1", "2", "HH", "HT", "TH", "TT"};
  return FiniteCellularGame(
      std::move(labels),
      [](StrategyId xi, StrategyId yi, StrategyId zi) -> long long {
        G2Strategy x = G2Strategy::from_id(xi);
        G2Strategy y = G2Strategy::from_id(yi);
        G2Strategy z = G2Strategy::from_id(zi);
        return g2_u1(x, y, z) + g2_u2(x, y) + g2_u3(y, z);
      });
}

FiniteCellularGame build_ginf() {
  return FiniteCellularGame({"0"},
                            [](StrategyId, StrategyId, StrategyId) -> long long {
                              return 0;
                            });
}

FiniteCellularGame build_gn(int n, const BuildLimits& limits) {
  std::uint64_t count = gn_strategy_count(n);
  if (count > limits.max_strategies)
    throw ResourceLimitError("GN:" + std::to_string(n) + " needs " +
                             std::to_string(count) +
                             " strategies, above the cap of " +
                             std::to_string(limits.max_strategies));
  auto table = std::make_shared<std::vector<MatrixStrategy>>();
  table->reserve(count);
  std::vector<std::string> labels;
  labels.reserve(count);
  for (std::uint64_t id = 0; id < count; ++id) {
    table->push_back(MatrixStrategy::decode(n, id));
    labels.push_back(table->back().label());
  }
  return FiniteCellularGame(
      std::move(labels),
      [n, table](StrategyId x, StrategyId y, StrategyId z) -> long long {
        return gn_payoff_conditions(n, (*table)[x], (*table)[y], (*table)[z])
                   ? 1
                   : 0;
      });
}

FiniteCellularGame build_prod(const GameSpec& spec, const BuildLimits& limits) {
  auto components = std::make_shared<std::vector<FiniteCellularGame>>();
  std::uint64_t total = 1;
  for (const GameSpec& part : spec.parts) {
    components->push_back(build_game(part, limits));
    std::uint64_t size =
        static_cast<std::uint64_t>(components->back().strategy_count());
    if (total > limits.max_strategies / size)
      throw ResourceLimitError("product strategy space above the cap of " +
                               std::to_string(limits.max_strategies));
    total *= size;
  }
  // Mixed-radix ids, first component most significant.
  auto split = [components](StrategyId id, std::size_t i) -> StrategyId {
    std::uint64_t v = static_cast<std::uint64_t>(id);
    for (std::size_t j = components->size(); j-- > i + 1;)
      v /= (*components)[j].strategy_count();
    return static_cast<StrategyId>(v % (*components)[i].strategy_count());
  };
  std::vector<std::string> labels;
  labels.reserve(total);
  for (std::uint64_t id = 0; id < total; ++id) {
    std::string label;
    for (std::size_t i = 0; i < components->size(); ++i) {
      if (i) label += "×";
      label += (*components)[i].label(split(static_cast<StrategyId>(id), i));
    }
    labels.push_back(std::move(label));
  }
  return FiniteCellularGame(
      std::move(labels),
      [components, split](StrategyId x, StrategyId y,
                          StrategyId z) -> long long {
        long long sum = 0;
        for (std::size_t i = 0; i < components->size(); ++i)
          sum += (*components)[i].payoff(split(x, i), split(y, i), split(z, i));
        return sum;
      });
}

std::string strip_comment_and_trim(const std::string& line) {
  std::string s = line;
  auto hash = s.find('#');
  if (hash != std::string::npos) s.resize(hash);
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

FiniteCellularGame build_game(const GameSpec& spec, const BuildLimits& limits) {
  switch (spec.kind) {
    case GameSpec::Kind::G0:
      return build_g0();
    case GameSpec::Kind::G1:
      return build_g1();
    case GameSpec::Kind::G2:
      return build_g2();
    case GameSpec::Kind::GInf:
      return build_ginf();
    case GameSpec::Kind::GN: {
      if (spec.n > 64)
        throw ResourceLimitError("matrix game parameter " +
                                 std::to_string(spec.n) +
                                 " is above the supported 64");
      return build_gn(static_cast<int>(spec.n), limits);
    }
    case GameSpec::Kind::Prod:
      return build_prod(spec, limits);
    case GameSpec::Kind::File:
      return load_game_table(spec.path);
  }
  throw InputError("unhandled game spec");
}

FiniteCellularGame load_game_table(std::istream& in) {
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(strip_comment_and_trim(line));

  std::size_t i = 0;
  auto next_content = [&]() -> const std::string* {
    while (i < lines.size() && lines[i].empty()) ++i;
    return i < lines.size() ? &lines[i++] : nullptr;
  };

  const std::string* header = next_content();
  if (!header || *header != "cellgame-table v1")
    throw InputError("game table must start with 'cellgame-table v1'");

  const std::string* strat_line = next_content();
  if (!strat_line || strat_line->rfind("strategies:", 0) != 0)
    throw InputError("game table missing 'strategies:' line");
  std::vector<std::string> labels;
  {
    std::string rest = strat_line->substr(std::string("strategies:").size());
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::string t = strip_comment_and_trim(item);
      if (t.empty()) throw InputError("empty strategy label in game table");
      labels.push_back(t);
    }
  }
  if (labels.empty()) throw InputError("game table declares no strategies");
  std::set<std::string> seen;
  for (const std::string& l : labels)
    if (!seen.insert(l).second)
      throw InputError("duplicate strategy label: " + l);

  const std::string* default_line = next_content();
  if (!default_line || default_line->rfind("default:", 0) != 0)
    throw InputError("game table missing 'default:' line");
  long long default_payoff = 0;
  {
    std::string rest =
        strip_comment_and_trim(default_line->substr(std::string("default:").size()));
    auto res = std::from_chars(rest.data(), rest.data() + rest.size(),
                               default_payoff);
    if (res.ec != std::errc{} || res.ptr != rest.data() + rest.size())
      throw InputError("non-integer default payoff: " + rest);
  }

  auto index_of = [&labels](const std::string& l) -> StrategyId {
    for (std::size_t j = 0; j < labels.size(); ++j)
      if (labels[j] == l) return static_cast<StrategyId>(j);
    throw InputError("unknown label in triple line: " + l);
  };

  auto table = std::make_shared<std::map<std::tuple<int, int, int>, long long>>();
  while (const std::string* content = next_content()) {
    std::stringstream ss(*content);
    std::string xs, ys, zs, ps;
    if (!(ss >> xs >> ys >> zs >> ps))
      throw InputError("malformed triple line: " + *content);
    std::string extra;
    if (ss >> extra)
      throw InputError("trailing fields in triple line: " + *content);
    long long p = 0;
    auto res = std::from_chars(ps.data(), ps.data() + ps.size(), p);
    if (res.ec != std::errc{} || res.ptr != ps.data() + ps.size())
      throw InputError("non-integer payoff: " + ps);
    (*table)[{index_of(xs), index_of(ys), index_of(zs)}] = p;
  }

  return FiniteCellularGame(
      std::move(labels),
      [table, default_payoff](StrategyId x, StrategyId y,
                              StrategyId z) -> long long {
        auto it = table->find({x, y, z});
        return it == table->end() ? default_payoff : it->second;
      });
}

FiniteCellularGame load_game_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open game table: " + path);
  return load_game_table(in);
}

}  // namespace cellgames::games
