#include "cellgames/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "cellgames/errors.hpp"

namespace cellgames::constructions {

namespace {

int mod_norm(long long v, int m) {
  long long r = v % m;
  if (r < 0) r += m;
  return static_cast<int>(r);
}

std::uint64_t unsigned_distance(std::int64_t a, std::int64_t b) {
  std::uint64_t ua = static_cast<std::uint64_t>(a);
  std::uint64_t ub = static_cast<std::uint64_t>(b);
  return a > b ? ua - ub : ub - ua;
}

void check_window(const MatrixWindow& w) {
  if (w.cells.empty()) throw InputError("matrix window must be nonempty");
  for (const MatrixStrategy& c : w.cells)
    if (c.n() != w.n) throw InputError("matrix window has mixed parameters");
}

void check_n(int n) {
  if (n < 3 || n > 64)
    throw InputError("matrix game parameter must be in [3, 64]");
}

}  // namespace

std::vector<int> zig_sequence(int modulus, int u, int v, int k) {
  if (modulus < 1) throw InputError("zig modulus must be positive");
  if (k < modulus)
    throw InputError("zig length must be at least the modulus (k >= n)");
  u = mod_norm(u, modulus);
  v = mod_norm(v, modulus);
  const int gap = mod_norm(v - u, modulus);
  std::vector<int> out(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) out[i] = mod_norm(u + std::min(i, gap), modulus);
  return out;
}

MatrixProfile f_profile(int n) {
  check_n(n);
  MatrixProfile p;
  p.anchor = 0;
  p.left = {MatrixStrategy(n)};
  p.right = {MatrixStrategy(n)};
  if (!verify_matrix_profile(p))
    throw InternalCheckError("f profile failed verification");
  return p;
}

MatrixProfile g_profile(int n) {
  check_n(n);
  MatrixStrategy cell(n);
  for (int r = 1; r <= n - 1; ++r) cell.set(r, 2, n);
  MatrixProfile p;
  p.anchor = 0;
  p.left = {cell};
  p.right = {cell};
  if (!verify_matrix_profile(p))
    throw InternalCheckError("g profile failed verification");
  return p;
}

bool window_semiperfect_interior(const MatrixWindow& w) {
  check_window(w);
  for (std::size_t i = 1; i + 1 < w.cells.size(); ++i)
    if (!games::semiperfect_triple(w.n, w.cells[i - 1], w.cells[i],
                                   w.cells[i + 1]))
      return false;
  return true;
}

bool window_perfect_interior(const MatrixWindow& w) {
  check_window(w);
  for (std::size_t i = 1; i + 1 < w.cells.size(); ++i)
    if (!games::perfect_triple(w.n, w.cells[i - 1], w.cells[i],
                               w.cells[i + 1]))
      return false;
  return true;
}

bool verify_matrix_profile(const MatrixProfile& profile) {
  if (profile.left.empty() || profile.right.empty()) return false;
  const int n = profile.left.front().n();
  return engine::verify_periodic(
      profile, [n](const MatrixStrategy& x, const MatrixStrategy& y,
                   const MatrixStrategy& z) {
        return games::semiperfect_triple(n, x, y, z);
      });
}

MatrixWindow perfect_profile(int n, const MatrixStrategy& M, std::int64_t a,
                             std::int64_t b) {
  check_n(n);
  if (M.n() != n) throw InputError("matrix parameter mismatch");
  if (M.at(1, 1) != 0)
    throw InputError("perfect_profile needs M with top-left zero");
  const std::uint64_t dist = unsigned_distance(a, b);
  if (dist == 0 || dist >= static_cast<std::uint64_t>(n))
    throw InputError("perfect_profile needs 0 < |a-b| < n");
  const int k = static_cast<int>(dist);

  MatrixWindow w;
  w.n = n;
  w.start = std::min(a, b);
  w.cells.assign(static_cast<std::size_t>(k) + 1, MatrixStrategy(n));

  if (a < b) {
    // M at the left end; its second column is cancelled one step right and
    // the top-right entry travels down the second column.
    w.cells[0] = M;
    if (k >= 2) {
      MatrixStrategy& s1 = w.cells[1];
      for (int r = 2; r <= n - 1; ++r) {
        s1.set(r, 1, -M.at(r, 2));
        if (r == 2) s1.set(r, 2, M.at(1, 2));
      }
      for (int j = 2; j <= k - 1; ++j) w.cells[j].set(j + 1, 2, M.at(1, 2));
    }
  } else {
    // Mirrored: M at the right end; its first column is cancelled one step
    // left and the top-right entry travels up the first column.
    w.cells[static_cast<std::size_t>(k)] = M;
    if (k >= 2) {
      MatrixStrategy& t1 = w.cells[static_cast<std::size_t>(k) - 1];
      for (int r = 2; r <= n - 1; ++r) {
        t1.set(r, 2, -M.at(r, 1));
        if (r == n - 1) t1.set(r, 1, M.at(1, 2));
      }
      for (int j = 2; j <= k - 1; ++j)
        w.cells[static_cast<std::size_t>(k - j)].set(n - j, 1, M.at(1, 2));
    }
  }
  if (!window_perfect_interior(w))
    throw InternalCheckError("perfect_profile failed verification");
  return w;
}

MatrixWindow sum_windows(const MatrixWindow& p, const MatrixWindow& q) {
  check_window(p);
  check_window(q);
  if (p.n != q.n || p.start != q.start || p.cells.size() != q.cells.size())
    throw InputError("sum_windows needs equal parameter and span");
  MatrixWindow out = p;
  for (std::size_t i = 0; i < out.cells.size(); ++i)
    out.cells[i] = p.cells[i].plus(q.cells[i]);
  return out;
}

MatrixWindow semiperfect_profile(int n, const MatrixStrategy& A,
                                 const MatrixStrategy& B, std::int64_t a,
                                 std::int64_t b) {
  check_n(n);
  if (A.n() != n || B.n() != n) throw InputError("matrix parameter mismatch");
  if (A.at(1, 1) != 0 || B.at(1, 1) != 0)
    throw InputError("semiperfect_profile needs top-left zero endpoints");
  const std::uint64_t dist = unsigned_distance(a, b);
  if (dist <= static_cast<std::uint64_t>(n))
    throw InputError("semiperfect_profile needs |a-b| > n");
  const std::int64_t lo = std::min(a, b);
  const MatrixStrategy& L = (a < b) ? A : B;
  const MatrixStrategy& R = (a < b) ? B : A;
  const int m = n + 1;
  const std::int64_t d64 = static_cast<std::int64_t>(dist);

  MatrixWindow w;
  w.n = n;
  w.start = lo;
  w.cells.assign(static_cast<std::size_t>(d64) + 1, MatrixStrategy(n));
  w.cells.front() = L;
  w.cells.back() = R;

  // Every semi-perfect condition chains sums along diagonals: the sum at row
  // r of boundary (i-1, i) steps by {0,1} into row r+1 of boundary (i, i+1),
  // wraps through the top-right entry, and re-enters at row 2 two cells
  // later. Cells at offset m carry the slot of diagonal family (m mod n).
  // Family 0 starts forced at L's top-right entry; each other family starts
  // free at its first in-window slot. A family whose slot at the right end
  // falls on an entry of R must arrive at that entry's value; family 0 gets
  // there with a zig, the others ride at the required value from the start.
  struct Slot {
    std::int64_t cell;
    int row;  // 0 means the top-right (wrap) entry
  };
  for (int family = 0; family < n; ++family) {
    std::vector<Slot> slots;
    for (std::int64_t c = 1; c <= d64; ++c) {
      int r = mod_norm(c - family, n);
      if (r == 1) continue;  // pass-through of the wrap value
      slots.push_back({c, r});
    }
    if (slots.empty()) throw InternalCheckError("diagonal family without slots");
    const Slot last = slots.back();
    const bool ends_on_r = last.cell == d64;
    int target = 0;
    if (ends_on_r) target = last.row == 0 ? R.at(1, 2) : R.at(last.row, 1);

    std::vector<int> values(slots.size(), 0);
    if (family == 0) {
      const int v0 = L.at(1, 2);
      if (ends_on_r) {
        std::vector<int> zig =
            zig_sequence(m, v0, target, static_cast<int>(slots.size()) + 1);
        for (std::size_t i = 0; i < slots.size(); ++i) values[i] = zig[i + 1];
      } else {
        std::fill(values.begin(), values.end(), v0);
      }
    } else if (ends_on_r) {
      std::fill(values.begin(), values.end(), target);
    }

    for (std::size_t i = 0; i < slots.size(); ++i) {
      const Slot& s = slots[i];
      const int v = values[i];
      if (s.cell == d64) {
        const int have = s.row == 0 ? R.at(1, 2) : R.at(s.row, 1);
        if (have != v)
          throw InternalCheckError("diagonal family misses its endpoint");
        continue;
      }
      MatrixStrategy& cell = w.cells[static_cast<std::size_t>(s.cell)];
      if (s.row == 0) {
        cell.set(1, 2, v);
      } else if (s.cell == 1) {
        cell.set(s.row, 1, v - L.at(s.row, 2));
      } else {
        cell.set(s.row, 1, v);
      }
    }
  }

  if (!window_semiperfect_interior(w))
    throw InternalCheckError("semiperfect_profile failed verification");
  return w;
}

namespace {

MatrixStrategy right_expansion_cell(int n, const MatrixStrategy& x,
                                    const MatrixStrategy& y) {
  MatrixStrategy out(n);
  out.set(1, 2, x.at(n - 1, 2) + y.at(n - 1, 1));
  for (int r = 2; r <= n - 1; ++r)
    out.set(r, 1, x.at(r - 1, 2) + y.at(r - 1, 1) - y.at(r, 2));
  return out;
}

MatrixStrategy left_expansion_cell(int n, const MatrixStrategy& y,
                                   const MatrixStrategy& z) {
  MatrixStrategy out(n);
  for (int k = 1; k <= n - 2; ++k)
    out.set(k, 2, y.at(k + 1, 2) + z.at(k + 1, 1) - y.at(k, 1));
  out.set(n - 1, 2, z.at(1, 2) - y.at(n - 1, 1));
  return out;
}

}  // namespace

MatrixWindow expand_right(int n, const MatrixWindow& w) {
  check_window(w);
  if (w.n != n) throw InputError("matrix parameter mismatch");
  if (w.cells.size() < 2) throw InputError("window too short to expand");
  const MatrixStrategy& y = w.cells.back();
  if (y.at(1, 1) != 0)
    throw InputError("right boundary cell must have top-left zero");
  MatrixWindow out = w;
  out.cells.push_back(
      right_expansion_cell(n, w.cells[w.cells.size() - 2], y));
  return out;
}

MatrixWindow expand_left(int n, const MatrixWindow& w) {
  check_window(w);
  if (w.n != n) throw InputError("matrix parameter mismatch");
  if (w.cells.size() < 2) throw InputError("window too short to expand");
  const MatrixStrategy& y = w.cells.front();
  if (y.at(1, 1) != 0)
    throw InputError("left boundary cell must have top-left zero");
  MatrixWindow out = w;
  out.start -= 1;
  out.cells.insert(out.cells.begin(),
                   left_expansion_cell(n, y, w.cells[1]));
  return out;
}

MatrixProfile close_to_equilibrium(int n, const MatrixWindow& w) {
  check_window(w);
  if (w.n != n) throw InputError("matrix parameter mismatch");
  if (w.cells.size() < 2)
    throw InputError("close_to_equilibrium needs a window of length >= 2");
  if (!window_semiperfect_interior(w))
    throw InputError("window is not semi-perfect at its interior players");

  constexpr std::size_t kMaxExpansions = 1 << 20;
  using Key = std::pair<std::string, std::string>;

  // Rightward: the appended cell is a function of the last pair, so the
  // pair sequence repeats; cells between the two occurrences form the
  // right period.
  std::vector<MatrixStrategy> cells = w.cells;
  std::size_t rj = 0, rp = 0;
  {
    std::map<Key, std::size_t> seen;
    for (std::size_t i = cells.size() - 1;;) {
      Key key{cells[i - 1].label(), cells[i].label()};
      auto [it, inserted] = seen.emplace(key, i);
      if (!inserted) {
        rj = it->second;
        rp = i - rj;
        break;
      }
      if (cells[i].at(1, 1) != 0)
        throw InternalCheckError("right expansion hit a non-expandable cell");
      cells.push_back(right_expansion_cell(n, cells[i - 1], cells[i]));
      ++i;
      if (cells.size() > w.cells.size() + kMaxExpansions)
        throw InternalCheckError("right expansion did not cycle");
    }
  }

  // Leftward mirror; pre[k] is the cell at position start-1-k.
  std::vector<MatrixStrategy> pre;
  std::size_t lj = 0, lp = 0;
  {
    auto cell_at = [&](std::int64_t rel) -> const MatrixStrategy& {
      return rel >= 0 ? cells[static_cast<std::size_t>(rel)]
                      : pre[static_cast<std::size_t>(-rel - 1)];
    };
    std::map<Key, std::size_t> seen;
    for (std::size_t i = 0;;) {
      const std::int64_t first = -static_cast<std::int64_t>(i);
      Key key{cell_at(first).label(), cell_at(first + 1).label()};
      auto [it, inserted] = seen.emplace(key, i);
      if (!inserted) {
        lj = it->second;
        lp = i - lj;
        break;
      }
      if (cell_at(first).at(1, 1) != 0)
        throw InternalCheckError("left expansion hit a non-expandable cell");
      pre.push_back(left_expansion_cell(n, cell_at(first), cell_at(first + 1)));
      ++i;
      if (pre.size() > kMaxExpansions)
        throw InternalCheckError("left expansion did not cycle");
    }
  }

  // Positions <= start-lj-1 repeat with period lp; positions >= start+rj+1
  // repeat with period rp.
  MatrixProfile profile;
  profile.anchor = w.start - static_cast<std::int64_t>(lj);
  for (std::size_t k = lj; k >= 1; --k) profile.mid.push_back(pre[k - 1]);
  for (std::size_t i = 0; i <= rj; ++i) profile.mid.push_back(cells[i]);
  for (std::size_t t = 0; t < lp; ++t) {
    // position anchor - lp + t is start - (lj + lp - t)
    const std::size_t k = lj + lp - t;
    profile.left.push_back(k == 0 ? cells[0] : pre[k - 1]);
  }
  for (std::size_t t = 0; t < rp; ++t)
    profile.right.push_back(cells[rj + 1 + t]);

  profile.left = engine::primitive_period(profile.left);
  profile.right = engine::primitive_period(profile.right);

  if (!verify_matrix_profile(profile))
    throw InternalCheckError("closed profile failed verification");
  for (std::size_t i = 0; i < w.cells.size(); ++i)
    if (!(profile.value(w.start + static_cast<std::int64_t>(i)) == w.cells[i]))
      throw InternalCheckError("closed profile does not extend the window");
  return profile;
}

namespace {

bool g1_ne_triple(games::StrategyId x, games::StrategyId y,
                  games::StrategyId) {
  return mod_norm(y - x, 3) <= 1;
}

bool g2_ne_triple(games::StrategyId x, games::StrategyId y,
                  games::StrategyId z) {
  if (x > 2 || y > 2 || z > 2) return false;
  return mod_norm(z - x, 3) <= 1;
}

template <typename Fn>
engine::EventuallyPeriodicProfile profile_from_function(
    Fn&& value, std::int64_t mid_begin, std::int64_t mid_end,
    std::int64_t left_period, std::int64_t right_period) {
  engine::EventuallyPeriodicProfile p;
  p.anchor = mid_begin;
  for (std::int64_t q = mid_begin - left_period; q < mid_begin; ++q)
    p.left.push_back(value(q));
  for (std::int64_t q = mid_begin; q < mid_end; ++q) p.mid.push_back(value(q));
  for (std::int64_t q = mid_end; q < mid_end + right_period; ++q)
    p.right.push_back(value(q));
  p.left = engine::primitive_period(p.left);
  p.right = engine::primitive_period(p.right);
  return p;
}

}  // namespace

engine::EventuallyPeriodicProfile g1_witness(games::StrategyId s,
                                             games::StrategyId t,
                                             std::int64_t a, std::int64_t b) {
  if (s < 0 || s > 2 || t < 0 || t > 2)
    throw InputError("strategies must be residues 0..2");
  if (unsigned_distance(a, b) <= 1)
    throw InputError("g1_witness needs |a-b| > 1");
  const std::int64_t lo = std::min(a, b), hi = std::max(a, b);
  const int vlo = static_cast<int>(a < b ? s : t);
  const int vhi = static_cast<int>(a < b ? t : s);
  std::vector<int> zig =
      zig_sequence(3, vlo, vhi, static_cast<int>(hi - lo) + 1);
  auto value = [&](std::int64_t q) -> games::StrategyId {
    if (q <= lo) return zig.front();
    if (q >= hi) return zig.back();
    return zig[static_cast<std::size_t>(q - lo)];
  };
  auto p = profile_from_function(value, lo, hi + 1, 1, 1);
  if (!engine::verify_periodic(p, g1_ne_triple))
    throw InternalCheckError("g1 witness failed verification");
  if (p.value(a) != s || p.value(b) != t)
    throw InternalCheckError("g1 witness misses an endpoint");
  return p;
}

engine::EventuallyPeriodicProfile g2_witness(
    const engine::EventuallyPeriodicProfile& f,
    const engine::EventuallyPeriodicProfile& g, std::int64_t a,
    std::int64_t b) {
  if (!engine::verify_periodic(f, g2_ne_triple) ||
      !engine::verify_periodic(g, g2_ne_triple))
    throw InputError("g2_witness inputs must be equilibria");
  const std::uint64_t d = unsigned_distance(a, b);
  if (d != 1 && d <= 2) throw InputError("g2_witness needs |a-b| = 1 or > 2");
  const std::int64_t lo = std::min(a, b), hi = std::max(a, b);

  engine::EventuallyPeriodicProfile p;
  if (d == 1) {
    // Alternate the two equilibria by parity; skip differences come from one
    // profile at a time.
    const std::int64_t lper =
        std::lcm<std::int64_t, std::int64_t>(
            2, std::lcm(static_cast<std::int64_t>(f.left.size()),
                        static_cast<std::int64_t>(g.left.size())));
    const std::int64_t rper =
        std::lcm<std::int64_t, std::int64_t>(
            2, std::lcm(static_cast<std::int64_t>(f.right.size()),
                        static_cast<std::int64_t>(g.right.size())));
    const std::int64_t L0 = std::min({f.anchor, g.anchor, lo});
    const std::int64_t R0 =
        std::max({f.anchor + static_cast<std::int64_t>(f.mid.size()),
                  g.anchor + static_cast<std::int64_t>(g.mid.size()), hi + 1});
    auto value = [&](std::int64_t q) -> games::StrategyId {
      const bool from_f = mod_norm(q - a, 2) == 0;
      return from_f ? f.value(q) : g.value(q);
    };
    p = profile_from_function(value, L0, R0, lper, rper);
  } else if (mod_norm(b - a, 2) == 0) {
    // Same parity: zig along the shared skip-chain, other parity constant.
    const int vlo = static_cast<int>(a < b ? f.value(a) : g.value(b));
    const int vhi = static_cast<int>(a < b ? g.value(b) : f.value(a));
    const int chain_len = static_cast<int>((hi - lo) / 2) + 1;
    std::vector<int> zig = zig_sequence(3, vlo, vhi, chain_len);
    auto value = [&](std::int64_t q) -> games::StrategyId {
      if (mod_norm(q - a, 2) != 0) return 0;
      if (q <= lo) return zig.front();
      if (q >= hi) return zig.back();
      return zig[static_cast<std::size_t>((q - lo) / 2)];
    };
    p = profile_from_function(value, lo, hi + 1, 2, 2);
  } else {
    // Different parity: each parity class rides one endpoint's value.
    const games::StrategyId va = f.value(a);
    const games::StrategyId vb = g.value(b);
    auto value = [&](std::int64_t q) -> games::StrategyId {
      return mod_norm(q - a, 2) == 0 ? va : vb;
    };
    p = profile_from_function(value, lo, hi + 1, 2, 2);
  }

  if (!engine::verify_periodic(p, g2_ne_triple))
    throw InternalCheckError("g2 witness failed verification");
  if (p.value(a) != f.value(a) || p.value(b) != g.value(b))
    throw InternalCheckError("g2 witness misses an endpoint");
  return p;
}

MatrixProfile gn_witness(int n, const MatrixProfile& f, const MatrixProfile& g,
                         std::int64_t a, std::int64_t b) {
  check_n(n);
  if (!verify_matrix_profile(f) || !verify_matrix_profile(g))
    throw InputError("gn_witness inputs must be equilibria");
  const std::uint64_t d = unsigned_distance(a, b);
  if (d == 0 || d == static_cast<std::uint64_t>(n))
    throw InputError("gn_witness needs |a-b| outside {0, n}");
  const std::int64_t lo = std::min(a, b), hi = std::max(a, b);
  const MatrixStrategy& left = a < b ? f.value(a) : g.value(b);
  const MatrixStrategy& right = a < b ? g.value(b) : f.value(a);

  MatrixWindow window;
  if (d < static_cast<std::uint64_t>(n)) {
    MatrixWindow s = perfect_profile(n, left, lo, hi);
    MatrixWindow t = perfect_profile(n, right, hi, lo);
    window = sum_windows(s, t);
  } else {
    window = semiperfect_profile(n, left, right, lo, hi);
  }
  MatrixProfile e = close_to_equilibrium(n, window);
  if (!(e.value(a) == f.value(a)) || !(e.value(b) == g.value(b)))
    throw InternalCheckError("gn witness misses an endpoint");
  return e;
}

bool diagonal_check(int n, const MatrixWindow& w) {
  check_n(n);
  if (w.n != n) throw InputError("matrix parameter mismatch");
  if (w.cells.size() < static_cast<std::size_t>(n) + 1)
    throw InputError("diagonal_check needs a window of length >= n+1");
  if (!window_semiperfect_interior(w))
    throw InputError("diagonal_check needs a semi-perfect window");
  if (w.cells[0].at(1, 2) != 0)
    throw InputError("diagonal_check needs first top-right entry zero");
  for (int k = 0; k <= n - 2; ++k) {
    const int sum = mod_norm(
        w.cells[static_cast<std::size_t>(k)].at(k + 1, 2) +
            w.cells[static_cast<std::size_t>(k) + 1].at(k + 1, 1),
        n + 1);
    if (sum > k) return false;
  }
  return w.cells[static_cast<std::size_t>(n)].at(1, 2) != n;
}

}  // namespace cellgames::constructions
