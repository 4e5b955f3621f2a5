#include "cellgames/matrix_strategy.hpp"

#include <cassert>

#include "cellgames/errors.hpp"

namespace cellgames::games {

MatrixStrategy::MatrixStrategy(int n) : n_(n) {
  if (n < 3) throw InputError("matrix strategies require n >= 3");
  entries_.assign(static_cast<std::size_t>(n - 1) * 2, 0);
}

int MatrixStrategy::at(int row, int col) const {
  assert(row >= 1 && row <= rows() && (col == 1 || col == 2));
  return entries_[static_cast<std::size_t>(row - 1) * 2 + (col - 1)];
}

void MatrixStrategy::set(int row, int col, int value) {
  assert(row >= 1 && row <= rows() && (col == 1 || col == 2));
  int m = modulus();
  int v = value % m;
  if (v < 0) v += m;
  entries_[static_cast<std::size_t>(row - 1) * 2 + (col - 1)] =
      static_cast<std::uint8_t>(v);
}

std::string MatrixStrategy::label() const {
  std::string out = "[";
  for (int r = 1; r <= rows(); ++r) {
    if (r > 1) out += ';';
    out += std::to_string(at(r, 1));
    out += ',';
    out += std::to_string(at(r, 2));
  }
  out += ']';
  return out;
}

MatrixStrategy MatrixStrategy::from_label(int n, std::string_view text) {
  MatrixStrategy s(n);
  std::size_t i = 0;
  auto fail = [&]() -> void {
    throw InputError("malformed matrix label: " + std::string(text));
  };
  auto expect = [&](char c) {
    if (i >= text.size() || text[i] != c) fail();
    ++i;
  };
  auto read_int = [&]() -> int {
    std::size_t start = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    if (i == start || i - start > 3) fail();
    int v = 0;
    for (std::size_t j = start; j < i; ++j) v = v * 10 + (text[j] - '0');
    if (v > n) fail();
    return v;
  };
  expect('[');
  for (int r = 1; r <= s.rows(); ++r) {
    if (r > 1) expect(';');
    s.set(r, 1, read_int());
    expect(',');
    s.set(r, 2, read_int());
  }
  expect(']');
  if (i != text.size()) fail();
  return s;
}

std::uint64_t MatrixStrategy::encode() const {
  std::uint64_t id = 0;
  for (std::uint8_t e : entries_) id = id * modulus() + e;
  return id;
}

MatrixStrategy MatrixStrategy::decode(int n, std::uint64_t id) {
  MatrixStrategy s(n);
  for (std::size_t i = s.entries_.size(); i-- > 0;) {
    s.entries_[i] = static_cast<std::uint8_t>(id % s.modulus());
    id /= s.modulus();
  }
  if (id != 0) throw InputError("matrix strategy id out of range");
  return s;
}

MatrixStrategy MatrixStrategy::plus(const MatrixStrategy& other) const {
  if (other.n_ != n_) throw InputError("matrix parameter mismatch in sum");
  MatrixStrategy out(n_);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    out.entries_[i] =
        static_cast<std::uint8_t>((entries_[i] + other.entries_[i]) % modulus());
  return out;
}

namespace {

void check_params(int n, const MatrixStrategy& x, const MatrixStrategy& y,
                  const MatrixStrategy& z) {
  if (x.n() != n || y.n() != n || z.n() != n)
    throw InputError("matrix parameter mismatch");
}

inline bool zero_or_one(int v, int m) {
  int r = v % m;
  if (r < 0) r += m;
  return r == 0 || r == 1;
}

}  // namespace

bool gn_payoff_conditions(int n, const MatrixStrategy& x,
                          const MatrixStrategy& y, const MatrixStrategy& z) {
  check_params(n, x, y, z);
  const int m = n + 1;
  if (y.at(1, 1) != 0) return false;
  for (int k = 1; k < n - 1; ++k) {
    if (!zero_or_one(y.at(k + 1, 2) + z.at(k + 1, 1) - x.at(k, 2) - y.at(k, 1),
                     m))
      return false;
  }
  return zero_or_one(z.at(1, 2) - x.at(n - 1, 2) - y.at(n - 1, 1), m);
}

bool semiperfect_triple(int n, const MatrixStrategy& x,
                        const MatrixStrategy& y, const MatrixStrategy& z) {
  check_params(n, x, y, z);
  const int m = n + 1;
  // (x, y, z) as three consecutive cells, conditions on the middle one.
  if (y.at(1, 1) != 0) return false;
  for (int k = 1; k < n - 1; ++k) {
    int diff = y.at(k + 1, 2) + z.at(k + 1, 1) - x.at(k, 2) - y.at(k, 1);
    if (!zero_or_one(diff, m)) return false;
  }
  int tail = z.at(1, 2) - x.at(n - 1, 2) - y.at(n - 1, 1);
  return zero_or_one(tail, m);
}

bool perfect_triple(int n, const MatrixStrategy& x, const MatrixStrategy& y,
                    const MatrixStrategy& z) {
  check_params(n, x, y, z);
  const int m = n + 1;
  if (y.at(1, 1) != 0) return false;
  for (int k = 1; k < n - 1; ++k) {
    if ((x.at(k, 2) + y.at(k, 1)) % m != (y.at(k + 1, 2) + z.at(k + 1, 1)) % m)
      return false;
  }
  return (x.at(n - 1, 2) + y.at(n - 1, 1)) % m == z.at(1, 2) % m;
}

}  // namespace cellgames::games
