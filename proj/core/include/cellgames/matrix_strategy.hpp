#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cellgames::games {

/// Strategy of the matrix game with parameter n >= 3: an (n-1) x 2 array of
/// residues mod n+1. Rows are 1-based (1..n-1), columns 1 and 2, matching
/// the usual subscript convention for these games.
class MatrixStrategy {
 public:
  explicit MatrixStrategy(int n);  // all-zero matrix

  int n() const { return n_; }
  int modulus() const { return n_ + 1; }
  int rows() const { return n_ - 1; }

  int at(int row, int col) const;        // row in [1, n-1], col in {1, 2}
  void set(int row, int col, int value);  // value reduced mod n+1

  std::string label() const;  // "[r11,r12;r21,r22;...]"
  static MatrixStrategy from_label(int n, std::string_view text);

  /// Row-major big-endian digit encoding; id 0 is the all-zero matrix.
  std::uint64_t encode() const;
  static MatrixStrategy decode(int n, std::uint64_t id);

  /// Element-wise sum mod n+1.
  MatrixStrategy plus(const MatrixStrategy& other) const;

  friend bool operator==(const MatrixStrategy& a, const MatrixStrategy& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }
  friend bool operator<(const MatrixStrategy& a, const MatrixStrategy& b) {
    return a.entries_ < b.entries_;
  }

 private:
  int n_;
  std::vector<std::uint8_t> entries_;  // row-major, (n-1)*2 residues
};

/// The three pay-off conditions of the matrix game, transcribed from the
/// pay-off definition: middle strategy y against neighbors x (left) and
/// z (right). Pay-off is 1 exactly when this returns true.
bool gn_payoff_conditions(int n, const MatrixStrategy& x,
                          const MatrixStrategy& y, const MatrixStrategy& z);

/// Semi-perfection of the triple (x, y, z) read as consecutive cells with y
/// in the middle; transcribed from the semi-perfect profile definition.
/// Coincides with gn_payoff_conditions (the conditions are the same).
bool semiperfect_triple(int n, const MatrixStrategy& x,
                        const MatrixStrategy& y, const MatrixStrategy& z);

/// Perfection: the strict-equality variant. perfect implies semi-perfect.
bool perfect_triple(int n, const MatrixStrategy& x, const MatrixStrategy& y,
                    const MatrixStrategy& z);

}  // namespace cellgames::games
