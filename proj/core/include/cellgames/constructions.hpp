#pragma once

#include <cstdint>
#include <vector>

#include "cellgames/engine.hpp"
#include "cellgames/matrix_strategy.hpp"
#include "cellgames/periodic.hpp"

namespace cellgames::constructions {

using games::MatrixStrategy;

/// Consecutive cells of a matrix-game profile, first cell at `start`.
struct MatrixWindow {
  int n = 3;
  std::int64_t start = 0;
  std::vector<MatrixStrategy> cells;
};

using MatrixProfile = engine::PeriodicSequence<MatrixStrategy>;

/// z_1..z_k in Z_modulus with z_1 = u, z_k = v and consecutive differences
/// in {0, 1}: the needed +1 steps first, then constant. Requires k >= modulus.
std::vector<int> zig_sequence(int modulus, int u, int v, int k);

/// The all-zero equilibrium and the [0 n]-rows equilibrium of the matrix
/// game, as constant profiles.
MatrixProfile f_profile(int n);
MatrixProfile g_profile(int n);

/// True when every interior player of the window satisfies the semi-perfect
/// (resp. perfect) conditions.
bool window_semiperfect_interior(const MatrixWindow& w);
bool window_perfect_interior(const MatrixWindow& w);

/// Semi-perfect at every position (hence a Nash equilibrium of the matrix
/// game); checked over the finite periodic region.
bool verify_matrix_profile(const MatrixProfile& profile);

/// Window over [min(a,b), max(a,b)] with M at a, the zero matrix at b, and
/// perfect at every strictly interior player. Requires M top-left zero and
/// 0 < |a-b| < n.
MatrixWindow perfect_profile(int n, const MatrixStrategy& M, std::int64_t a,
                             std::int64_t b);

/// Cell-wise sum mod n+1 of two windows with equal n and span.
MatrixWindow sum_windows(const MatrixWindow& p, const MatrixWindow& q);

/// Window with A at a, B at b, semi-perfect at every interior player.
/// Requires A, B top-left zero and |a-b| > n.
MatrixWindow semiperfect_profile(int n, const MatrixStrategy& A,
                                 const MatrixStrategy& B, std::int64_t a,
                                 std::int64_t b);

/// Appends (prepends) one cell so the old boundary player becomes
/// semi-perfect too; the new cell is a deterministic function of the
/// boundary pair. Requires window length >= 2 and boundary top-left zero.
MatrixWindow expand_right(int n, const MatrixWindow& w);
MatrixWindow expand_left(int n, const MatrixWindow& w);

/// Expands both ways until the boundary pair repeats, yielding an eventually
/// periodic profile that is semi-perfect everywhere and matches the window
/// on its span.
MatrixProfile close_to_equilibrium(int n, const MatrixWindow& w);

/// Equilibrium of the three-strategy line game agreeing with s at a and t at
/// b; requires |a-b| > 1. Strategy ids are the residues 0..2.
engine::EventuallyPeriodicProfile g1_witness(games::StrategyId s,
                                             games::StrategyId t,
                                             std::int64_t a, std::int64_t b);

/// Equilibrium of the pennies game agreeing with f at a and g at b;
/// requires |a-b| = 1 or |a-b| > 2 and f, g equilibria (residue cells with
/// skip differences in {0,1}).
engine::EventuallyPeriodicProfile g2_witness(
    const engine::EventuallyPeriodicProfile& f,
    const engine::EventuallyPeriodicProfile& g, std::int64_t a,
    std::int64_t b);

/// Equilibrium of the matrix game agreeing with f at a and g at b; requires
/// |a-b| not in {0, n} and f, g verified equilibria.
MatrixProfile gn_witness(int n, const MatrixProfile& f, const MatrixProfile& g,
                         std::int64_t a, std::int64_t b);

/// Diagonal containment for a window of length >= n+1 whose first cell has
/// top-right entry zero: sums along the diagonal stay in {0..k} and the
/// top-right entry n cells later avoids [n].
bool diagonal_check(int n, const MatrixWindow& w);

}  // namespace cellgames::constructions
