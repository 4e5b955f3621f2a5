#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cellgames/constructions.hpp"
#include "cellgames/engine.hpp"
#include "cellgames/errors.hpp"
#include "support.hpp"

using namespace cellgames::constructions;
using cellgames::games::GameSpec;
using cellgames::games::MatrixStrategy;
using cellgames::games::build_game;

namespace {

MatrixStrategy from_rows(int n, std::initializer_list<std::pair<int, int>> rows) {
  MatrixStrategy m(n);
  int r = 1;
  for (const auto& [c1, c2] : rows) {
    m.set(r, 1, c1);
    m.set(r, 2, c2);
    ++r;
  }
  return m;
}

}  // namespace

TEST_CASE("zig sequences") {
  CHECK(zig_sequence(3, 0, 2, 3) == std::vector<int>{0, 1, 2});
  CHECK(zig_sequence(5, 3, 3, 5) == std::vector<int>{3, 3, 3, 3, 3});
  CHECK(zig_sequence(3, 2, 1, 4) == std::vector<int>{2, 0, 1, 1});
  CHECK_THROWS_AS(zig_sequence(3, 0, 2, 2), cellgames::InputError);
  // endpoints and steps, seeded sweep
  testsupport::Rng rng(1);
  for (int i = 0; i < 2000; ++i) {
    const int m = testsupport::rand_int(rng, 1, 9);
    const int u = testsupport::rand_int(rng, 0, m - 1);
    const int v = testsupport::rand_int(rng, 0, m - 1);
    const int k = m + testsupport::rand_int(rng, 0, 5);
    auto z = zig_sequence(m, u, v, k);
    REQUIRE(static_cast<int>(z.size()) == k);
    CHECK(z.front() == u);
    CHECK(z.back() == v);
    for (std::size_t j = 1; j < z.size(); ++j)
      CHECK(((z[j] - z[j - 1]) % m + m) % m <= 1);
  }
}

TEST_CASE("constant named profiles") {
  MatrixProfile f = f_profile(3);
  CHECK(verify_matrix_profile(f));
  CHECK(f.value(1000000) == MatrixStrategy(3));
  CHECK(f.value(-1000000) == MatrixStrategy(3));
  MatrixProfile g = g_profile(3);
  CHECK(verify_matrix_profile(g));
  CHECK(g.value(7) == from_rows(3, {{0, 3}, {0, 3}}));
  for (int n : {4, 5, 8, 64}) {
    CHECK(verify_matrix_profile(f_profile(n)));
    CHECK(verify_matrix_profile(g_profile(n)));
  }
  CHECK_THROWS_AS(f_profile(2), cellgames::InputError);
  CHECK_THROWS_AS(f_profile(65), cellgames::InputError);
}

TEST_CASE("perfect window, forward worked example") {
  MatrixStrategy m = from_rows(3, {{0, 1}, {2, 3}});
  MatrixWindow w = perfect_profile(3, m, 0, 2);
  REQUIRE(w.cells.size() == 3);
  CHECK(w.cells[0] == m);
  CHECK(w.cells[1] == from_rows(3, {{0, 0}, {1, 1}}));
  CHECK(w.cells[2] == MatrixStrategy(3));
  CHECK(window_perfect_interior(w));
}

TEST_CASE("perfect window edge and error cases") {
  MatrixWindow vac = perfect_profile(3, MatrixStrategy(3), 0, 1);
  CHECK(vac.cells.size() == 2);
  CHECK(vac.cells[0] == MatrixStrategy(3));
  CHECK(vac.cells[1] == MatrixStrategy(3));

  MatrixStrategy bad(3);
  bad.set(1, 1, 1);
  CHECK_THROWS_AS(perfect_profile(3, bad, 0, 2), cellgames::InputError);
  CHECK_THROWS_AS(perfect_profile(3, MatrixStrategy(3), 0, 0),
                  cellgames::InputError);
  CHECK_THROWS_AS(perfect_profile(3, MatrixStrategy(3), 0, 3),
                  cellgames::InputError);
}

TEST_CASE("perfect windows from random seeds, both orientations") {
  testsupport::Rng rng(42);
  for (int n : {3, 4, 5, 8}) {
    for (int i = 0; i < 200; ++i) {
      MatrixStrategy m = testsupport::random_matrix(rng, n);
      m.set(1, 1, 0);
      const int d = testsupport::rand_int(rng, 1, n - 1);
      // forward: m sits at the left end
      MatrixWindow fwd = perfect_profile(n, m, 0, d);
      CHECK(window_perfect_interior(fwd));
      CHECK(fwd.cells.front() == m);
      CHECK(fwd.cells.back() == MatrixStrategy(n));
      // mirrored: m sits at the right end
      MatrixWindow bwd = perfect_profile(n, m, d, 0);
      CHECK(window_perfect_interior(bwd));
      CHECK(bwd.cells.front() == MatrixStrategy(n));
      CHECK(bwd.cells.back() == m);
    }
  }
}

TEST_CASE("sums of perfect windows stay perfect") {
  testsupport::Rng rng(43);
  // identity
  MatrixStrategy m = from_rows(3, {{0, 2}, {1, 3}});
  MatrixWindow p = perfect_profile(3, m, 0, 2);
  MatrixWindow zero{3, 0, {MatrixStrategy(3), MatrixStrategy(3), MatrixStrategy(3)}};
  MatrixWindow s = sum_windows(p, zero);
  for (std::size_t i = 0; i < p.cells.size(); ++i) CHECK(s.cells[i] == p.cells[i]);

  for (int n : {3, 4}) {
    for (int i = 0; i < 200; ++i) {
      MatrixStrategy a = testsupport::random_matrix(rng, n);
      a.set(1, 1, 0);
      MatrixStrategy b = testsupport::random_matrix(rng, n);
      b.set(1, 1, 0);
      const int d = testsupport::rand_int(rng, 1, n - 1);
      MatrixWindow left = perfect_profile(n, a, 0, d);
      MatrixWindow right = perfect_profile(n, b, d, 0);
      MatrixWindow sum = sum_windows(left, right);
      CHECK(window_perfect_interior(sum));
      CHECK(sum.cells.front() == a);
      CHECK(sum.cells.back() == b);
    }
  }
  CHECK_THROWS_AS(sum_windows(p, MatrixWindow{3, 1, p.cells}),
                  cellgames::InputError);
}

TEST_CASE("semi-perfect interpolation windows") {
  // all-zero endpoints give the all-zero window
  MatrixWindow z = semiperfect_profile(3, MatrixStrategy(3), MatrixStrategy(3),
                                       0, 5);
  REQUIRE(z.cells.size() == 6);
  for (const auto& c : z.cells) CHECK(c == MatrixStrategy(3));

  // the named equilibrium cells across a gap of four
  MatrixStrategy f3(3);
  MatrixStrategy g3 = from_rows(3, {{0, 3}, {0, 3}});
  MatrixWindow w = semiperfect_profile(3, f3, g3, 0, 4);
  CHECK(window_semiperfect_interior(w));
  CHECK(w.cells.front() == f3);
  CHECK(w.cells.back() == g3);

  CHECK_THROWS_AS(semiperfect_profile(3, f3, g3, 0, 3), cellgames::InputError);

  testsupport::Rng rng(44);
  for (int n : {3, 4, 5}) {
    for (int i = 0; i < 150; ++i) {
      MatrixStrategy a = testsupport::random_matrix(rng, n);
      a.set(1, 1, 0);
      MatrixStrategy b = testsupport::random_matrix(rng, n);
      b.set(1, 1, 0);
      const int d = n + testsupport::rand_int(rng, 1, n + 3);
      const bool flip = rng() & 1;
      MatrixWindow win = flip ? semiperfect_profile(n, a, b, d, 0)
                              : semiperfect_profile(n, a, b, 0, d);
      CHECK(window_semiperfect_interior(win));
      CHECK(win.cells[flip ? d : 0] == a);
      CHECK(win.cells[flip ? 0 : d] == b);
    }
  }
}

TEST_CASE("right expansion reproduces the explicit boundary matrix") {
  MatrixWindow w{3, 0,
                 {from_rows(3, {{0, 1}, {2, 3}}), from_rows(3, {{0, 2}, {3, 1}})}};
  MatrixWindow e = expand_right(3, w);
  REQUIRE(e.cells.size() == 3);
  CHECK(e.cells[2] == from_rows(3, {{0, 2}, {0, 0}}));
  CHECK(window_semiperfect_interior(e));

  MatrixWindow zeros{3, 0, {MatrixStrategy(3), MatrixStrategy(3)}};
  CHECK(expand_right(3, zeros).cells[2] == MatrixStrategy(3));
  CHECK(expand_left(3, zeros).cells[0] == MatrixStrategy(3));

  CHECK_THROWS_AS(expand_right(3, MatrixWindow{3, 0, {MatrixStrategy(3)}}),
                  cellgames::InputError);
}

TEST_CASE("expansions keep the old boundary semi-perfect") {
  testsupport::Rng rng(45);
  for (int n : {3, 4, 5}) {
    for (int i = 0; i < 170; ++i) {
      auto w = testsupport::random_semiperfect_window(
          rng, n, testsupport::rand_int(rng, 2, n + 3), false);
      REQUIRE(window_semiperfect_interior(w));
      MatrixWindow r = expand_right(n, w);
      CHECK(window_semiperfect_interior(r));
      MatrixWindow l = expand_left(n, w);
      CHECK(window_semiperfect_interior(l));
    }
  }
}

TEST_CASE("closing windows into equilibria") {
  MatrixWindow zeros{3, 0, {MatrixStrategy(3), MatrixStrategy(3)}};
  MatrixProfile closed = close_to_equilibrium(3, zeros);
  CHECK(verify_matrix_profile(closed));
  CHECK(closed.value(-50) == MatrixStrategy(3));
  CHECK(closed.value(50) == MatrixStrategy(3));

  MatrixStrategy f3(3);
  MatrixStrategy g3 = from_rows(3, {{0, 3}, {0, 3}});
  MatrixWindow w = semiperfect_profile(3, f3, g3, 0, 4);
  MatrixProfile p = close_to_equilibrium(3, w);
  CHECK(verify_matrix_profile(p));
  for (int i = 0; i <= 4; ++i) CHECK(p.value(i) == w.cells[i]);

  testsupport::Rng rng(46);
  for (int i = 0; i < 100; ++i) {
    auto win = testsupport::random_semiperfect_window(rng, 3, 5, false);
    MatrixProfile e = close_to_equilibrium(3, win);
    CHECK(verify_matrix_profile(e));
    for (int j = 0; j < 5; ++j) CHECK(e.value(j) == win.cells[j]);
  }
}

TEST_CASE("line-game witnesses") {
  auto p = g1_witness(0, 2, 0, 2);
  CHECK(p.value(0) == 0);
  CHECK(p.value(2) == 2);
  cellgames::engine::Analysis g1(build_game(GameSpec::g1()));
  CHECK(g1.verify_profile(p));
  // flipped positions
  auto q = g1_witness(2, 0, 5, 1);
  CHECK(q.value(5) == 2);
  CHECK(q.value(1) == 0);
  CHECK(g1.verify_profile(q));
  CHECK_THROWS_AS(g1_witness(0, 2, 0, 1), cellgames::InputError);
}

TEST_CASE("pennies-game witnesses") {
  cellgames::engine::Analysis g2(build_game(GameSpec::g2()));
  cellgames::engine::EventuallyPeriodicProfile const0{0, {0}, {}, {0}};
  cellgames::engine::EventuallyPeriodicProfile const1{0, {1}, {}, {1}};

  auto adj = g2_witness(const0, const1, 0, 1);
  CHECK(g2.verify_profile(adj));
  CHECK(adj.value(0) == 0);
  CHECK(adj.value(1) == 1);
  CHECK(adj.value(2) == 0);
  CHECK(adj.value(-3) == 1);

  auto far = g2_witness(const0, const1, 0, 4);
  CHECK(g2.verify_profile(far));
  CHECK(far.value(0) == 0);
  CHECK(far.value(4) == 1);

  auto odd = g2_witness(const0, const1, 2, -1);
  CHECK(g2.verify_profile(odd));
  CHECK(odd.value(2) == 0);
  CHECK(odd.value(-1) == 1);

  CHECK_THROWS_AS(g2_witness(const0, const1, 0, 2), cellgames::InputError);
  // non-equilibrium input rejected
  cellgames::engine::EventuallyPeriodicProfile pennies{0, {3}, {}, {3}};
  CHECK_THROWS_AS(g2_witness(pennies, const1, 0, 1), cellgames::InputError);

  testsupport::Rng rng(47);
  for (int i = 0; i < 60; ++i) {
    auto f = testsupport::random_engine_equilibrium(rng, g2, 3);
    auto g = testsupport::random_engine_equilibrium(rng, g2, 3);
    for (std::int64_t d : {1, 3, 4, 5, 6}) {
      auto e = g2_witness(f, g, 0, d);
      CHECK(g2.verify_profile(e));
      CHECK(e.value(0) == f.value(0));
      CHECK(e.value(d) == g.value(d));
    }
  }
}

TEST_CASE("matrix-game witnesses, both proof paths") {
  MatrixProfile f = f_profile(3);
  MatrixProfile g = g_profile(3);

  MatrixProfile near = gn_witness(3, f, g, 0, 2);  // below the blocked gap
  CHECK(verify_matrix_profile(near));
  CHECK(near.value(0) == f.value(0));
  CHECK(near.value(2) == g.value(2));

  MatrixProfile far = gn_witness(3, f, g, 0, 4);  // above the blocked gap
  CHECK(verify_matrix_profile(far));
  CHECK(far.value(0) == f.value(0));
  CHECK(far.value(4) == g.value(4));

  CHECK_THROWS_AS(gn_witness(3, f, g, 0, 3), cellgames::InputError);
  CHECK_THROWS_AS(gn_witness(3, f, g, 2, 2), cellgames::InputError);

  // engine cross-check at n = 3: the same endpoints are jointly reachable
  cellgames::engine::Analysis gn3(build_game(GameSpec::gn(3)));
  for (std::int64_t d : {1, 2, 4, 5}) {
    MatrixProfile e = gn_witness(3, f, g, 0, d);
    auto engine_profile = testsupport::to_engine_profile(e);
    CHECK(gn3.verify_profile(engine_profile));
    auto found = gn3.constrained_equilibrium(
        {{0, cellgames::games::gn_strategy_id(f.value(0))},
         {d, cellgames::games::gn_strategy_id(g.value(d))}});
    CHECK(found.has_value());
  }
}

TEST_CASE("distance-n endpoints are jointly unreachable at n=3") {
  MatrixProfile f = f_profile(3);
  MatrixProfile g = g_profile(3);
  cellgames::engine::Analysis gn3(build_game(GameSpec::gn(3)));
  auto found = gn3.constrained_equilibrium(
      {{0, cellgames::games::gn_strategy_id(f.value(0))},
       {3, cellgames::games::gn_strategy_id(g.value(3))}});
  CHECK_FALSE(found.has_value());
}

TEST_CASE("diagonal containment on seeded semi-perfect windows") {
  MatrixWindow fwin{3, 0,
                    {MatrixStrategy(3), MatrixStrategy(3), MatrixStrategy(3),
                     MatrixStrategy(3)}};
  CHECK(diagonal_check(3, fwin));

  testsupport::Rng rng(48);
  for (int n : {3, 4, 6, 7}) {
    for (int i = 0; i < 1000; ++i) {
      auto w = testsupport::random_semiperfect_window(rng, n, n + 1, true);
      REQUIRE(window_semiperfect_interior(w));
      CHECK(diagonal_check(n, w));
    }
  }

  CHECK_THROWS_AS(diagonal_check(3, MatrixWindow{3, 0, {MatrixStrategy(3)}}),
                  cellgames::InputError);
  MatrixStrategy off(3);
  off.set(1, 2, 1);
  CHECK_THROWS_AS(
      diagonal_check(
          3, MatrixWindow{3, 0, {off, MatrixStrategy(3), MatrixStrategy(3),
                                 MatrixStrategy(3)}}),
      cellgames::InputError);
}

TEST_CASE("random matrix equilibria verify and have distance-n obstructions") {
  testsupport::Rng rng(49);
  for (int i = 0; i < 50; ++i) {
    MatrixProfile e = testsupport::random_matrix_equilibrium(rng, 3);
    CHECK(verify_matrix_profile(e));
  }
}
