#include <doctest.h>

#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "pickleball/sampling.hpp"
#include "pickleball/solver.hpp"
#include "support/reference_solver.hpp"

using namespace pickleball;

namespace {

// Gambler's ruin on {0..4} with up-probability p: transient states {1,2,3}
// mapped to ordinals {0,1,2}, absorbing 0 -> column B, 4 -> column A. With
// p the server's rally probability this is also the tennis deuce game
// (deuce = 2, advantage server = 3, advantage receiver = 1).
struct Fixture {
  SparseRationalMatrix q{3, 3};
  SparseRationalMatrix s{3, 2};
};

Fixture gamblers_ruin(const Rational& p) {
  Rational q = 1 - p;
  Fixture f;
  f.s.add(0, kColWinB, q);
  f.q.add(0, 1, p);
  f.q.add(1, 0, q);
  f.q.add(1, 2, p);
  f.q.add(2, 1, q);
  f.s.add(2, kColWinA, p);
  return f;
}

std::vector<std::vector<int>> singleton_group(int m) {
  std::vector<int> all(m);
  std::iota(all.begin(), all.end(), 0);
  return {all};
}

std::vector<Rational> absorb_a_rhs(const SparseRationalMatrix& s) {
  std::vector<Rational> rhs(s.row_count(), Rational(0));
  for (int r = 0; r < s.row_count(); ++r)
    if (const Rational* v = s.find(r, kColWinA)) rhs[r] = *v;
  return rhs;
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("symmetric gambler's ruin from the middle state") {
    auto f = gamblers_ruin(make_rational(1, 2));
    auto groups = singleton_group(3);

    auto a = solve_transient_system(f.q, absorb_a_rhs(f.s), groups);
    CHECK(a[1] == make_rational(1, 2));

    std::vector<Rational> ones(3, Rational(1));
    auto t = solve_transient_system(f.q, ones, groups);
    CHECK(t[1] == 4);
    CHECK(t[0] == 3);
    CHECK(t[2] == 3);

    auto u = solve_transient_system(f.q, t, groups);
    Rational variance = 2 * u[1] - t[1] - t[1] * t[1];
    CHECK(variance == 8);
  }

  TEST_CASE("gambler's ruin values against the explicit fundamental matrix") {
    // For p = 1/2 the inverse of I - Q is known in closed form.
    auto f = gamblers_ruin(make_rational(1, 2));
    auto fm = testing::fundamental_matrix(f.q);
    testing::DenseMatrix expected = {
        {make_rational(3, 2), Rational(1), make_rational(1, 2)},
        {Rational(1), Rational(2), Rational(1)},
        {make_rational(1, 2), Rational(1), make_rational(3, 2)},
    };
    CHECK(fm == expected);

    auto ref = testing::reference_solve(f.q, f.s);
    CHECK(ref.absorb_a[1] == make_rational(1, 2));
    CHECK(ref.mean[1] == 4);
    CHECK(ref.variance[1] == 8);
  }

  TEST_CASE("gambler's ruin values against truncated-horizon enumeration") {
    auto f = gamblers_ruin(make_rational(1, 2));
    const int horizon = 120;
    auto sums = testing::truncated_horizon(f.q, 1, horizon);
    // From every state the chain absorbs within two steps with probability
    // at least 1/2, so P(T > k + 2) <= P(T > k) / 2 and the tails telescope:
    //   E tail      <= 4 * residual
    //   E[T^2] tail <= ((2K+1) * 4 + 20) * residual
    CHECK(sums.expected_partial <= 4);
    CHECK(4 - sums.expected_partial <= 4 * sums.residual_mass);
    Rational m2 = 24;  // Var 8 + mean 16
    CHECK(sums.second_moment_partial <= m2);
    CHECK(m2 - sums.second_moment_partial <= (4 * (2 * horizon + 1) + 20) * sums.residual_mass);
  }

  TEST_CASE("tennis deuce game: server win probability is p^2/(p^2+q^2)") {
    const std::pair<long, long> points[] = {{1, 2}, {3, 5}, {2, 3}, {1, 4}, {9, 10}};
    for (auto [num, den] : points) {
      Rational p = make_rational(num, den);
      Rational q = 1 - p;
      auto f = gamblers_ruin(p);
      auto a = solve_transient_system(f.q, absorb_a_rhs(f.s), singleton_group(3));
      CHECK(a[1] == p * p / (p * p + q * q));
    }
  }

  TEST_CASE("pickleball deuce cluster matches the full-game chain") {
    // The 14-state deuce game is the endgame cluster of any side-out chain:
    // once there, play never leaves the cluster except by absorption, so
    // the standalone fixture and the full n = 11 model must agree exactly.
    RallyParams params(make_rational(11, 25), make_rational(2, 5));
    auto model = build_side_out(11, params);
    auto full = absorption_vector(model, Team::A);

    // Standalone fixture: states relabeled 0..11 in cluster order.
    auto groups = elimination_groups(model.system);
    const auto& cluster = groups.front();
    REQUIRE(cluster.size() == 12);
    SparseRationalMatrix q(12, 12), s(12, 2);
    std::vector<int> local(model.system.transient_count(), -1);
    for (int a = 0; a < 12; ++a) local[cluster[a]] = a;
    for (int a = 0; a < 12; ++a) {
      for (const auto& [c, v] : model.transient.row(cluster[a])) {
        REQUIRE(local[c] >= 0);  // cluster is closed until absorption
        q.add(a, local[c], v);
      }
      for (const auto& [c, v] : model.absorbing.row(cluster[a])) s.add(a, c, v);
    }
    auto standalone = solve_transient_system(q, absorb_a_rhs(s), singleton_group(12));
    for (int a = 0; a < 12; ++a) CHECK(standalone[a] == full[cluster[a]]);

    // And the standalone fixture agrees with the dense reference, entrywise.
    auto ref = testing::reference_solve(q, s);
    for (int a = 0; a < 12; ++a) CHECK(standalone[a] == ref.absorb_a[a]);
  }

  TEST_CASE("structured elimination equals the dense reference on small games") {
    RationalSampler sampler(321);
    for (auto kind : {SystemKind::SideOut, SystemKind::ModifiedRally, SystemKind::HybridRally}) {
      auto system = make_system(kind, 4);
      RallyParams params(sampler.next_open_unit(9), sampler.next_open_unit(9));
      auto model = build_transition_model(system, params);
      auto ref = testing::reference_solve(model.transient, model.absorbing);

      CHECK(absorption_vector(model, Team::A) == ref.absorb_a);
      CHECK(absorption_vector(model, Team::B) == ref.absorb_b);
      auto moments = duration_moments(model);
      CHECK(moments.mean == ref.mean);
      CHECK(moments.variance == ref.variance);

      // The structured grouping and a single dense group are the same solve.
      auto rhs = absorb_a_rhs(model.absorbing);
      CHECK(solve_transient_system(model.transient, rhs, elimination_groups(system)) ==
            solve_transient_system(model.transient, rhs, singleton_group(system.transient_count())));
    }
  }

  TEST_CASE("solves are invariant under state relabeling") {
    auto f = gamblers_ruin(make_rational(2, 7));
    const int perm[3] = {2, 0, 1};
    SparseRationalMatrix qp(3, 3), sp(3, 2);
    for (int r = 0; r < 3; ++r) {
      for (const auto& [c, v] : f.q.row(r)) qp.add(perm[r], perm[c], v);
      for (const auto& [c, v] : f.s.row(r)) sp.add(perm[r], c, v);
    }
    auto x = solve_transient_system(f.q, absorb_a_rhs(f.s), singleton_group(3));
    auto xp = solve_transient_system(qp, absorb_a_rhs(sp), singleton_group(3));
    for (int r = 0; r < 3; ++r) CHECK(xp[perm[r]] == x[r]);
  }

  TEST_CASE("deterministic runs: certain server sweeps the game") {
    RallyParams certain(Rational(1), Rational(1));

    auto side_out = build_side_out(11, certain);
    auto start = index_of(side_out.system, GameState::live(0, 0, 2));
    auto [pa, pb] = absorption_probabilities(side_out, start);
    CHECK(pa == 1);
    CHECK(pb == 0);
    CHECK(expected_duration(side_out, start) == 11);
    CHECK(duration_variance(side_out, start) == 0);

    auto modified = build_modified_rally(21, certain);
    CHECK(expected_duration(modified, index_of(modified.system, GameState::live(0, 0, 1))) == 21);

    auto hybrid = build_hybrid(21, certain);
    auto hy_start = index_of(hybrid.system, GameState::live(0, 0, 2));
    CHECK(expected_duration(hybrid, hy_start) == 21);
    CHECK(duration_variance(hybrid, hy_start) == 0);
  }

  TEST_CASE("degenerate parameters are rejected eagerly") {
    auto model = build_side_out(11, RallyParams(Rational(0), Rational(0)));
    CHECK_THROWS_AS(absorption_vector(model, Team::A), DegenerateChainError);
    CHECK_THROWS_AS(expected_duration_vector(model), DegenerateChainError);
    CHECK_THROWS_AS(duration_moments(model), DegenerateChainError);
    CHECK_THROWS_AS(chain_summary(model, GameState::live(0, 0, 2)), DegenerateChainError);
  }

  TEST_CASE("chain summary rejects absorbed starts and sums to one") {
    RallyParams params(make_rational(1, 3), make_rational(2, 5));
    auto model = build_modified_rally(21, params);
    CHECK_THROWS_AS(chain_summary(model, GameState::win(Team::A)), std::domain_error);

    auto summary = chain_summary(model, GameState::live(0, 0, 1));
    CHECK(summary.absorb_prob_a + summary.absorb_prob_b == 1);
    CHECK(summary.duration_variance >= 0);
    CHECK(summary.mean_duration >= 21);  // at least n rallies to any win
  }

  TEST_CASE("complementarity holds exactly at sampled parameter points") {
    RationalSampler sampler(55);
    for (auto kind : {SystemKind::SideOut, SystemKind::ModifiedRally, SystemKind::HybridRally}) {
      auto system = make_system(kind, 8);
      for (int rep = 0; rep < 3; ++rep) {
        RallyParams params(sampler.next_open_unit(200), sampler.next_open_unit(200));
        auto model = build_transition_model(system, params);
        auto a = absorption_vector(model, Team::A);
        auto b = absorption_vector(model, Team::B);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] + b[i] == 1);
      }
    }
  }

  TEST_CASE("win probability is monotone in p_A at fixed p_B") {
    auto system = make_system(SystemKind::SideOut, 11);
    Rational prev = -1;
    for (int k = 1; k <= 9; ++k) {
      auto model = build_side_out(11, RallyParams(make_rational(k, 10), make_rational(44, 100)));
      auto a = absorption_vector(model, Team::A);
      Rational win = a[index_of(system, GameState::live(0, 0, 2))];
      CHECK(win >= prev);
      prev = win;
    }
  }

  TEST_CASE("truncated-horizon power sums converge to the exact absorption value") {
    // Floating-point partial sums of Q^k S must land within the transient
    // residual of the exact answer; 2000 steps leaves essentially no mass.
    RallyParams params(make_rational(11, 25), make_rational(23, 50));
    auto model = build_side_out(11, params);
    const int m = model.system.transient_count();
    const int start = index_of(model.system, GameState::live(0, 0, 2));

    std::vector<double> mass(m, 0.0);
    mass[start] = 1.0;
    double partial_a = 0.0;
    for (int k = 0; k < 2000; ++k) {
      std::vector<double> next(m, 0.0);
      for (int r = 0; r < m; ++r) {
        if (mass[r] == 0.0) continue;
        if (const Rational* v = model.absorbing.find(r, kColWinA)) partial_a += mass[r] * to_double(*v);
        for (const auto& [c, v] : model.transient.row(r)) next[c] += mass[r] * to_double(v);
      }
      mass = std::move(next);
    }
    double residual = 0.0;
    for (double v : mass) residual += v;

    auto a = absorption_vector(model, Team::A);
    double exact = to_double(a[start]);
    CHECK(std::abs(exact - partial_a) <= residual + 1e-9);
    CHECK(residual < 1e-12);
  }
}
