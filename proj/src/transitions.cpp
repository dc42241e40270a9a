#include "pickleball/transitions.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace pickleball {

RallyParams::RallyParams(Rational pa, Rational pb) : p_a(std::move(pa)), p_b(std::move(pb)) {
  if (p_a < 0 || p_a > 1 || p_b < 0 || p_b > 1)
    throw std::domain_error("rally win probabilities must lie in [0,1]");
}

SparseRationalMatrix::SparseRationalMatrix(int rows, int cols) : cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  rows_.resize(static_cast<std::size_t>(rows));
}

void SparseRationalMatrix::add(int row, int col, const Rational& value) {
  if (row < 0 || row >= row_count() || col < 0 || col >= cols_)
    throw std::out_of_range("matrix entry out of range");
  auto& entries = rows_[static_cast<std::size_t>(row)];
  for (const auto& [c, v] : entries)
    if (c == col)
      throw std::logic_error("duplicate write to matrix entry (" + std::to_string(row) + "," +
                             std::to_string(col) + ")");
  if (value == 0) return;
  entries.emplace_back(col, value);
}

const Rational* SparseRationalMatrix::find(int row, int col) const {
  for (const auto& [c, v] : rows_.at(static_cast<std::size_t>(row)))
    if (c == col) return &v;
  return nullptr;
}

std::size_t SparseRationalMatrix::nonzero_count() const {
  std::size_t total = 0;
  for (const auto& r : rows_) total += r.size();
  return total;
}

Rational SparseRationalMatrix::row_sum(int r) const {
  Rational sum = 0;
  for (const auto& [c, v] : rows_.at(static_cast<std::size_t>(r))) sum += v;
  return sum;
}

namespace {

// Writes one table row at a time; mirrors the rule tables visually.
struct RowWriter {
  const ScoringSystem& sys;
  const RallyParams& par;
  SparseRationalMatrix& Q;
  SparseRationalMatrix& S;

  void q(int fi, int fj, int fk, int ti, int tj, int tk, const Rational& v) const {
    Q.add(index_of(sys, GameState::live(fi, fj, fk)), index_of(sys, GameState::live(ti, tj, tk)), v);
  }
  void s(int fi, int fj, int fk, Team winner, const Rational& v) const {
    S.add(index_of(sys, GameState::live(fi, fj, fk)), winner == Team::A ? kColWinA : kColWinB, v);
  }
};

TransitionModel assemble(const ScoringSystem& system, const RallyParams& params) {
  if (system.target < 4) throw std::domain_error("target score must be at least 4");
  const int m = system.transient_count();
  TransitionModel model{system, params, SparseRationalMatrix(m, m), SparseRationalMatrix(m, 2)};
  switch (system.kind) {
    case SystemKind::SideOut:
      side_out_rows::interior(system, params, model.transient, model.absorbing);
      side_out_rows::b_at_game_point(system, params, model.transient, model.absorbing);
      side_out_rows::a_at_game_point(system, params, model.transient, model.absorbing);
      side_out_rows::endgame(system, params, model.transient, model.absorbing);
      break;
    case SystemKind::ModifiedRally:
      modified_rally_rows::interior(system, params, model.transient, model.absorbing);
      modified_rally_rows::b_at_game_point_chaser_free(system, params, model.transient, model.absorbing);
      modified_rally_rows::b_at_game_point_chaser_frozen(system, params, model.transient, model.absorbing);
      modified_rally_rows::a_at_game_point_chaser_free(system, params, model.transient, model.absorbing);
      modified_rally_rows::a_at_game_point_chaser_frozen(system, params, model.transient, model.absorbing);
      modified_rally_rows::endgame(system, params, model.transient, model.absorbing);
      break;
    case SystemKind::HybridRally:
      hybrid_rows::interior(system, params, model.transient, model.absorbing);
      hybrid_rows::b_at_game_point_chaser_free(system, params, model.transient, model.absorbing);
      hybrid_rows::b_at_game_point_chaser_frozen(system, params, model.transient, model.absorbing);
      hybrid_rows::a_at_game_point_chaser_free(system, params, model.transient, model.absorbing);
      hybrid_rows::a_at_game_point_chaser_frozen(system, params, model.transient, model.absorbing);
      hybrid_rows::endgame(system, params, model.transient, model.absorbing);
      break;
  }
  return model;
}

}  // namespace

// ---------------------------------------------------------------------------
// Side-out scoring. Only the serving team scores; server codes rotate
// 1 -> 2 -> 3 -> 4 -> 1 on faults.
// ---------------------------------------------------------------------------

namespace side_out_rows {

void interior(const ScoringSystem& sys, const RallyParams& par, SparseRationalMatrix& Q,
              SparseRationalMatrix& S) {
  RowWriter w{sys, par, Q, S};
  const int n = sys.target;
  const Rational pa = par.p_a, qa = par.q_a(), pb = par.p_b, qb = par.q_b();
  for (int i = 0; i <= n - 2; ++i)
    for (int j = 0; j <= n - 2; ++j) {
      w.q(i, j, 1, i + 1, j, 1, pa);  w.q(i, j, 1, i, j, 2, qa);
      w.q(i, j, 2, i + 1, j, 2, pa);  w.q(i, j, 2, i, j, 3, qa);
      w.q(i, j, 3, i, j + 1, 3, pb);  w.q(i, j, 3, i, j, 4, qb);
      w.q(i, j, 4, i, j + 1, 4, pb);  w.q(i, j, 4, i, j, 1, qb);
    }
}

void b_at_game_point(const ScoringSystem& sys, const RallyParams& par, SparseRationalMatrix& Q,
                     SparseRationalMatrix& S) {
  RowWriter w{sys, par, Q, S};
  const int n = sys.target;
  const Rational pa = par.p_a, qa = par.q_a(), pb = par.p_b, qb = par.q_b();
  for (int i = 0; i <= n - 2; ++i) {
    w.q(i, n - 1, 1, i + 1, n - 1, 1, pa);  w.q(i, n - 1, 1, i, n - 1, 2, qa);
    w.q(i, n - 1, 2, i + 1, n - 1, 2, pa);  w.q(i, n - 1, 2, i, n - 1, 3, qa);
    w.s(i, n - 1, 3, Team::B, pb);          w.q(i, n - 1, 3, i, n - 1, 4, qb);
    w.s(i, n - 1, 4, Team::B, pb);          w.q(i, n - 1, 4, i, n - 1, 1, qb);
  }
}

void a_at_game_point(const ScoringSystem& sys, const RallyParams& par, SparseRationalMatrix& Q,
                     SparseRationalMatrix& S) {
  RowWriter w{sys, par, Q, S};
  const int n = sys.target;
  const Rational pa = par.p_a, qa = par.q_a(), pb = par.p_b, qb = par.q_b();
  for (int j = 0; j <= n - 2; ++j) {
    w.s(n - 1, j, 1, Team::A, pa);          w.q(n - 1, j, 1, n - 1, j, 2, qa);
    w.s(n - 1, j, 2, Team::A, pa);          w.q(n - 1, j, 2, n - 1, j, 3, qa);
    w.q(n - 1, j, 3, n - 1, j + 1, 3, pb);  w.q(n - 1, j, 3, n - 1, j, 4, qb);
    w.q(n - 1, j, 4, n - 1, j + 1, 4, pb);  w.q(n - 1, j, 4, n - 1, j, 1, qb);
  }
}

void endgame(const ScoringSystem& sys, const RallyParams& par, SparseRationalMatrix& Q,
             SparseRationalMatrix& S) {
  RowWriter w{sys, par, Q, S};
  const int n = sys.target;
  const Rational pa = par.p_a, qa = par.q_a(), pb = par.p_b, qb = par.q_b();
  // Deuce: a point for the server moves to that team's advantage.
  w.q(n - 1, n - 1, 1, n, n - 1, 1, pa);  w.q(n - 1, n - 1, 1, n - 1, n - 1, 2, qa);
  w.q(n - 1, n - 1, 2, n, n - 1, 2, pa);  w.q(n - 1, n - 1, 2, n - 1, n - 1, 3, qa);
  w.q(n - 1, n - 1, 3, n - 1, n, 3, pb);  w.q(n - 1, n - 1, 3, n - 1, n - 1, 4, qb);
  w.q(n - 1, n - 1, 4, n - 1, n, 4, pb);  w.q(n - 1, n - 1, 4, n - 1, n - 1, 1, qb);
  // Advantage Team B: an A point returns to deuce, a B point ends the game.
  w.q(n - 1, n, 1, n - 1, n - 1, 1, pa);  w.q(n - 1, n, 1, n - 1, n, 2, qa);
  w.q(n - 1, n, 2, n - 1, n - 1, 2, pa);  w.q(n - 1, n, 2, n - 1, n, 3, qa);
  w.s(n - 1, n, 3, Team::B, pb);          w.q(n - 1, n, 3, n - 1, n, 4, qb);
  w.s(n - 1, n, 4, Team::B, pb);          w.q(n - 1, n, 4, n - 1, n, 1, qb);
  // Advantage Team A, symmetric.
  w.s(n, n - 1, 1, Team::A, pa);          w.q(n, n - 1, 1, n, n - 1, 2, qa);
  w.s(n, n - 1, 2, Team::A, pa);          w.q(n, n - 1, 2, n, n - 1, 3, qa);
  w.q(n, n - 1, 3, n - 1, n - 1, 3, pb);  w.q(n, n - 1, 3, n, n - 1, 4, qb);
  w.q(n, n - 1, 4, n - 1, n - 1, 4, pb);  w.q(n, n - 1, 4, n, n - 1, 1, qb);
}

}  // namespace side_out_rows

// ---------------------------------------------------------------------------
// Modified rally scoring. Rally scoring (winner scores and serves next)
// until a team reaches n-1; from there that team, and an opponent at n-3 or
// better, scores only when serving.
// ---------------------------------------------------------------------------

namespace modified_rally_rows {

void interior(const ScoringSystem& sys, const RallyParams& par, SparseRationalMatrix& Q,
              SparseRationalMatrix& S) {
  RowWriter w{sys, par, Q, S};
  const int n = sys.target;
  const Rational pa = par.p_a, qa = par.q_a(), pb = par.p_b, qb = par.q_b();
  for (int i = 0; i <= n - 2; ++i)
    for (int j = 0; j <= n - 2; ++j) {
      w.q(i, j, 1, i + 1, j, 1, pa);  w.q(i, j, 1, i, j + 1, 2, qa);
      w.q(i, j, 2, i, j + 1, 2, pb);  w.q(i, j, 2, i + 1, j, 1, qb);
    }
}

void b_at_game_point_chaser_free(const ScoringSystem& sys, const RallyParams& par,
                                 SparseRationalMatrix& Q, SparseRationalMatrix& S) {
  RowWriter w{sys, par, Q, S};
  const int n = sys.target;
  const Rational pa = par.p_a, qa = par.q_a(), pb = par.p_b, qb = par.q_b();
  for (int i = 0; i <= n - 4; ++i) {
    // B is frozen at n-1: its rally win while receiving earns no point, so
    // A's fault just hands B the serve. A still scores off B's faults.
    w.q(i, n - 1, 1, i + 1, n - 1, 1, pa);  w.q(i, n - 1, 1, i, n - 1, 2, qa);
    w.s(i, n - 1, 2, Team::B, pb);          w.q(i, n - 1, 2, i + 1, n - 1, 1, qb);
  }
}

void b_at_game_point_chaser_frozen(const ScoringSystem& sys, const RallyParams& par,
                                   SparseRationalMatrix& Q, SparseRationalMatrix& S) {
  RowWriter w{sys, par, Q, S};
  const int n = sys.target;
  const Rational pa = par.p_a, qa = par.q_a(), pb = par.p_b, qb = par.q_b();
  for (int i : {n - 3, n - 2}) {
    w.q(i, n - 1, 1, i + 1, n - 1, 1, pa);  w.q(i, n - 1, 1, i, n - 1, 2, qa);
    w.s(i, n - 1, 2, Team::B, pb);          w.q(i, n - 1, 2, i, n - 1, 1, qb);
  }
}

void a_at_game_point_chaser_free(const ScoringSystem& sys, const RallyParams& par,
                                 SparseRationalMatrix& Q, SparseRationalMatrix& S) {
  RowWriter w{sys, par, Q, S};
  const int n = sys.target;
  const Rational pa = par.p_a, qa = par.q_a(), pb = par.p_b, qb = par.q_b();
  for (int j = 0; j <= n - 4; ++j) {
    w.s(n - 1, j, 1, Team::A, pa);          w.q(n - 1, j, 1, n - 1, j + 1, 2, qa);
    w.q(n - 1, j, 2, n - 1, j + 1, 2, pb);  w.q(n - 1, j, 2, n - 1, j, 1, qb);
  }
}

void a_at_game_point_chaser_frozen(const ScoringSystem& sys, const RallyParams& par,
                                   SparseRationalMatrix& Q, SparseRationalMatrix& S) {
  RowWriter w{sys, par, Q, S};
  const int n = sys.target;
  const Rational pa = par.p_a, qa = par.q_a(), pb = par.p_b, qb = par.q_b();
  for (int j : {n - 3, n - 2}) {
    w.s(n - 1, j, 1, Team::A, pa);          w.q(n - 1, j, 1, n - 1, j, 2, qa);
    w.q(n - 1, j, 2, n - 1, j + 1, 2, pb);  w.q(n - 1, j, 2, n - 1, j, 1, qb);
  }
}

void endgame(const ScoringSystem& sys, const RallyParams& par, SparseRationalMatrix& Q,
             SparseRationalMatrix& S) {
  RowWriter w{sys, par, Q, S};
  const int n = sys.target;
  const Rational pa = par.p_a, qa = par.q_a(), pb = par.p_b, qb = par.q_b();
  w.q(n - 1, n - 1, 1, n, n - 1, 1, pa);  w.q(n - 1, n - 1, 1, n - 1, n - 1, 2, qa);
  w.q(n - 1, n - 1, 2, n - 1, n, 2, pb);  w.q(n - 1, n - 1, 2, n - 1, n - 1, 1, qb);

  w.q(n - 1, n, 1, n - 1, n - 1, 1, pa);  w.q(n - 1, n, 1, n - 1, n, 2, qa);
  w.s(n - 1, n, 2, Team::B, pb);          w.q(n - 1, n, 2, n - 1, n, 1, qb);

  w.s(n, n - 1, 1, Team::A, pa);          w.q(n, n - 1, 1, n, n - 1, 2, qa);
  w.q(n, n - 1, 2, n - 1, n - 1, 2, pb);  w.q(n, n - 1, 2, n, n - 1, 1, qb);
}

}  // namespace modified_rally_rows

// ---------------------------------------------------------------------------
// Hybrid rally scoring: modified rally point rules with the traditional
// two-server rotation. The receiving team scores off a server fault unless
// frozen; the serve stays with the faulting team's next server.
// ---------------------------------------------------------------------------

namespace hybrid_rows {

void interior(const ScoringSystem& sys, const RallyParams& par, SparseRationalMatrix& Q,
              SparseRationalMatrix& S) {
  RowWriter w{sys, par, Q, S};
  const int n = sys.target;
  const Rational pa = par.p_a, qa = par.q_a(), pb = par.p_b, qb = par.q_b();
  for (int i = 0; i <= n - 2; ++i)
    for (int j = 0; j <= n - 2; ++j) {
      w.q(i, j, 1, i + 1, j, 1, pa);  w.q(i, j, 1, i, j + 1, 2, qa);
      w.q(i, j, 2, i + 1, j, 2, pa);  w.q(i, j, 2, i, j + 1, 3, qa);
      w.q(i, j, 3, i, j + 1, 3, pb);  w.q(i, j, 3, i + 1, j, 4, qb);
      w.q(i, j, 4, i, j + 1, 4, pb);  w.q(i, j, 4, i + 1, j, 1, qb);
    }
}

void b_at_game_point_chaser_free(const ScoringSystem& sys, const RallyParams& par,
                                 SparseRationalMatrix& Q, SparseRationalMatrix& S) {
  RowWriter w{sys, par, Q, S};
  const int n = sys.target;
  const Rational pa = par.p_a, qa = par.q_a(), pb = par.p_b, qb = par.q_b();
  for (int i = 0; i <= n - 4; ++i) {
    w.q(i, n - 1, 1, i + 1, n - 1, 1, pa);  w.q(i, n - 1, 1, i, n - 1, 2, qa);
    w.q(i, n - 1, 2, i + 1, n - 1, 2, pa);  w.q(i, n - 1, 2, i, n - 1, 3, qa);
    w.s(i, n - 1, 3, Team::B, pb);          w.q(i, n - 1, 3, i + 1, n - 1, 4, qb);
    w.s(i, n - 1, 4, Team::B, pb);          w.q(i, n - 1, 4, i + 1, n - 1, 1, qb);
  }
}

void b_at_game_point_chaser_frozen(const ScoringSystem& sys, const RallyParams& par,
                                   SparseRationalMatrix& Q, SparseRationalMatrix& S) {
  RowWriter w{sys, par, Q, S};
  const int n = sys.target;
  const Rational pa = par.p_a, qa = par.q_a(), pb = par.p_b, qb = par.q_b();
  for (int i : {n - 3, n - 2}) {
    w.q(i, n - 1, 1, i + 1, n - 1, 1, pa);  w.q(i, n - 1, 1, i, n - 1, 2, qa);
    w.q(i, n - 1, 2, i + 1, n - 1, 2, pa);  w.q(i, n - 1, 2, i, n - 1, 3, qa);
    w.s(i, n - 1, 3, Team::B, pb);          w.q(i, n - 1, 3, i, n - 1, 4, qb);
    w.s(i, n - 1, 4, Team::B, pb);          w.q(i, n - 1, 4, i, n - 1, 1, qb);
  }
}

void a_at_game_point_chaser_free(const ScoringSystem& sys, const RallyParams& par,
                                 SparseRationalMatrix& Q, SparseRationalMatrix& S) {
  RowWriter w{sys, par, Q, S};
  const int n = sys.target;
  const Rational pa = par.p_a, qa = par.q_a(), pb = par.p_b, qb = par.q_b();
  for (int j = 0; j <= n - 4; ++j) {
    w.s(n - 1, j, 1, Team::A, pa);          w.q(n - 1, j, 1, n - 1, j + 1, 2, qa);
    w.s(n - 1, j, 2, Team::A, pa);          w.q(n - 1, j, 2, n - 1, j + 1, 3, qa);
    w.q(n - 1, j, 3, n - 1, j + 1, 3, pb);  w.q(n - 1, j, 3, n - 1, j, 4, qb);
    w.q(n - 1, j, 4, n - 1, j + 1, 4, pb);  w.q(n - 1, j, 4, n - 1, j, 1, qb);
  }
}

void a_at_game_point_chaser_frozen(const ScoringSystem& sys, const RallyParams& par,
                                   SparseRationalMatrix& Q, SparseRationalMatrix& S) {
  RowWriter w{sys, par, Q, S};
  const int n = sys.target;
  const Rational pa = par.p_a, qa = par.q_a(), pb = par.p_b, qb = par.q_b();
  for (int j : {n - 3, n - 2}) {
    w.s(n - 1, j, 1, Team::A, pa);          w.q(n - 1, j, 1, n - 1, j, 2, qa);
    w.s(n - 1, j, 2, Team::A, pa);          w.q(n - 1, j, 2, n - 1, j, 3, qa);
    w.q(n - 1, j, 3, n - 1, j + 1, 3, pb);  w.q(n - 1, j, 3, n - 1, j, 4, qb);
    w.q(n - 1, j, 4, n - 1, j + 1, 4, pb);  w.q(n - 1, j, 4, n - 1, j, 1, qb);
  }
}

void endgame(const ScoringSystem& sys, const RallyParams& par, SparseRationalMatrix& Q,
             SparseRationalMatrix& S) {
  // At deuce both teams are frozen, so faults only rotate the serve and the
  // block coincides with the side-out endgame.
  side_out_rows::endgame(sys, par, Q, S);
}

}  // namespace hybrid_rows

TransitionModel build_side_out(int n, const RallyParams& params) {
  return assemble(make_system(SystemKind::SideOut, n), params);
}

TransitionModel build_modified_rally(int n, const RallyParams& params) {
  return assemble(make_system(SystemKind::ModifiedRally, n), params);
}

TransitionModel build_hybrid(int n, const RallyParams& params) {
  return assemble(make_system(SystemKind::HybridRally, n), params);
}

TransitionModel build_transition_model(const ScoringSystem& system, const RallyParams& params) {
  return assemble(system, params);
}

void dump_model(const TransitionModel& model, std::ostream& out) {
  const auto states = enumerate_states(model.system);
  const int m = model.system.transient_count();
  for (int r = 0; r < m; ++r) {
    auto entries = model.transient.row(r);
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [c, v] : entries)
      out << state_label(states[static_cast<std::size_t>(r)]) << ' '
          << state_label(states[static_cast<std::size_t>(c)]) << ' ' << to_fraction_string(v) << '\n';
    auto absorbing = model.absorbing.row(r);
    std::sort(absorbing.begin(), absorbing.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [c, v] : absorbing)
      out << state_label(states[static_cast<std::size_t>(r)]) << ' '
          << (c == kColWinA ? "WIN_A" : "WIN_B") << ' ' << to_fraction_string(v) << '\n';
  }
}

}  // namespace pickleball
