#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "pickleball/rational.hpp"
#include "pickleball/state_space.hpp"

namespace pickleball {

// Per-rally win probabilities for the serving team, exact end to end.
// Decimal CLI input such as 0.44 is parsed to 44/100 before it gets here.
struct RallyParams {
  Rational p_a;  // P(Team A wins a rally when serving)
  Rational p_b;  // P(Team B wins a rally when serving)

  RallyParams(Rational pa, Rational pb);  // throws std::domain_error outside [0,1]
  Rational q_a() const { return 1 - p_a; }
  Rational q_b() const { return 1 - p_b; }
  // With p_a = p_b = 0 the score never changes and the absorbing states are
  // unreachable; all solver entry points reject this case.
  bool degenerate() const { return p_a == 0 && p_b == 0; }
};

// Row-oriented sparse matrix of exact rationals. Entries with value zero are
// not stored; writing the same position twice throws, which is the guard
// against overlapping row generators silently overwriting each other.
class SparseRationalMatrix {
 public:
  using Entry = std::pair<int, Rational>;  // (column, value)

  SparseRationalMatrix(int rows, int cols);

  void add(int row, int col, const Rational& value);
  const Rational* find(int row, int col) const;
  const std::vector<Entry>& row(int r) const { return rows_.at(static_cast<std::size_t>(r)); }

  int row_count() const { return static_cast<int>(rows_.size()); }
  int col_count() const { return cols_; }
  std::size_t nonzero_count() const;
  Rational row_sum(int r) const;

 private:
  int cols_;
  std::vector<std::vector<Entry>> rows_;
};

// Column indices of the absorbing block S.
inline constexpr int kColWinA = 0;
inline constexpr int kColWinB = 1;

// The (Q, S) blocks of the one-step transition matrix over the system's
// transient states, in enumeration order. Every row of [Q | S] sums to
// exactly 1 and has at most two nonzero entries.
struct TransitionModel {
  ScoringSystem system;
  RallyParams params;
  SparseRationalMatrix transient;  // Q: m x m
  SparseRationalMatrix absorbing;  // S: m x 2
};

TransitionModel build_transition_model(const ScoringSystem& system, const RallyParams& params);
TransitionModel build_side_out(int n, const RallyParams& params);
TransitionModel build_modified_rally(int n, const RallyParams& params);
TransitionModel build_hybrid(int n, const RallyParams& params);

// Debug dump, one entry per line: "row_state col_state value_as_fraction",
// states rendered i-j-k or WIN_A/WIN_B, rows in order, columns sorted with
// the absorbing columns last.
void dump_model(const TransitionModel& model, std::ostream& out);

// The row generators below each transcribe one block of the rule tables and
// are exposed so they can be unit-tested in isolation. Writing into Q/S via
// SparseRationalMatrix::add keeps overlapping blocks from passing silently.

namespace side_out_rows {
void interior(const ScoringSystem&, const RallyParams&, SparseRationalMatrix& Q, SparseRationalMatrix& S);
void b_at_game_point(const ScoringSystem&, const RallyParams&, SparseRationalMatrix& Q, SparseRationalMatrix& S);
void a_at_game_point(const ScoringSystem&, const RallyParams&, SparseRationalMatrix& Q, SparseRationalMatrix& S);
void endgame(const ScoringSystem&, const RallyParams&, SparseRationalMatrix& Q, SparseRationalMatrix& S);
}  // namespace side_out_rows

namespace modified_rally_rows {
void interior(const ScoringSystem&, const RallyParams&, SparseRationalMatrix& Q, SparseRationalMatrix& S);
// j = n-1 with Team A trailing at i <= n-4: A still scores on B's faults.
void b_at_game_point_chaser_free(const ScoringSystem&, const RallyParams&, SparseRationalMatrix& Q, SparseRationalMatrix& S);
// j = n-1 with Team A at n-3 or n-2: A now scores only when serving.
void b_at_game_point_chaser_frozen(const ScoringSystem&, const RallyParams&, SparseRationalMatrix& Q, SparseRationalMatrix& S);
void a_at_game_point_chaser_free(const ScoringSystem&, const RallyParams&, SparseRationalMatrix& Q, SparseRationalMatrix& S);
void a_at_game_point_chaser_frozen(const ScoringSystem&, const RallyParams&, SparseRationalMatrix& Q, SparseRationalMatrix& S);
void endgame(const ScoringSystem&, const RallyParams&, SparseRationalMatrix& Q, SparseRationalMatrix& S);
}  // namespace modified_rally_rows

namespace hybrid_rows {
void interior(const ScoringSystem&, const RallyParams&, SparseRationalMatrix& Q, SparseRationalMatrix& S);
void b_at_game_point_chaser_free(const ScoringSystem&, const RallyParams&, SparseRationalMatrix& Q, SparseRationalMatrix& S);
void b_at_game_point_chaser_frozen(const ScoringSystem&, const RallyParams&, SparseRationalMatrix& Q, SparseRationalMatrix& S);
void a_at_game_point_chaser_free(const ScoringSystem&, const RallyParams&, SparseRationalMatrix& Q, SparseRationalMatrix& S);
void a_at_game_point_chaser_frozen(const ScoringSystem&, const RallyParams&, SparseRationalMatrix& Q, SparseRationalMatrix& S);
void endgame(const ScoringSystem&, const RallyParams&, SparseRationalMatrix& Q, SparseRationalMatrix& S);
}  // namespace hybrid_rows

}  // namespace pickleball
