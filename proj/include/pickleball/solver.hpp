#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "pickleball/rational.hpp"
#include "pickleball/state_space.hpp"
#include "pickleball/transitions.hpp"

namespace pickleball {

// Raised when p_A = p_B = 0: the serving team never wins a rally, the score
// never changes, and the two absorbing states are inaccessible, so I - Q is
// singular and none of the absorption quantities exist.
struct DegenerateChainError : std::domain_error {
  DegenerateChainError()
      : std::domain_error("degenerate chain: p_A = p_B = 0 makes the absorbing states inaccessible") {}
};

// Exact absorption quantities from one start state: who wins, how long the
// game runs (in rallies), and the variance of that duration.
struct ChainSummary {
  GameState start;
  Rational absorb_prob_a;
  Rational absorb_prob_b;
  Rational mean_duration;
  Rational duration_variance;
};

// Elimination order for the structured solve. Each group is a set of
// transient ordinals whose internal transitions may form cycles (the server
// rotation inside one score cell, or the deuce/advantage cluster); every
// transition leaving a group lands in an earlier-listed group. Groups are
// the three-cell endgame cluster followed by single score cells in order of
// decreasing score sum, so a full game solve is a chain of dense solves of
// size at most 12.
std::vector<std::vector<int>> elimination_groups(const ScoringSystem& system);

// Solves (I - Q) x = rhs exactly. `groups` must cover every row index once,
// ordered as described above; a singleton list {0..m-1} degenerates to a
// plain dense solve, which is handy for arbitrary chains in tests.
std::vector<Rational> solve_transient_system(const SparseRationalMatrix& Q,
                                             const std::vector<Rational>& rhs,
                                             const std::vector<std::vector<int>>& groups);

// One solve of (I - Q) a = S[:, winner]; a[i] is the probability of the
// given team winning from transient state i. Both first-server conditionals
// of a game therefore come out of a single call.
std::vector<Rational> absorption_vector(const TransitionModel& model, Team winner);

// One solve of (I - Q) t = 1; t[i] is the expected number of rallies.
std::vector<Rational> expected_duration_vector(const TransitionModel& model);

// Mean and variance of the rally count from every transient state. The
// variance uses a second solve (I - Q) u = t rather than materializing the
// fundamental matrix: Var = 2u - t - t^2 entrywise.
struct DurationMoments {
  std::vector<Rational> mean;
  std::vector<Rational> variance;
};
DurationMoments duration_moments(const TransitionModel& model);

// Scalar views of the above, taking a transient ordinal.
// absorption_probabilities additionally verifies that the two independently
// solved columns sum to exactly 1 at every state.
std::pair<Rational, Rational> absorption_probabilities(const TransitionModel& model, int start);
Rational expected_duration(const TransitionModel& model, int start);
Rational duration_variance(const TransitionModel& model, int start);

// Bundle of the three quantities from a live start state; throws
// std::domain_error when handed an absorbed state.
ChainSummary chain_summary(const TransitionModel& model, const GameState& start);

}  // namespace pickleball
