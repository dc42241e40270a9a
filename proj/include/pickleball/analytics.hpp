#pragma once

#include <vector>

#include "pickleball/rational.hpp"
#include "pickleball/solver.hpp"
#include "pickleball/state_space.hpp"
#include "pickleball/transitions.hpp"

namespace pickleball {

// First-server advantage at one parameter point: the difference between the
// two first-server conditionals of P(Team A wins). Both terms come from a
// single exact solve, so the value is an exact difference, never a float
// subtraction; typical magnitudes under side-out scoring are 1e-9 between
// probabilities near 1/2.
struct AdvantageResult {
  ScoringSystem system;
  Rational p_a;
  Rational p_b;
  Rational value;
  int sign;
};

// Enclosing interval of one sign change of x -> advantage(x, x), with the
// exact signs at its endpoints. A width-0 interval (signs 0) marks a point
// where the scan hit a zero exactly.
struct RootInterval {
  Rational lo;
  Rational hi;
  int sign_lo;
  int sign_hi;
  Rational midpoint() const { return (lo + hi) / 2; }
};

struct ZeroSet {
  ScoringSystem system;
  Rational scan_step;  // the step of the scan that produced the result
  std::vector<RootInterval> roots;
};

// Box plus score-sum constraints: x_lo <= x <= x_hi, y_lo <= y <= y_hi,
// sum_lo <= x + y <= sum_hi.
struct SearchRegion {
  Rational x_lo, x_hi;
  Rational y_lo, y_hi;
  Rational sum_lo, sum_hi;
  bool contains(const Rational& x, const Rational& y) const;
};

enum class ExtremumMode { Minimize, Maximize };

struct ExtremumResult {
  Rational x;
  Rational y;
  Rational value;
  long evaluations;
};

// One row of the scoring-system comparison: all quantities average the two
// first-server conditionals as if the first server were chosen by a fair
// coin. The variance averages the two second moments and the two means
// before combining, and is kept exact; rendering the standard deviation to
// decimals is left to the caller.
struct ComparisonRow {
  ScoringSystem system;
  Rational p_a;
  Rational p_b;
  Rational win_prob_a;
  Rational mean_duration;
  Rational duration_variance;

  std::string sd_duration_decimal(int digits) const {
    return sqrt_decimal_string(duration_variance, digits);
  }
};

// Exact P(Team A wins) from the system's initial state for the given first
// server. Throws DegenerateChainError when p_A = p_B = 0.
Rational win_probability(const ScoringSystem& system, const RallyParams& params, Team first_server);

AdvantageResult first_server_advantage(const ScoringSystem& system, const RallyParams& params);

// Advantage restricted to the diagonal p_A = p_B = x, 0 < x <= 1.
Rational diagonal_advantage(const ScoringSystem& system, const Rational& x);

inline Rational default_zero_tolerance() { return make_rational(1, 10000000); }  // 1e-7
inline Rational default_zero_scan_step() { return make_rational(1, 1024); }

// Sign-change scan of the diagonal advantage over (0, 1] followed by exact
// bisection of each bracket down to the given width. If two detected roots
// land closer than two scan cells apart the whole scan restarts at half the
// step. An empty root list is a valid result.
ZeroSet find_diagonal_zeros(const ScoringSystem& system, const Rational& tolerance,
                            const Rational& scan_step);
inline ZeroSet find_diagonal_zeros(const ScoringSystem& system) {
  return find_diagonal_zeros(system, default_zero_tolerance(), default_zero_scan_step());
}

inline Rational default_extremum_grid_step() { return make_rational(1, 64); }

// Coarse grid scan at 1/64 inside the region, then compass refinement over
// the eight axis and diagonal directions with step halving. Every
// comparison is between exact values, so ordering decisions are exact even
// where the objective varies at the 1e-17 scale. Refinement stops once the
// step is below point_tol and the best value moved by at most value_tol
// across the last halving.
ExtremumResult find_extremum(const ScoringSystem& system, const SearchRegion& region,
                             ExtremumMode mode, const Rational& value_tol,
                             const Rational& point_tol);

ComparisonRow comparison_row(const ScoringSystem& system, const RallyParams& params);

// Rows for every (system, p_B, p_A) combination, ordered exactly that way.
// A failing point aborts with the offending coordinates in the message.
std::vector<ComparisonRow> cross_section_table(const std::vector<ScoringSystem>& systems,
                                               const std::vector<Rational>& p_b_values,
                                               const std::vector<Rational>& p_a_grid);

}  // namespace pickleball
