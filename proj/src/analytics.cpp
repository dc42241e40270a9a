#include "pickleball/analytics.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

namespace pickleball {

namespace {

struct Conditionals {
  Rational a_first;
  Rational b_first;
};

// P(Team A wins | each first server), from one solve of (I - Q) a = S_A.
Conditionals win_conditionals(const ScoringSystem& system, const RallyParams& params) {
  TransitionModel model = build_transition_model(system, params);
  auto a = absorption_vector(model, Team::A);
  return Conditionals{a[index_of(system, initial_state(system, Team::A))],
                      a[index_of(system, initial_state(system, Team::B))]};
}

}  // namespace

bool SearchRegion::contains(const Rational& x, const Rational& y) const {
  return x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi && x + y >= sum_lo && x + y <= sum_hi;
}

Rational win_probability(const ScoringSystem& system, const RallyParams& params, Team first_server) {
  auto cond = win_conditionals(system, params);
  return first_server == Team::A ? cond.a_first : cond.b_first;
}

AdvantageResult first_server_advantage(const ScoringSystem& system, const RallyParams& params) {
  auto cond = win_conditionals(system, params);
  Rational value = cond.a_first - cond.b_first;
  return AdvantageResult{system, params.p_a, params.p_b, value, sign_of(value)};
}

Rational diagonal_advantage(const ScoringSystem& system, const Rational& x) {
  if (x == 0) throw DegenerateChainError();
  return first_server_advantage(system, RallyParams(x, x)).value;
}

namespace {

RootInterval bisect(const ScoringSystem& system, Rational lo, Rational hi, int sign_lo, int sign_hi,
                    const Rational& tolerance) {
  while (hi - lo > tolerance) {
    Rational mid = (lo + hi) / 2;
    int s = sign_of(diagonal_advantage(system, mid));
    if (s == 0) return RootInterval{mid, mid, 0, 0};
    if (s == sign_lo)
      lo = mid;
    else
      hi = mid;
  }
  return RootInterval{lo, hi, sign_lo, sign_hi};
}

// One scan pass; std::nullopt when two roots land within two scan cells of
// each other and the caller should retry with a finer step.
std::optional<std::vector<RootInterval>> scan_once(const ScoringSystem& system,
                                                   const Rational& tolerance, const Rational& step) {
  std::vector<RootInterval> roots;
  Rational prev_x;       // last grid point with a nonzero sign
  int prev_sign = 0;
  bool zero_between = false;  // a grid point hit a zero exactly since prev_x

  for (Rational x = step; x <= 1; x += step) {
    int s = sign_of(diagonal_advantage(system, x));
    if (s == 0) {
      roots.push_back(RootInterval{x, x, 0, 0});
      zero_between = true;
      continue;
    }
    if (prev_sign != 0 && s != prev_sign && !zero_between)
      roots.push_back(bisect(system, prev_x, x, prev_sign, s, tolerance));
    prev_x = x;
    prev_sign = s;
    zero_between = false;
  }

  std::sort(roots.begin(), roots.end(),
            [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < roots.size(); ++i)
    if (roots[i].midpoint() - roots[i - 1].midpoint() < 2 * step) return std::nullopt;
  return roots;
}

}  // namespace

ZeroSet find_diagonal_zeros(const ScoringSystem& system, const Rational& tolerance,
                            const Rational& scan_step) {
  if (tolerance <= 0) throw std::domain_error("zero-isolation tolerance must be positive");
  if (scan_step <= 0 || scan_step >= 1) throw std::domain_error("scan step must lie in (0,1)");
  Rational step = scan_step;
  for (int attempt = 0; attempt < 16; ++attempt) {
    if (auto roots = scan_once(system, tolerance, step))
      return ZeroSet{system, step, std::move(*roots)};
    step /= 2;
  }
  throw std::runtime_error("scan step halving failed to separate adjacent roots");
}

namespace {

bool better(ExtremumMode mode, const Rational& candidate, const Rational& incumbent) {
  return mode == ExtremumMode::Minimize ? candidate < incumbent : candidate > incumbent;
}

// Smallest multiple of g that is >= lo.
Rational ceil_to_step(const Rational& lo, const Rational& g) {
  Rational t = lo / g;
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
  return Rational(q) * g;
}

}  // namespace

ExtremumResult find_extremum(const ScoringSystem& system, const SearchRegion& region,
                             ExtremumMode mode, const Rational& value_tol,
                             const Rational& point_tol) {
  if (region.x_lo > region.x_hi || region.y_lo > region.y_hi || region.sum_lo > region.sum_hi)
    throw std::domain_error("empty search region");
  if (point_tol <= 0) throw std::domain_error("point tolerance must be positive");

  long evaluations = 0;
  auto evaluate = [&](const Rational& x, const Rational& y) {
    ++evaluations;
    return first_server_advantage(system, RallyParams(x, y)).value;
  };
  auto feasible = [&](const Rational& x, const Rational& y) {
    return region.contains(x, y) && !(x == 0 && y == 0);
  };

  // Coarse scan on the 1/64 lattice, with the region corners and center as
  // fallback candidates for regions thinner than the lattice.
  const Rational g = default_extremum_grid_step();
  std::optional<Rational> best_x, best_y, best_value;
  auto consider = [&](const Rational& x, const Rational& y) {
    if (!feasible(x, y)) return;
    Rational v = evaluate(x, y);
    if (!best_value || better(mode, v, *best_value)) {
      best_x = x;
      best_y = y;
      best_value = v;
    }
  };

  // Walk lattice points k*g inside [x_lo, x_hi] x [y_lo, y_hi].
  for (Rational x = ceil_to_step(region.x_lo, g); x <= region.x_hi; x += g)
    for (Rational y = ceil_to_step(region.y_lo, g); y <= region.y_hi; y += g) consider(x, y);
  consider(region.x_lo, region.y_lo);
  consider(region.x_lo, region.y_hi);
  consider(region.x_hi, region.y_lo);
  consider(region.x_hi, region.y_hi);
  consider((region.x_lo + region.x_hi) / 2, (region.y_lo + region.y_hi) / 2);
  if (!best_value) throw std::domain_error("search region contains no feasible point");

  // Compass refinement over the eight lattice directions, exact comparisons.
  static const int dirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
  Rational h = g;
  Rational level_value = *best_value;
  for (int halvings = 0; halvings < 80; ++halvings) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (const auto& d : dirs) {
        Rational nx = *best_x + d[0] * h;
        Rational ny = *best_y + d[1] * h;
        if (!feasible(nx, ny)) continue;
        Rational v = evaluate(nx, ny);
        if (better(mode, v, *best_value)) {
          best_x = nx;
          best_y = ny;
          best_value = v;
          moved = true;
        }
      }
    }
    Rational drift = abs(*best_value - level_value);
    if (h <= point_tol && drift <= value_tol) break;
    level_value = *best_value;
    h /= 2;
  }
  return ExtremumResult{*best_x, *best_y, *best_value, evaluations};
}

ComparisonRow comparison_row(const ScoringSystem& system, const RallyParams& params) {
  TransitionModel model = build_transition_model(system, params);
  const int idx_a = index_of(system, initial_state(system, Team::A));
  const int idx_b = index_of(system, initial_state(system, Team::B));
  auto a = absorption_vector(model, Team::A);
  auto moments = duration_moments(model);

  Rational win = (a[idx_a] + a[idx_b]) / 2;
  Rational mean = (moments.mean[idx_a] + moments.mean[idx_b]) / 2;
  // Average the two second moments, then subtract the squared averaged mean.
  Rational m2_a = moments.variance[idx_a] + moments.mean[idx_a] * moments.mean[idx_a];
  Rational m2_b = moments.variance[idx_b] + moments.mean[idx_b] * moments.mean[idx_b];
  Rational variance = (m2_a + m2_b) / 2 - mean * mean;
  return ComparisonRow{system, params.p_a, params.p_b, win, mean, variance};
}

std::vector<ComparisonRow> cross_section_table(const std::vector<ScoringSystem>& systems,
                                               const std::vector<Rational>& p_b_values,
                                               const std::vector<Rational>& p_a_grid) {
  std::vector<ComparisonRow> rows;
  rows.reserve(systems.size() * p_b_values.size() * p_a_grid.size());
  for (const auto& system : systems)
    for (const auto& pb : p_b_values)
      for (const auto& pa : p_a_grid) {
        try {
          rows.push_back(comparison_row(system, RallyParams(pa, pb)));
        } catch (const std::exception& e) {
          throw std::domain_error("cross-section point (p_A=" + to_fraction_string(pa) +
                                  ", p_B=" + to_fraction_string(pb) + ") failed: " + e.what());
        }
      }
  return rows;
}

}  // namespace pickleball
