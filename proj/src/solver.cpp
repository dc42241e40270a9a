#include "pickleball/solver.hpp"

#include <algorithm>
#include <cstddef>

namespace pickleball {

namespace {

void require_solvable(const TransitionModel& model) {
  if (model.params.degenerate()) throw DegenerateChainError();
}

using DenseMatrix = std::vector<std::vector<Rational>>;

// In-place exact Gaussian elimination on a dense r x r system.
std::vector<Rational> solve_dense(DenseMatrix& a, std::vector<Rational>& b) {
  const std::size_t r = b.size();
  for (std::size_t col = 0; col < r; ++col) {
    std::size_t pivot = col;
    while (pivot < r && a[pivot][col] == 0) ++pivot;
    if (pivot == r) throw std::logic_error("singular elimination block");
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      std::swap(b[pivot], b[col]);
    }
    for (std::size_t row = col + 1; row < r; ++row) {
      if (a[row][col] == 0) continue;
      Rational f = a[row][col] / a[col][col];
      for (std::size_t c = col; c < r; ++c) a[row][c] -= f * a[col][c];
      b[row] -= f * b[col];
    }
  }
  std::vector<Rational> x(r);
  for (std::size_t row = r; row-- > 0;) {
    Rational acc = b[row];
    for (std::size_t c = row + 1; c < r; ++c) acc -= a[row][c] * x[c];
    x[row] = acc / a[row][row];
  }
  return x;
}

}  // namespace

std::vector<std::vector<int>> elimination_groups(const ScoringSystem& system) {
  const int n = system.target;
  const int codes = system.server_codes();
  auto cell_states = [&](std::vector<int>& out, int i, int j) {
    for (int k = 1; k <= codes; ++k) out.push_back(index_of(system, GameState::live(i, j, k)));
  };
  std::vector<std::vector<int>> groups;
  groups.reserve(static_cast<std::size_t>(n) * n);
  std::vector<int> cluster;
  cell_states(cluster, n - 1, n - 1);
  cell_states(cluster, n - 1, n);
  cell_states(cluster, n, n - 1);
  groups.push_back(std::move(cluster));
  for (int sum = 2 * n - 3; sum >= 0; --sum)
    for (int i = std::max(0, sum - (n - 1)); i <= std::min(n - 1, sum); ++i) {
      std::vector<int> cell;
      cell_states(cell, i, sum - i);
      groups.push_back(std::move(cell));
    }
  return groups;
}

std::vector<Rational> solve_transient_system(const SparseRationalMatrix& Q,
                                             const std::vector<Rational>& rhs,
                                             const std::vector<std::vector<int>>& groups) {
  const int m = Q.row_count();
  if (Q.col_count() != m) throw std::invalid_argument("Q must be square");
  if (static_cast<int>(rhs.size()) != m) throw std::invalid_argument("rhs size mismatch");

  std::vector<Rational> x(rhs.size(), Rational(0));
  std::vector<char> solved(rhs.size(), 0);
  std::vector<int> local(rhs.size(), -1);
  std::vector<int> epoch(rhs.size(), -1);
  std::size_t covered = 0;

  for (std::size_t gid = 0; gid < groups.size(); ++gid) {
    const auto& group = groups[gid];
    const std::size_t r = group.size();
    for (std::size_t a = 0; a < r; ++a) {
      const int s = group[a];
      if (s < 0 || s >= m || solved[s])
        throw std::invalid_argument("elimination groups must cover each index exactly once");
      local[s] = static_cast<int>(a);
      epoch[s] = static_cast<int>(gid);
    }
    DenseMatrix a_mat(r, std::vector<Rational>(r, Rational(0)));
    std::vector<Rational> b(r);
    for (std::size_t a = 0; a < r; ++a) {
      const int s = group[a];
      a_mat[a][a] = 1;
      Rational acc = rhs[s];
      for (const auto& [t, v] : Q.row(s)) {
        if (epoch[t] == static_cast<int>(gid)) {
          a_mat[a][local[t]] -= v;
        } else {
          if (!solved[t])
            throw std::logic_error("elimination group order broken: unsolved out-of-group target");
          acc += v * x[t];
        }
      }
      b[a] = std::move(acc);
    }
    auto sol = solve_dense(a_mat, b);
    for (std::size_t a = 0; a < r; ++a) {
      x[group[a]] = std::move(sol[a]);
      solved[group[a]] = 1;
    }
    covered += r;
  }
  if (covered != rhs.size())
    throw std::invalid_argument("elimination groups do not cover all states");
  return x;
}

std::vector<Rational> absorption_vector(const TransitionModel& model, Team winner) {
  require_solvable(model);
  const int m = model.system.transient_count();
  const int col = winner == Team::A ? kColWinA : kColWinB;
  std::vector<Rational> rhs(static_cast<std::size_t>(m), Rational(0));
  for (int r = 0; r < m; ++r)
    if (const Rational* v = model.absorbing.find(r, col)) rhs[r] = *v;
  return solve_transient_system(model.transient, rhs, elimination_groups(model.system));
}

std::vector<Rational> expected_duration_vector(const TransitionModel& model) {
  require_solvable(model);
  std::vector<Rational> ones(static_cast<std::size_t>(model.system.transient_count()), Rational(1));
  return solve_transient_system(model.transient, ones, elimination_groups(model.system));
}

DurationMoments duration_moments(const TransitionModel& model) {
  require_solvable(model);
  DurationMoments out;
  out.mean = expected_duration_vector(model);
  auto u = solve_transient_system(model.transient, out.mean, elimination_groups(model.system));
  out.variance.resize(out.mean.size());
  for (std::size_t i = 0; i < out.mean.size(); ++i)
    out.variance[i] = 2 * u[i] - out.mean[i] - out.mean[i] * out.mean[i];
  return out;
}

namespace {

void require_transient_ordinal(const TransitionModel& model, int start) {
  if (start < 0 || start >= model.system.transient_count())
    throw std::domain_error("start state is not a transient ordinal");
}

}  // namespace

std::pair<Rational, Rational> absorption_probabilities(const TransitionModel& model, int start) {
  require_transient_ordinal(model, start);
  auto a = absorption_vector(model, Team::A);
  auto b = absorption_vector(model, Team::B);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] + b[i] != 1)
      throw std::logic_error("absorption columns fail to sum to 1: transition table bug");
  return {a[start], b[start]};
}

Rational expected_duration(const TransitionModel& model, int start) {
  require_transient_ordinal(model, start);
  return expected_duration_vector(model)[start];
}

Rational duration_variance(const TransitionModel& model, int start) {
  require_transient_ordinal(model, start);
  return duration_moments(model).variance[start];
}

ChainSummary chain_summary(const TransitionModel& model, const GameState& start) {
  if (start.absorbed) throw std::domain_error("chain summary from an absorbed state is undefined");
  const int idx = index_of(model.system, start);
  auto [pa, pb] = absorption_probabilities(model, idx);
  auto moments = duration_moments(model);
  return ChainSummary{start, pa, pb, moments.mean[idx], moments.variance[idx]};
}

}  // namespace pickleball
