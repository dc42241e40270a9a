#pragma once

// Test-only reference implementations, kept deliberately independent of the
// production solver: a textbook dense fundamental-matrix computation (full
// Gauss-Jordan inverse of I - Q) and exact truncated-horizon dynamic
// programming over the chain. Production results must match these oracles;
// the oracles never call into pickleball/solver.hpp internals beyond the
// sparse matrix container.

#include <stdexcept>
#include <vector>

#include "pickleball/rational.hpp"
#include "pickleball/transitions.hpp"

namespace pickleball::testing {

using DenseMatrix = std::vector<std::vector<Rational>>;

inline DenseMatrix dense_from_sparse(const SparseRationalMatrix& q) {
  DenseMatrix out(q.row_count(), std::vector<Rational>(q.col_count(), Rational(0)));
  for (int r = 0; r < q.row_count(); ++r)
    for (const auto& [c, v] : q.row(r)) out[r][c] = v;
  return out;
}

// Gauss-Jordan inverse of (I - Q): the fundamental matrix M.
inline DenseMatrix fundamental_matrix(const SparseRationalMatrix& q) {
  const std::size_t m = static_cast<std::size_t>(q.row_count());
  DenseMatrix a = dense_from_sparse(q);
  DenseMatrix inv(m, std::vector<Rational>(m, Rational(0)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) a[i][j] = -a[i][j];
    a[i][i] += 1;
    inv[i][i] = 1;
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (pivot < m && a[pivot][col] == 0) ++pivot;
    if (pivot == m) throw std::logic_error("I - Q is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational d = a[col][col];
    for (std::size_t j = 0; j < m; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t row = 0; row < m; ++row) {
      if (row == col || a[row][col] == 0) continue;
      Rational f = a[row][col];
      for (std::size_t j = 0; j < m; ++j) {
        a[row][j] -= f * a[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

inline std::vector<Rational> mat_vec(const DenseMatrix& m, const std::vector<Rational>& v) {
  std::vector<Rational> out(m.size(), Rational(0));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) out[r] += m[r][c] * v[c];
  return out;
}

struct ReferenceSolution {
  std::vector<Rational> absorb_a;  // (M S) column for Team A
  std::vector<Rational> absorb_b;
  std::vector<Rational> mean;      // M 1
  std::vector<Rational> variance;  // (2M - I) M 1 - (M 1)^2
};

inline ReferenceSolution reference_solve(const SparseRationalMatrix& q,
                                         const SparseRationalMatrix& s) {
  const std::size_t m = static_cast<std::size_t>(q.row_count());
  DenseMatrix fm = fundamental_matrix(q);
  std::vector<Rational> sa(m, Rational(0)), sb(m, Rational(0));
  for (std::size_t r = 0; r < m; ++r) {
    for (const auto& [c, v] : s.row(static_cast<int>(r)))
      (c == kColWinA ? sa : sb)[r] = v;
  }
  ReferenceSolution out;
  out.absorb_a = mat_vec(fm, sa);
  out.absorb_b = mat_vec(fm, sb);
  out.mean = mat_vec(fm, std::vector<Rational>(m, Rational(1)));
  std::vector<Rational> mt = mat_vec(fm, out.mean);
  out.variance.resize(m);
  for (std::size_t i = 0; i < m; ++i)
    out.variance[i] = 2 * mt[i] - out.mean[i] - out.mean[i] * out.mean[i];
  return out;
}

// Exact distribution push-forward: mass over transient states after k steps.
struct HorizonSums {
  Rational expected_partial;       // sum_{k<K} P(T > k)  ->  E[T] from below
  Rational second_moment_partial;  // sum_{k<K} (2k+1) P(T > k)  ->  E[T^2] from below
  Rational residual_mass;          // P(T > K)
};

inline HorizonSums truncated_horizon(const SparseRationalMatrix& q, int start, int horizon) {
  std::vector<Rational> mass(q.row_count(), Rational(0));
  mass[start] = 1;
  HorizonSums sums{Rational(0), Rational(0), Rational(0)};
  for (int k = 0; k < horizon; ++k) {
    Rational alive = 0;
    for (const auto& v : mass) alive += v;
    sums.expected_partial += alive;
    sums.second_moment_partial += (2 * k + 1) * alive;
    std::vector<Rational> next(mass.size(), Rational(0));
    for (int r = 0; r < q.row_count(); ++r) {
      if (mass[r] == 0) continue;
      for (const auto& [c, v] : q.row(r)) next[c] += mass[r] * v;
    }
    mass = std::move(next);
  }
  for (const auto& v : mass) sums.residual_mass += v;
  return sums;
}

}  // namespace pickleball::testing
