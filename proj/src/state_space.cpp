#include "pickleball/state_space.hpp"

#include <stdexcept>

namespace pickleball {

namespace {

// Ordinal of a legal score cell in lexicographic (i, j) order. The grid is
// {0..n-1}^2 plus (n-1, n) and (n, n-1), so row n-1 has n+1 cells and row n
// has the single cell (n, n-1).
int cell_ordinal(int n, int i, int j) {
  if (i <= n - 2) return i * n + j;
  if (i == n - 1) return (n - 1) * n + j;
  return (n - 1) * n + (n + 1);  // i == n, j == n-1
}

bool legal_cell(int n, int i, int j) {
  if (i >= 0 && i <= n - 1 && j >= 0 && j <= n - 1) return true;
  return (i == n - 1 && j == n) || (i == n && j == n - 1);
}

}  // namespace

int ScoringSystem::transient_count() const {
  int cells = target * target + 2;
  return cells * server_codes();
}

ScoringSystem make_system(SystemKind kind, int target) {
  if (target < 4) throw std::domain_error("target score must be at least 4");
  return ScoringSystem{kind, target};
}

std::string state_label(const GameState& s) {
  if (s.absorbed) return s.winner == Team::A ? "WIN_A" : "WIN_B";
  return std::to_string(s.i) + "-" + std::to_string(s.j) + "-" + std::to_string(s.k);
}

std::vector<GameState> enumerate_states(const ScoringSystem& system) {
  if (system.target < 4) throw std::domain_error("target score must be at least 4");
  const int n = system.target;
  const int codes = system.server_codes();
  std::vector<GameState> out;
  out.reserve(static_cast<std::size_t>(system.state_count()));
  for (int i = 0; i <= n; ++i) {
    const int j_hi = i == n - 1 ? n : n - 1;
    for (int j = 0; j <= j_hi; ++j) {
      if (!legal_cell(n, i, j)) continue;
      for (int k = 1; k <= codes; ++k) out.push_back(GameState::live(i, j, k));
    }
  }
  out.push_back(GameState::win(Team::A));
  out.push_back(GameState::win(Team::B));
  return out;
}

int index_of(const ScoringSystem& system, const GameState& state) {
  const int n = system.target;
  const int codes = system.server_codes();
  if (state.absorbed)
    return system.transient_count() + (state.winner == Team::A ? 0 : 1);
  if (!legal_cell(n, state.i, state.j))
    throw std::domain_error("score (" + std::to_string(state.i) + "," + std::to_string(state.j) +
                            ") outside the legal domain for n=" + std::to_string(n));
  if (state.k < 1 || state.k > codes)
    throw std::domain_error("server code " + std::to_string(state.k) + " outside 1.." +
                            std::to_string(codes));
  return cell_ordinal(n, state.i, state.j) * codes + (state.k - 1);
}

GameState state_of(const ScoringSystem& system, int ordinal) {
  const int n = system.target;
  const int codes = system.server_codes();
  if (ordinal < 0 || ordinal >= system.state_count())
    throw std::domain_error("state ordinal out of range");
  if (ordinal >= system.transient_count())
    return GameState::win(ordinal == system.transient_count() ? Team::A : Team::B);
  const int cell = ordinal / codes;
  const int k = ordinal % codes + 1;
  if (cell < (n - 1) * n) return GameState::live(cell / n, cell % n, k);
  const int tail = cell - (n - 1) * n;
  if (tail <= n) return GameState::live(n - 1, tail, k);
  return GameState::live(n, n - 1, k);
}

GameState initial_state(const ScoringSystem& system, Team first_server) {
  if (system.kind == SystemKind::ModifiedRally)
    return GameState::live(0, 0, first_server == Team::A ? 1 : 2);
  return GameState::live(0, 0, first_server == Team::A ? 2 : 4);
}

}  // namespace pickleball
