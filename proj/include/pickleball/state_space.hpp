#pragma once

#include <compare>
#include <string>
#include <vector>

namespace pickleball {

enum class SystemKind { SideOut, ModifiedRally, HybridRally };
enum class Team { A, B };

// Which rule set, and the target score n. Rules for modified/hybrid scoring
// reference scores n-3 and n-4, so n >= 4 throughout.
struct ScoringSystem {
  SystemKind kind;
  int target;

  // Server codes per transient state: side-out and hybrid track four servers
  // (A first/second, B first/second), modified rally only which team serves.
  int server_codes() const { return kind == SystemKind::ModifiedRally ? 2 : 4; }
  int transient_count() const;  // 4n^2+8, or 2n^2+4 for modified rally
  int state_count() const { return transient_count() + 2; }

  bool operator==(const ScoringSystem&) const = default;
};

// Validates n >= 4; throws std::domain_error otherwise.
ScoringSystem make_system(SystemKind kind, int target);

// A live score/server configuration (i, j, k) or a finished game.
// i = Team A points, j = Team B points, k = server code. Legal scores are
// {0..n-1}^2 plus the extended scores (n-1, n) and (n, n-1); the three
// scores (n-1,n-1), (n-1,n), (n,n-1) play the role of deuce and the two
// advantages, which keeps the win-by-two state space finite.
struct GameState {
  bool absorbed = false;
  int i = 0, j = 0, k = 1;  // valid when !absorbed
  Team winner = Team::A;    // valid when absorbed

  static GameState live(int i, int j, int k) { return GameState{false, i, j, k, Team::A}; }
  static GameState win(Team t) { return GameState{true, 0, 0, 0, t}; }

  bool operator==(const GameState&) const = default;
};

// "i-j-k" for live states, "WIN_A"/"WIN_B" for absorbed ones.
std::string state_label(const GameState& s);

// All states in lexicographic (i, j, k) order, then WIN_A, then WIN_B.
std::vector<GameState> enumerate_states(const ScoringSystem& system);

// Ordinal of a state in the enumeration order. Transient ordinals strictly
// precede the two absorbing ones. Throws std::domain_error for states
// outside the system's legal score/server domain.
int index_of(const ScoringSystem& system, const GameState& state);

// Inverse of index_of over 0 .. state_count()-1.
GameState state_of(const ScoringSystem& system, int ordinal);

// Side-out and hybrid games open with the first-serving team's second
// server (the opening service turn allows only one fault): (0,0,2) or
// (0,0,4). Modified rally starts at (0,0,1) or (0,0,2).
GameState initial_state(const ScoringSystem& system, Team first_server);

}  // namespace pickleball
