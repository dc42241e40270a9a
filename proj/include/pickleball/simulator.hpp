#pragma once

#include <cstdint>
#include <utility>

#include "pickleball/state_space.hpp"

namespace pickleball {

enum class FirstServer { TeamA, TeamB, FairCoin };

// Monte Carlo configuration. Parameters are consumed as doubles here: the
// simulator exists to cross-check the exact pipeline and to show what
// simulation can and cannot detect, not to be exact itself.
struct SimConfig {
  ScoringSystem system;
  double p_a = 0;
  double p_b = 0;
  FirstServer first = FirstServer::FairCoin;
  std::uint64_t num_games = 1;
  std::uint64_t seed = 0;
};

struct SimEstimate {
  std::uint64_t games = 0;
  double win_freq_a = 0;
  double mean_duration = 0;
  double sd_duration = 0;
  double standard_error_win = 0;  // sqrt(f(1-f)/games)
};

// Plays games by direct rule playout: server rotation, side-outs and freeze
// rules are implemented from the rule descriptions, not by walking the
// transition matrix, so agreement with the exact pipeline cross-checks the
// transition tables. Each game draws from its own counter-derived stream,
// and per-worker tallies are exact integers, so the estimate is bit
// identical for any worker count. Throws std::domain_error when
// p_a + p_b <= 0 (the game would never end) and std::runtime_error if a
// single game exceeds 10^7 rallies, which signals a rules bug.
SimEstimate simulate(const SimConfig& config, int workers = 1);

// Difference of Team A's win frequencies between the two first-server
// conditions, with the combined standard error. The two conditions use
// disjoint substreams of the seed.
std::pair<double, double> simulate_advantage(const ScoringSystem& system, double p_a, double p_b,
                                             std::uint64_t games_per_condition, std::uint64_t seed,
                                             int workers = 1);

// Single-game playout used by the estimators; exposed for the rule-level
// unit tests. Returns the winner and the number of rallies.
struct GameOutcome {
  Team winner;
  std::uint64_t rallies;
};
GameOutcome play_game(const ScoringSystem& system, double p_a, double p_b, Team first_server,
                      std::uint64_t game_seed);

}  // namespace pickleball
