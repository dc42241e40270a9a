#include "pickleball/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace pickleball {

namespace {

constexpr std::uint64_t kMaxRalliesPerGame = 10'000'000;

// splitmix64 (Steele, Lea, Flood 2014): the per-game stream is the sequence
// splitmix64(mix), splitmix64(mix+gamma), ... where mix is derived from the
// run seed and the game index, so results do not depend on how games are
// scheduled across workers.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

std::uint64_t derive_game_seed(std::uint64_t run_seed, std::uint64_t stream, std::uint64_t game) {
  SplitMix64 mix(run_seed);
  std::uint64_t a = mix.next();
  return a ^ SplitMix64(stream * 0x9e3779b97f4a7c15ULL + game).next();
}

struct Score {
  int a = 0;
  int b = 0;

  int of(Team t) const { return t == Team::A ? a : b; }
  void bump(Team t) { (t == Team::A ? a : b)++; }
  bool won(Team t, int n) const { return of(t) >= n && of(t) - of(other(t)) >= 2; }
  static Team other(Team t) { return t == Team::A ? Team::B : Team::A; }
};

// A team at n-1, or at n-3 and beyond while the opponent sits at n-1 or
// better, scores only on its own serve.
bool frozen(const Score& s, Team t, int n) {
  int own = s.of(t), opp = s.of(Score::other(t));
  return own >= n - 1 || (own >= n - 3 && opp >= n - 1);
}

GameOutcome play_side_out(int n, double p_a, double p_b, Team first, SplitMix64& rng) {
  Score score;
  Team serving = first;
  int faults_left = 1;  // opening service turn allows a single fault
  for (std::uint64_t rally = 1; rally <= kMaxRalliesPerGame; ++rally) {
    double p = serving == Team::A ? p_a : p_b;
    if (rng.next_unit() < p) {
      score.bump(serving);
      if (score.won(serving, n)) return GameOutcome{serving, rally};
    } else if (--faults_left == 0) {
      serving = Score::other(serving);
      faults_left = 2;
    }
  }
  throw std::runtime_error("side-out game exceeded the rally guard; rules bug");
}

GameOutcome play_modified_rally(int n, double p_a, double p_b, Team first, SplitMix64& rng) {
  Score score;
  Team serving = first;
  for (std::uint64_t rally = 1; rally <= kMaxRalliesPerGame; ++rally) {
    double p = serving == Team::A ? p_a : p_b;
    Team winner = rng.next_unit() < p ? serving : Score::other(serving);
    // The rally winner serves next; it scores unless frozen off its serve.
    if (winner == serving || !frozen(score, winner, n)) {
      score.bump(winner);
      if (score.won(winner, n)) return GameOutcome{winner, rally};
    }
    serving = winner;
  }
  throw std::runtime_error("modified-rally game exceeded the rally guard; rules bug");
}

GameOutcome play_hybrid(int n, double p_a, double p_b, Team first, SplitMix64& rng) {
  Score score;
  Team serving = first;
  int faults_left = 1;
  for (std::uint64_t rally = 1; rally <= kMaxRalliesPerGame; ++rally) {
    double p = serving == Team::A ? p_a : p_b;
    if (rng.next_unit() < p) {
      // Serving team wins: it scores and the same player keeps serving.
      score.bump(serving);
      if (score.won(serving, n)) return GameOutcome{serving, rally};
    } else {
      // Receivers win the rally: they score unless frozen; the serve stays
      // with the faulting team's next server, or sides out after the second
      // fault.
      Team receiver = Score::other(serving);
      if (!frozen(score, receiver, n)) {
        score.bump(receiver);
        if (score.won(receiver, n)) return GameOutcome{receiver, rally};
      }
      if (--faults_left == 0) {
        serving = receiver;
        faults_left = 2;
      }
    }
  }
  throw std::runtime_error("hybrid game exceeded the rally guard; rules bug");
}

struct Tally {
  std::uint64_t wins_a = 0;
  std::uint64_t rallies = 0;
  unsigned __int128 rallies_sq = 0;

  void absorb(const Tally& other) {
    wins_a += other.wins_a;
    rallies += other.rallies;
    rallies_sq += other.rallies_sq;
  }
};

Tally run_range(const SimConfig& config, std::uint64_t stream, std::uint64_t begin, std::uint64_t end) {
  Tally tally;
  for (std::uint64_t g = begin; g < end; ++g) {
    std::uint64_t game_seed = derive_game_seed(config.seed, stream, g);
    SplitMix64 rng(game_seed);
    Team first = config.first == FirstServer::TeamA   ? Team::A
                 : config.first == FirstServer::TeamB ? Team::B
                                                      : (rng.next() & 1 ? Team::A : Team::B);
    GameOutcome out;
    switch (config.system.kind) {
      case SystemKind::SideOut:
        out = play_side_out(config.system.target, config.p_a, config.p_b, first, rng);
        break;
      case SystemKind::ModifiedRally:
        out = play_modified_rally(config.system.target, config.p_a, config.p_b, first, rng);
        break;
      case SystemKind::HybridRally:
        out = play_hybrid(config.system.target, config.p_a, config.p_b, first, rng);
        break;
      default:
        throw std::logic_error("unknown scoring system");
    }
    if (out.winner == Team::A) ++tally.wins_a;
    tally.rallies += out.rallies;
    tally.rallies_sq += static_cast<unsigned __int128>(out.rallies) * out.rallies;
  }
  return tally;
}

SimEstimate finish(const Tally& tally, std::uint64_t games) {
  SimEstimate est;
  est.games = games;
  const double n = static_cast<double>(games);
  est.win_freq_a = static_cast<double>(tally.wins_a) / n;
  est.mean_duration = static_cast<double>(tally.rallies) / n;
  double mean_sq = static_cast<double>(tally.rallies_sq) / n;
  double variance = mean_sq - est.mean_duration * est.mean_duration;
  est.sd_duration = variance > 0 ? std::sqrt(variance) : 0.0;
  est.standard_error_win = std::sqrt(est.win_freq_a * (1.0 - est.win_freq_a) / n);
  return est;
}

Tally run_stream(const SimConfig& config, std::uint64_t stream, int workers) {
  if (workers < 1) throw std::invalid_argument("worker count must be positive");
  if (workers == 1 || config.num_games < 2) return run_range(config, stream, 0, config.num_games);

  // Games are tallied in exact integers, so any partition combines to the
  // same totals; worker count changes scheduling only.
  std::vector<Tally> parts(workers);
  std::vector<std::thread> threads;
  const std::uint64_t chunk = (config.num_games + workers - 1) / static_cast<std::uint64_t>(workers);
  for (int w = 0; w < workers; ++w) {
    std::uint64_t begin = chunk * static_cast<std::uint64_t>(w);
    std::uint64_t end = std::min(config.num_games, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&, w, begin, end] { parts[w] = run_range(config, stream, begin, end); });
  }
  for (auto& t : threads) t.join();
  Tally total;
  for (const auto& part : parts) total.absorb(part);
  return total;
}

void require_playable(const SimConfig& config) {
  if (config.p_a < 0 || config.p_a > 1 || config.p_b < 0 || config.p_b > 1)
    throw std::domain_error("rally win probabilities must lie in [0,1]");
  if (config.p_a + config.p_b <= 0)
    throw std::domain_error("p_A = p_B = 0: games would never terminate");
  if (config.num_games < 1) throw std::domain_error("need at least one game");
}

}  // namespace

GameOutcome play_game(const ScoringSystem& system, double p_a, double p_b, Team first_server,
                      std::uint64_t game_seed) {
  SplitMix64 rng(game_seed);
  switch (system.kind) {
    case SystemKind::SideOut: return play_side_out(system.target, p_a, p_b, first_server, rng);
    case SystemKind::ModifiedRally:
      return play_modified_rally(system.target, p_a, p_b, first_server, rng);
    case SystemKind::HybridRally: return play_hybrid(system.target, p_a, p_b, first_server, rng);
  }
  throw std::logic_error("unknown scoring system");
}

SimEstimate simulate(const SimConfig& config, int workers) {
  require_playable(config);
  return finish(run_stream(config, 0, workers), config.num_games);
}

std::pair<double, double> simulate_advantage(const ScoringSystem& system, double p_a, double p_b,
                                             std::uint64_t games_per_condition, std::uint64_t seed,
                                             int workers) {
  SimConfig base{system, p_a, p_b, FirstServer::TeamA, games_per_condition, seed};
  require_playable(base);
  SimConfig a_first = base;
  SimConfig b_first = base;
  b_first.first = FirstServer::TeamB;
  SimEstimate ea = finish(run_stream(a_first, 1, workers), games_per_condition);
  SimEstimate eb = finish(run_stream(b_first, 2, workers), games_per_condition);
  double estimate = ea.win_freq_a - eb.win_freq_a;
  double se = std::sqrt(ea.standard_error_win * ea.standard_error_win +
                        eb.standard_error_win * eb.standard_error_win);
  return {estimate, se};
}

}  // namespace pickleball
