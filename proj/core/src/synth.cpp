#include "pdrank/synth.hpp"

#include <cmath>
#include <random>
#include <string>

#include "pdrank/errors.hpp"

namespace pdrank {
namespace {

constexpr int kTieRedraws = 8;
constexpr int kBaselinePoints = 100;

std::string team_name(int index, int n_teams) {
  const auto width = std::max<std::size_t>(2, std::to_string(n_teams).size());
  auto digits = std::to_string(index + 1);
  return "T" + std::string(width - digits.size(), '0') + digits;
}

// Opponent slot of `slot` in round `round` of a circle-method schedule over
// `slots` (even) positions: slot 0 stays fixed, the others rotate.
int circle_opponent(int slot, int round, int slots) {
  const int ring = slots - 1;
  const auto position_of = [&](int s) { return s == 0 ? 0 : 1 + ((s - 1 + round) % ring); };
  const auto slot_at = [&](int pos) { return pos == 0 ? 0 : 1 + ((pos - 1 - round) % ring + ring) % ring; };
  return slot_at(slots - 1 - position_of(slot));
}

}  // namespace

void validate(const SynthConfig& cfg) {
  if (cfg.n_teams < 1 || cfg.n_games < 1 || cfg.n_seasons < 1) {
    throw ParameterError("synth: teams, games and seasons must all be >= 1");
  }
  if (!(cfg.strength_spread >= 0.0) || !(cfg.noise_std >= 0.0) ||
      !std::isfinite(cfg.strength_spread) || !std::isfinite(cfg.noise_std)) {
    throw ParameterError("synth: strength spread and noise must be finite and >= 0");
  }
}

std::vector<GameResult> generate(const SynthConfig& cfg) {
  validate(cfg);
  std::mt19937_64 engine(cfg.seed);
  std::normal_distribution<double> unit_normal(0.0, 1.0);

  const int slots = cfg.n_teams + (cfg.n_teams % 2);
  std::vector<GameResult> out;
  out.reserve(static_cast<std::size_t>(cfg.n_teams) * static_cast<std::size_t>(cfg.n_games) *
              static_cast<std::size_t>(cfg.n_seasons));

  for (int season = 0; season < cfg.n_seasons; ++season) {
    const int year = cfg.first_season + season;
    std::vector<double> strength(static_cast<std::size_t>(cfg.n_teams));
    for (auto& s : strength) s = cfg.strength_spread * unit_normal(engine);

    std::vector<std::vector<GameResult>> schedule(static_cast<std::size_t>(cfg.n_teams));
    const auto record = [&](int team, int points_for, int points_against) {
      auto& games = schedule[static_cast<std::size_t>(team)];
      games.push_back({year, team_name(team, cfg.n_teams), static_cast<int>(games.size()) + 1,
                       points_for, points_against});
    };

    for (int round = 0; round < cfg.n_games; ++round) {
      const int rotation = round % (slots - 1);
      for (int a = 0; a < cfg.n_teams; ++a) {
        const int b = circle_opponent(a, rotation, slots);
        if (b < a) continue;  // pair already played this round
        const double sa = strength[static_cast<std::size_t>(a)];
        const double sb = b < cfg.n_teams ? strength[static_cast<std::size_t>(b)] : 0.0;

        int m = 0;
        for (int draw = 0; draw <= kTieRedraws && m == 0; ++draw) {
          m = static_cast<int>(std::lround(sa - sb + cfg.noise_std * unit_normal(engine)));
        }
        if (m == 0) m = (engine() & 1U) ? 1 : -1;

        const int base = kBaselinePoints - 5 + static_cast<int>(engine() % 11);
        const int loser = std::max(0, base - std::abs(m) / 2);
        const int winner = loser + std::abs(m);
        const int pts_a = m > 0 ? winner : loser;
        const int pts_b = m > 0 ? loser : winner;
        record(a, pts_a, pts_b);
        if (b < cfg.n_teams) record(b, pts_b, pts_a);
      }
    }
    for (auto& games : schedule) {
      for (auto& g : games) out.push_back(std::move(g));
    }
  }
  return out;
}

}  // namespace pdrank
