#pragma once

#include <cstdint>
#include <vector>

#include "pdrank/game_data.hpp"

namespace pdrank {

struct SynthConfig {
  int n_teams = 30;
  int n_games = 82;  // per team-season
  int n_seasons = 10;
  double strength_spread = 5.0;  // std of latent strength, in points
  double noise_std = 12.0;       // per-game margin noise, in points
  std::uint64_t seed = 1;
  int first_season = 2000;
};

/// Throws ParameterError on counts < 1 or negative spreads.
void validate(const SynthConfig& cfg);

/// Synthetic regular seasons in canonical team-game order (season, team,
/// game_no). Each season draws fresh team strengths ~ N(0, spread). Rounds
/// pair teams by the circle method; a team left without an opponent in a
/// round (odd league sizes) plays a league-average phantom whose rows are not
/// emitted. Margin = round(strength difference + noise); a zero margin is
/// re-drawn from the same engine, falling back to a coin flip for +/-1.
/// Output is a pure function of the config.
std::vector<GameResult> generate(const SynthConfig& cfg);

}  // namespace pdrank
