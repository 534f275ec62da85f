#pragma once

#include <compare>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pdrank {

/// One team's view of one game.
struct GameResult {
  int season_year = 0;
  std::string team_id;
  int game_index = 0;  // 1-based position in the team's schedule
  int points_for = 0;
  int points_against = 0;

  friend bool operator==(const GameResult&, const GameResult&) = default;
};

/// Identifies a team-season.
struct TeamKey {
  int season_year = 0;
  std::string team_id;

  friend auto operator<=>(const TeamKey&, const TeamKey&) = default;
};

std::string to_string(const TeamKey& key);

/// One team's full regular season, games ordered by game_index.
struct TeamSeason {
  int season_year = 0;
  std::string team_id;
  std::vector<GameResult> games;

  TeamKey key() const { return {season_year, team_id}; }
  int n_games() const { return static_cast<int>(games.size()); }
};

/// Predictor/target split of a team-season. `first_half` views into the
/// season it was built from, so the season must outlive it.
struct HalfSplit {
  std::span<const GameResult> first_half;
  int second_half_games = 0;
  int second_half_wins = 0;
  double second_half_win_fraction = 0.0;
};

/// Signed point-margin from the team's perspective. Never zero for a valid game.
inline int margin(const GameResult& g) { return g.points_for - g.points_against; }

/// Parses either the canonical team-game CSV
/// (`season,team,game_no,pts_for,pts_against`) or the game-level CSV
/// (`season,game_no_home,game_no_away,home,away,home_pts,away_pts`), chosen by
/// the header. Game-level rows expand into two team-game rows, home first.
/// Throws ParseError (with 1-based line number) or TieScoreError.
std::vector<GameResult> parse_games(std::istream& in);
std::vector<GameResult> parse_games(std::string_view text);
std::vector<GameResult> read_games_file(const std::string& path);

/// Writes the canonical team-game CSV, header included.
void write_games_csv(std::ostream& out, std::span<const GameResult> games);

/// Groups rows into team-seasons ordered by (season, team). Each group must
/// have game indices exactly 1..n with n >= 2; otherwise IntegrityError
/// (DegenerateSeasonError for n < 2) naming the group.
std::vector<TeamSeason> build_team_seasons(std::span<const GameResult> games);

/// First half = games 1..floor(N/2); the target is the win fraction over the
/// remaining games. Throws DegenerateSeasonError when N < 2.
HalfSplit split_half(const TeamSeason& season);

}  // namespace pdrank
