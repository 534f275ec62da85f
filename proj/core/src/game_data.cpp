#include "pdrank/game_data.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "pdrank/errors.hpp"

namespace pdrank {
namespace {

constexpr std::string_view kTeamGameHeader = "season,team,game_no,pts_for,pts_against";
constexpr std::string_view kGameLevelHeader =
    "season,game_no_home,game_no_away,home,away,home_pts,away_pts";

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

int parse_int(std::string_view field, std::size_t line, std::string_view column) {
  int value = 0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc{} || ptr != last) {
    throw ParseError(line, "column '" + std::string(column) + "' is not a base-10 integer: '" +
                               std::string(field) + "'");
  }
  return value;
}

int parse_points(std::string_view field, std::size_t line, std::string_view column) {
  const int value = parse_int(field, line, column);
  if (value < 0) {
    throw ParseError(line, "column '" + std::string(column) + "' must be nonnegative");
  }
  return value;
}

std::string parse_team(std::string_view field, std::size_t line, std::string_view column) {
  if (field.empty()) {
    throw ParseError(line, "column '" + std::string(column) + "' is empty");
  }
  return std::string(field);
}

void check_no_tie(int a, int b, std::size_t line) {
  if (a == b) {
    throw TieScoreError(line, "tie score " + std::to_string(a) + "-" + std::to_string(b) +
                                  " is not a valid game result");
  }
}

std::string normalize_header(std::string_view line) {
  std::string out;
  for (const auto field : split_fields(line)) {
    if (!out.empty()) out += ',';
    out += field;
  }
  return out;
}

}  // namespace

std::string to_string(const TeamKey& key) {
  return std::to_string(key.season_year) + "/" + key.team_id;
}

std::vector<GameResult> parse_games(std::istream& in) {
  std::vector<GameResult> games;
  std::string raw;
  std::size_t line_no = 0;
  enum class Layout { kUnknown, kTeamGame, kGameLevel } layout = Layout::kUnknown;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (trim(line).empty()) continue;

    if (layout == Layout::kUnknown) {
      const auto header = normalize_header(line);
      if (header == kTeamGameHeader) {
        layout = Layout::kTeamGame;
      } else if (header == kGameLevelHeader) {
        layout = Layout::kGameLevel;
      } else {
        throw ParseError(line_no, "unrecognized header '" + std::string(trim(line)) +
                                      "', expected '" + std::string(kTeamGameHeader) + "'");
      }
      continue;
    }

    const auto fields = split_fields(line);
    if (layout == Layout::kTeamGame) {
      if (fields.size() != 5) {
        throw ParseError(line_no, "expected 5 columns, found " + std::to_string(fields.size()));
      }
      GameResult g;
      g.season_year = parse_int(fields[0], line_no, "season");
      g.team_id = parse_team(fields[1], line_no, "team");
      g.game_index = parse_int(fields[2], line_no, "game_no");
      g.points_for = parse_points(fields[3], line_no, "pts_for");
      g.points_against = parse_points(fields[4], line_no, "pts_against");
      check_no_tie(g.points_for, g.points_against, line_no);
      games.push_back(std::move(g));
    } else {
      if (fields.size() != 7) {
        throw ParseError(line_no, "expected 7 columns, found " + std::to_string(fields.size()));
      }
      const int season = parse_int(fields[0], line_no, "season");
      const int game_no_home = parse_int(fields[1], line_no, "game_no_home");
      const int game_no_away = parse_int(fields[2], line_no, "game_no_away");
      auto home = parse_team(fields[3], line_no, "home");
      auto away = parse_team(fields[4], line_no, "away");
      const int home_pts = parse_points(fields[5], line_no, "home_pts");
      const int away_pts = parse_points(fields[6], line_no, "away_pts");
      check_no_tie(home_pts, away_pts, line_no);
      games.push_back({season, std::move(home), game_no_home, home_pts, away_pts});
      games.push_back({season, std::move(away), game_no_away, away_pts, home_pts});
    }
  }
  if (in.bad()) throw IoError("read failure while parsing games");
  return games;
}

std::vector<GameResult> parse_games(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_games(in);
}

std::vector<GameResult> read_games_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return parse_games(in);
}

void write_games_csv(std::ostream& out, std::span<const GameResult> games) {
  out << kTeamGameHeader << '\n';
  for (const auto& g : games) {
    out << g.season_year << ',' << g.team_id << ',' << g.game_index << ',' << g.points_for
        << ',' << g.points_against << '\n';
  }
}

std::vector<TeamSeason> build_team_seasons(std::span<const GameResult> games) {
  std::map<TeamKey, std::vector<GameResult>> groups;
  for (const auto& g : games) groups[TeamKey{g.season_year, g.team_id}].push_back(g);

  std::vector<TeamSeason> seasons;
  seasons.reserve(groups.size());
  for (auto& [key, rows] : groups) {
    std::stable_sort(rows.begin(), rows.end(), [](const GameResult& a, const GameResult& b) {
      return a.game_index < b.game_index;
    });
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const int expected = static_cast<int>(i) + 1;
      if (rows[i].game_index != expected) {
        const bool duplicate = i > 0 && rows[i].game_index == rows[i - 1].game_index;
        throw IntegrityError("team-season " + to_string(key) + ": " +
                             (duplicate ? "duplicate game_no " + std::to_string(rows[i].game_index)
                                        : "missing game_no " + std::to_string(expected)));
      }
    }
    if (rows.size() < 2) {
      throw DegenerateSeasonError("team-season " + to_string(key) + " has " +
                                  std::to_string(rows.size()) +
                                  " game(s); at least 2 are needed to split halves");
    }
    seasons.push_back({key.season_year, key.team_id, std::move(rows)});
  }
  return seasons;
}

HalfSplit split_half(const TeamSeason& season) {
  const int n = season.n_games();
  if (n < 2) {
    throw DegenerateSeasonError("team-season " + to_string(season.key()) + " has " +
                                std::to_string(n) + " game(s); cannot split halves");
  }
  const int half = n / 2;
  HalfSplit split;
  split.first_half = std::span<const GameResult>(season.games).first(static_cast<std::size_t>(half));
  split.second_half_games = n - half;
  for (int i = half; i < n; ++i) {
    if (margin(season.games[static_cast<std::size_t>(i)]) > 0) ++split.second_half_wins;
  }
  split.second_half_win_fraction =
      static_cast<double>(split.second_half_wins) / static_cast<double>(split.second_half_games);
  return split;
}

}  // namespace pdrank
