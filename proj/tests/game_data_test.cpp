#include "pdrank/game_data.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "pdrank/errors.hpp"
#include "test_support.hpp"

namespace pdrank {
namespace {

constexpr const char* kHeader = "season,team,game_no,pts_for,pts_against\n";

TEST(ParseGames, MapsFieldsDirectly) {
  const auto games = parse_games(std::string(kHeader) + "1994,CHI,3,101,97\n");
  ASSERT_EQ(games.size(), 1u);
  EXPECT_EQ(games[0], (GameResult{1994, "CHI", 3, 101, 97}));
}

TEST(ParseGames, RejectsTieWithLineNumber) {
  try {
    parse_games(std::string(kHeader) + "1994,CHI,2,99,98\n1994,CHI,3,100,100\n");
    FAIL() << "expected TieScoreError";
  } catch (const TieScoreError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.code(), ExitCode::kIntegrity);
  }
}

TEST(ParseGames, EmptyInputIsEmptyList) {
  EXPECT_TRUE(parse_games("").empty());
  EXPECT_TRUE(parse_games(kHeader).empty());
}

TEST(ParseGames, MalformedRowsReportLine) {
  const auto expect_parse_error = [](const std::string& body, std::size_t line) {
    try {
      parse_games(std::string(kHeader) + body);
      ADD_FAILURE() << "expected ParseError for: " << body;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << body;
    }
  };
  expect_parse_error("1994,CHI,3,101\n", 2);
  expect_parse_error("1994,CHI,3,101,97,5\n", 2);
  expect_parse_error("1994,CHI,3,10x,97\n", 2);
  expect_parse_error("1994,CHI,3,1e2,97\n", 2);
  expect_parse_error("1994,CHI,3,1,000,97\n", 2);
  expect_parse_error("1994,CHI,1,100,90\n1994,CHI,2,-3,97\n", 3);
  expect_parse_error("1994,,3,101,97\n", 2);
}

TEST(ParseGames, RejectsUnknownHeader) {
  EXPECT_THROW(parse_games("year,team,game,for,against\n1994,CHI,1,100,90\n"), ParseError);
  EXPECT_THROW(parse_games("1994,CHI,1,100,90\n"), ParseError);
}

TEST(ParseGames, ToleratesCrlfWhitespaceAndBom) {
  const auto games =
      parse_games("\xEF\xBB\xBFseason, team ,game_no,pts_for,pts_against\r\n1994, CHI ,1, 100,90\r\n\r\n");
  ASSERT_EQ(games.size(), 1u);
  EXPECT_EQ(games[0], (GameResult{1994, "CHI", 1, 100, 90}));
}

TEST(ParseGames, ExpandsGameLevelRows) {
  const auto games = parse_games(
      "season,game_no_home,game_no_away,home,away,home_pts,away_pts\n"
      "1994,1,1,CHI,NYK,101,97\n");
  ASSERT_EQ(games.size(), 2u);
  EXPECT_EQ(games[0], (GameResult{1994, "CHI", 1, 101, 97}));
  EXPECT_EQ(games[1], (GameResult{1994, "NYK", 1, 97, 101}));
  EXPECT_EQ(margin(games[0]), -margin(games[1]));
  EXPECT_THROW(parse_games("season,game_no_home,game_no_away,home,away,home_pts,away_pts\n"
                           "1994,1,1,CHI,NYK,90,90\n"),
               TieScoreError);
}

TEST(ParseGames, CanonicalCsvRoundTrips) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> pts(60, 150);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<GameResult> games;
    for (int i = 0; i < 50; ++i) {
      int a = pts(rng);
      int b = pts(rng);
      if (a == b) ++b;
      games.push_back({1970 + trial, "T" + std::to_string(i % 7), i + 1, a, b});
    }
    std::ostringstream os;
    write_games_csv(os, games);
    EXPECT_EQ(parse_games(os.str()), games);
  }
}

TEST(Margin, SignedDifference) {
  EXPECT_EQ(margin({1994, "CHI", 1, 104, 100}), 4);
  EXPECT_EQ(margin({1994, "CHI", 1, 97, 101}), -4);
  EXPECT_EQ(margin({1994, "CHI", 1, 145, 100}), 45);
}

TEST(Margin, AntisymmetricUnderSwap) {
  for (int pf = 0; pf < 30; ++pf) {
    for (int pa = 0; pa < 30; ++pa) {
      EXPECT_EQ(margin({0, "X", 1, pf, pa}), -margin({0, "X", 1, pa, pf}));
    }
  }
}

std::vector<GameResult> rows_for(int year, const std::string& team, int n) {
  std::vector<GameResult> out;
  for (int i = 1; i <= n; ++i) out.push_back({year, team, i, 100 + (i % 2 ? 5 : 0), 102});
  return out;
}

TEST(BuildTeamSeasons, GroupsAndOrders) {
  auto rows = rows_for(1994, "CHI", 82);
  std::reverse(rows.begin(), rows.end());
  const auto seasons = build_team_seasons(rows);
  ASSERT_EQ(seasons.size(), 1u);
  EXPECT_EQ(seasons[0].n_games(), 82);
  for (int i = 0; i < 82; ++i) EXPECT_EQ(seasons[0].games[static_cast<std::size_t>(i)].game_index, i + 1);
}

TEST(BuildTeamSeasons, TwoTeams) {
  auto rows = rows_for(1994, "NYK", 82);
  const auto chi = rows_for(1994, "CHI", 82);
  rows.insert(rows.end(), chi.begin(), chi.end());
  const auto seasons = build_team_seasons(rows);
  ASSERT_EQ(seasons.size(), 2u);
  EXPECT_EQ(seasons[0].team_id, "CHI");
  EXPECT_EQ(seasons[1].team_id, "NYK");
}

TEST(BuildTeamSeasons, GapNamesTheGroup) {
  std::vector<GameResult> rows = {{1994, "CHI", 1, 100, 90}, {1994, "CHI", 2, 100, 90},
                                  {1994, "CHI", 4, 100, 90}};
  try {
    build_team_seasons(rows);
    FAIL();
  } catch (const IntegrityError& e) {
    EXPECT_NE(std::string(e.what()).find("1994/CHI"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("missing game_no 3"), std::string::npos);
  }
}

TEST(BuildTeamSeasons, DuplicateIndex) {
  std::vector<GameResult> rows = {{1994, "CHI", 1, 100, 90}, {1994, "CHI", 2, 100, 90},
                                  {1994, "CHI", 2, 90, 100}};
  EXPECT_THROW(build_team_seasons(rows), IntegrityError);
}

TEST(BuildTeamSeasons, SingleGameSeasonIsDegenerate) {
  std::vector<GameResult> rows = {{1994, "CHI", 1, 100, 90}};
  EXPECT_THROW(build_team_seasons(rows), DegenerateSeasonError);
}

TEST(SplitHalf, EightyTwoGames) {
  std::vector<int> margins(82, -3);
  for (int i = 41; i < 41 + 25; ++i) margins[static_cast<std::size_t>(i)] = 5;
  const auto season = testing::season_from_margins(1994, "CHI", margins);
  const auto split = split_half(season);
  EXPECT_EQ(split.first_half.size(), 41u);
  EXPECT_EQ(split.second_half_games, 41);
  EXPECT_DOUBLE_EQ(split.second_half_win_fraction, 25.0 / 41.0);
}

TEST(SplitHalf, LockoutSeasonAndOddLength) {
  const auto fifty = testing::season_from_margins(1999, "CHI", std::vector<int>(50, 1));
  EXPECT_EQ(split_half(fifty).first_half.size(), 25u);
  const auto odd = testing::season_from_margins(1999, "CHI", std::vector<int>(7, 1));
  const auto split = split_half(odd);
  EXPECT_EQ(split.first_half.size(), 3u);
  EXPECT_EQ(split.second_half_games, 4);
}

TEST(SplitHalf, AllWinsIsOne) {
  std::vector<int> margins(20, -1);
  for (int i = 10; i < 20; ++i) margins[static_cast<std::size_t>(i)] = 2;
  EXPECT_EQ(split_half(testing::season_from_margins(2000, "A", margins)).second_half_win_fraction, 1.0);
}

TEST(SplitHalf, DegenerateSeason) {
  EXPECT_THROW(split_half(testing::season_from_margins(2000, "A", {3})), DegenerateSeasonError);
  EXPECT_THROW(split_half(TeamSeason{2000, "A", {}}), DegenerateSeasonError);
}

TEST(SplitHalf, PartitionAndFractionBounds) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> len(2, 90);
  std::uniform_int_distribution<int> m(-30, 30);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> margins(static_cast<std::size_t>(len(rng)));
    for (auto& v : margins) {
      do v = m(rng); while (v == 0);
    }
    const auto season = testing::season_from_margins(2000, "A", margins);
    const auto split = split_half(season);
    EXPECT_EQ(static_cast<int>(split.first_half.size()) + split.second_half_games, season.n_games());
    EXPECT_GE(split.second_half_win_fraction, 0.0);
    EXPECT_LE(split.second_half_win_fraction, 1.0);
  }
}

}  // namespace
}  // namespace pdrank
