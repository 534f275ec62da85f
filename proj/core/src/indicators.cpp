#include "pdrank/indicators.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "pdrank/errors.hpp"

namespace pdrank {

IndicatorValue wpd(const TeamSeason& season, const WeightFunction& w) {
  const auto split = split_half(season);
  double sum = 0.0;
  for (const auto& g : split.first_half) sum += w(margin(g));
  return {season.key(), sum / static_cast<double>(split.first_half.size())};
}

IndicatorValue win_loss_indicator(const TeamSeason& season) {
  const auto split = split_half(season);
  int wins = 0;
  for (const auto& g : split.first_half) {
    if (margin(g) > 0) ++wins;
  }
  return {season.key(), static_cast<double>(wins) / static_cast<double>(split.first_half.size())};
}

IndicatorValue pythagorean(const TeamSeason& season, double exponent) {
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw ParameterError("pythagorean exponent must be positive and finite");
  }
  const auto split = split_half(season);
  long long scored = 0;
  long long allowed = 0;
  for (const auto& g : split.first_half) {
    scored += g.points_for;
    allowed += g.points_against;
  }
  if (scored <= 0 || allowed <= 0) {
    throw DegenerateInputError("team-season " + to_string(season.key()) +
                               ": first-half points scored and allowed must both be positive");
  }
  // Written as 1 / (1 + (allowed/scored)^exp) to stay finite for large exponents.
  const double ratio = static_cast<double>(allowed) / static_cast<double>(scored);
  return {season.key(), 1.0 / (1.0 + std::pow(ratio, exponent))};
}

void write_indicator_csv(std::ostream& out, std::span<const IndicatorValue> values) {
  out << "season,team,value\n";
  char buf[40];
  for (const auto& v : values) {
    std::snprintf(buf, sizeof buf, "%.17g", v.value);
    out << v.key.season_year << ',' << v.key.team_id << ',' << buf << '\n';
  }
}

}  // namespace pdrank
