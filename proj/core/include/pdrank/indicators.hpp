#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "pdrank/game_data.hpp"
#include "pdrank/weighting.hpp"

namespace pdrank {

struct IndicatorValue {
  TeamKey key;
  double value = 0.0;
};

/// Weighted point-differential over the first half: the mean of w(margin)
/// across games 1..floor(N/2). For even N this is (2/N) * sum.
IndicatorValue wpd(const TeamSeason& season, const WeightFunction& w);

/// First-half wins / first-half games.
IndicatorValue win_loss_indicator(const TeamSeason& season);

/// scored^exp / (scored^exp + allowed^exp) over first-half point totals.
/// Throws ParameterError for exp <= 0 and DegenerateInputError when either
/// total is zero.
IndicatorValue pythagorean(const TeamSeason& season, double exponent);

/// `season,team,value` with full-precision values.
void write_indicator_csv(std::ostream& out, std::span<const IndicatorValue> values);

}  // namespace pdrank
