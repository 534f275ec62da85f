#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pdrank/game_data.hpp"
#include "pdrank/indicators.hpp"
#include "pdrank/weighting.hpp"

namespace pdrank {

/// Sample Pearson correlation. Throws DimensionError on length mismatch or
/// fewer than two points, UndefinedCorrelationError if either input is constant.
double pearson(std::span<const double> x, std::span<const double> y);

struct WinLossSpec {};
struct WeightedSpec {
  WeightFunction weight;
};
struct PythagoreanSpec {
  double exponent;
};
/// A first-half indicator with its parameters bound.
using IndicatorSpec = std::variant<WinLossSpec, WeightedSpec, PythagoreanSpec>;

std::string describe(const IndicatorSpec& spec);

std::vector<IndicatorValue> compute_indicator(std::span<const TeamSeason> seasons,
                                              const IndicatorSpec& spec);
std::vector<double> second_half_targets(std::span<const TeamSeason> seasons);

/// Pearson r between the indicator and the second-half win fraction, pooled
/// over all team-seasons.
double evaluate_indicator(std::span<const TeamSeason> seasons, const IndicatorSpec& spec);

struct SweepPoint {
  double parameter = 0.0;
  double correlation = 0.0;
};

struct SweepResult {
  std::string parameter_name;
  std::vector<SweepPoint> points;  // ascending parameter
  SweepPoint argmax;               // first point reaching the maximum
};

/// Sweep evaluation may fan out over `threads` workers (0 = hardware
/// concurrency); results are identical for any thread count.
SweepResult sweep_cap(std::span<const TeamSeason> seasons, int cap_min, int cap_max,
                      unsigned threads = 1);
SweepResult sweep_softcap(std::span<const TeamSeason> seasons, SoftCapKind kind,
                          std::span<const double> d_values, unsigned threads = 1);
SweepResult sweep_pythagorean(std::span<const TeamSeason> seasons,
                              std::span<const double> exponents, unsigned threads = 1);

/// start, start + step, ... up to stop inclusive; each value is start + i * step.
std::vector<double> linear_grid(double start, double stop, double step);

inline constexpr int kDefaultCapMin = 1;
inline constexpr int kDefaultCapMax = 40;
std::vector<double> default_d_grid();         // 0.5, 1.0, ..., 40
std::vector<double> default_exponent_grid();  // 0.5, 0.55, ..., 5

struct ReportRow {
  std::string indicator;
  std::string parameter_name;            // empty when unparameterized
  std::optional<double> best_parameter;
  std::optional<double> correlation;     // empty when the row failed
  std::string error;
};

struct IndicatorReport {
  std::vector<ReportRow> rows;
};

struct ReportGrids {
  int cap_min = kDefaultCapMin;
  int cap_max = kDefaultCapMax;
  std::vector<double> d_values = default_d_grid();
  std::vector<double> exponents = default_exponent_grid();
};

/// Win-loss, point-differential, then the best capped PD, tanh, erf, exp
/// and Pythagorean rows, each parameterized row taken at its sweep's argmax.
/// Numeric failures are recorded on the row instead of aborting the report.
IndicatorReport table1_report(std::span<const TeamSeason> seasons, const ReportGrids& grids = {},
                              unsigned threads = 1);

void write_sweep_csv(std::ostream& out, const SweepResult& sweep);
void write_sweep_json(std::ostream& out, const SweepResult& sweep);
/// Aligned table, correlations as percentages with 6 significant digits.
void write_report_text(std::ostream& out, const IndicatorReport& report);
void write_report_csv(std::ostream& out, const IndicatorReport& report);
void write_report_json(std::ostream& out, const IndicatorReport& report);

}  // namespace pdrank
