#include "pdrank/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <thread>

#include "pdrank/errors.hpp"

namespace pdrank {
namespace {

std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string six_digits(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Evaluates fn(i) for i in [0, n) over a small worker pool. Results land in
// index order; if any call throws, the exception from the lowest index wins.
std::vector<double> parallel_map(std::size_t n, unsigned threads,
                                 const std::function<double(std::size_t)>& fn) {
  std::vector<double> out(n);
  std::vector<std::exception_ptr> errors(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

SweepResult assemble(std::string name, std::span<const double> parameters,
                     const std::vector<double>& correlations) {
  SweepResult result;
  result.parameter_name = std::move(name);
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    result.points.push_back({parameters[i], correlations[i]});
  }
  std::stable_sort(result.points.begin(), result.points.end(),
                   [](const SweepPoint& a, const SweepPoint& b) { return a.parameter < b.parameter; });
  result.argmax = result.points.front();
  for (const auto& p : result.points) {
    if (p.correlation > result.argmax.correlation) result.argmax = p;
  }
  return result;
}

std::vector<double> indicator_values(std::span<const TeamSeason> seasons, const IndicatorSpec& spec) {
  const auto values = compute_indicator(seasons, spec);
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.value);
  return out;
}

void require_seasons(std::span<const TeamSeason> seasons) {
  if (seasons.size() < 2) {
    throw DimensionError("at least 2 team-seasons are needed for a correlation, got " +
                         std::to_string(seasons.size()));
  }
}

void require_positive_grid(std::span<const double> values, const char* what) {
  if (values.empty()) throw ParameterError(std::string(what) + " grid is empty");
  for (const double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ParameterError(std::string(what) + " values must be positive and finite, got " +
                           six_digits(v));
    }
  }
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw DimensionError("pearson: length mismatch (" + std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) throw DimensionError("pearson: need at least 2 points");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!std::isfinite(sxx) || !std::isfinite(syy) || !std::isfinite(sxy)) {
    throw NumericError("pearson: non-finite input");
  }
  if (sxx == 0.0) throw UndefinedCorrelationError("pearson: first variable is constant");
  if (syy == 0.0) throw UndefinedCorrelationError("pearson: second variable is constant");
  const double r = sxy / (std::sqrt(sxx) * std::sqrt(syy));
  return std::clamp(r, -1.0, 1.0);
}

std::string describe(const IndicatorSpec& spec) {
  struct Visitor {
    std::string operator()(const WinLossSpec&) const { return "win-loss"; }
    std::string operator()(const WeightedSpec& s) const { return "wpd:" + s.weight.describe(); }
    std::string operator()(const PythagoreanSpec& s) const {
      return "pythagorean(" + six_digits(s.exponent) + ")";
    }
  };
  return std::visit(Visitor{}, spec);
}

std::vector<IndicatorValue> compute_indicator(std::span<const TeamSeason> seasons,
                                              const IndicatorSpec& spec) {
  std::vector<IndicatorValue> out;
  out.reserve(seasons.size());
  for (const auto& s : seasons) {
    out.push_back(std::visit(
        [&s](const auto& v) -> IndicatorValue {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, WinLossSpec>) {
            return win_loss_indicator(s);
          } else if constexpr (std::is_same_v<T, WeightedSpec>) {
            return wpd(s, v.weight);
          } else {
            return pythagorean(s, v.exponent);
          }
        },
        spec));
  }
  return out;
}

std::vector<double> second_half_targets(std::span<const TeamSeason> seasons) {
  std::vector<double> out;
  out.reserve(seasons.size());
  for (const auto& s : seasons) out.push_back(split_half(s).second_half_win_fraction);
  return out;
}

double evaluate_indicator(std::span<const TeamSeason> seasons, const IndicatorSpec& spec) {
  require_seasons(seasons);
  const auto targets = second_half_targets(seasons);
  return pearson(indicator_values(seasons, spec), targets);
}

SweepResult sweep_cap(std::span<const TeamSeason> seasons, int cap_min, int cap_max,
                      unsigned threads) {
  if (cap_min < 1 || cap_max < cap_min) {
    throw ParameterError("cap range must satisfy 1 <= cap_min <= cap_max, got " +
                         std::to_string(cap_min) + ".." + std::to_string(cap_max));
  }
  require_seasons(seasons);
  const auto targets = second_half_targets(seasons);
  std::vector<double> caps;
  for (int c = cap_min; c <= cap_max; ++c) caps.push_back(c);
  const auto r = parallel_map(caps.size(), threads, [&](std::size_t i) {
    const WeightedSpec spec{WeightFunction::hard_cap(static_cast<int>(caps[i]))};
    return pearson(indicator_values(seasons, spec), targets);
  });
  return assemble("cap", caps, r);
}

SweepResult sweep_softcap(std::span<const TeamSeason> seasons, SoftCapKind kind,
                          std::span<const double> d_values, unsigned threads) {
  require_positive_grid(d_values, "D");
  require_seasons(seasons);
  const auto targets = second_half_targets(seasons);
  const auto r = parallel_map(d_values.size(), threads, [&](std::size_t i) {
    const WeightedSpec spec{WeightFunction::soft_cap(kind, d_values[i])};
    return pearson(indicator_values(seasons, spec), targets);
  });
  return assemble("D", d_values, r);
}

SweepResult sweep_pythagorean(std::span<const TeamSeason> seasons,
                              std::span<const double> exponents, unsigned threads) {
  require_positive_grid(exponents, "exponent");
  require_seasons(seasons);
  const auto targets = second_half_targets(seasons);
  const auto r = parallel_map(exponents.size(), threads, [&](std::size_t i) {
    return pearson(indicator_values(seasons, PythagoreanSpec{exponents[i]}), targets);
  });
  return assemble("exp", exponents, r);
}

std::vector<double> linear_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop) || stop < start) {
    throw ParameterError("grid needs start <= stop and a positive step");
  }
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) grid.push_back(start + static_cast<double>(i) * step);
  return grid;
}

std::vector<double> default_d_grid() { return linear_grid(0.5, 40.0, 0.5); }
std::vector<double> default_exponent_grid() { return linear_grid(0.5, 5.0, 0.05); }

IndicatorReport table1_report(std::span<const TeamSeason> seasons, const ReportGrids& grids,
                              unsigned threads) {
  IndicatorReport report;
  auto add_row = [&](std::string name, std::string parameter_name, const auto& compute) {
    ReportRow row;
    row.indicator = std::move(name);
    row.parameter_name = std::move(parameter_name);
    try {
      compute(row);
    } catch (const NumericError& e) {
      row.error = e.what();
    } catch (const DataError& e) {
      row.error = e.what();
    }
    report.rows.push_back(std::move(row));
  };
  auto from_sweep = [](const SweepResult& sweep, ReportRow& row) {
    row.best_parameter = sweep.argmax.parameter;
    row.correlation = sweep.argmax.correlation;
  };

  require_seasons(seasons);
  add_row("Win-loss", "", [&](ReportRow& row) {
    row.correlation = evaluate_indicator(seasons, WinLossSpec{});
  });
  add_row("Point-differential", "", [&](ReportRow& row) {
    row.correlation = evaluate_indicator(seasons, WeightedSpec{WeightFunction::identity()});
  });
  add_row("Capped point-differential", "cap", [&](ReportRow& row) {
    from_sweep(sweep_cap(seasons, grids.cap_min, grids.cap_max, threads), row);
  });
  add_row("Hyperbolic tangent", "D", [&](ReportRow& row) {
    from_sweep(sweep_softcap(seasons, SoftCapKind::kTanh, grids.d_values, threads), row);
  });
  add_row("Error function", "D", [&](ReportRow& row) {
    from_sweep(sweep_softcap(seasons, SoftCapKind::kErf, grids.d_values, threads), row);
  });
  add_row("Exponential", "D", [&](ReportRow& row) {
    from_sweep(sweep_softcap(seasons, SoftCapKind::kExp, grids.d_values, threads), row);
  });
  add_row("Pythagorean winning percentage", "exp", [&](ReportRow& row) {
    from_sweep(sweep_pythagorean(seasons, grids.exponents, threads), row);
  });
  return report;
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  out << "parameter,correlation\n";
  for (const auto& p : sweep.points) {
    out << full_precision(p.parameter) << ',' << full_precision(p.correlation) << '\n';
  }
}

void write_sweep_json(std::ostream& out, const SweepResult& sweep) {
  nlohmann::json j;
  j["parameter_name"] = sweep.parameter_name;
  auto points = nlohmann::json::array();
  for (const auto& p : sweep.points) points.push_back({p.parameter, p.correlation});
  j["points"] = std::move(points);
  j["argmax"] = {{"parameter", sweep.argmax.parameter},
                 {"correlation", sweep.argmax.correlation}};
  out << j.dump(2) << '\n';
}

void write_report_text(std::ostream& out, const IndicatorReport& report) {
  std::size_t name_width = std::string("Indicator type").size();
  for (const auto& row : report.rows) name_width = std::max(name_width, row.indicator.size());

  out << std::left << std::setw(static_cast<int>(name_width)) << "Indicator type" << "  "
      << std::setw(16) << "Best parameter" << "  " << "Correlation to 2nd half win-loss\n";
  for (const auto& row : report.rows) {
    std::string param = "-";
    if (row.best_parameter) param = row.parameter_name + "=" + six_digits(*row.best_parameter);
    out << std::left << std::setw(static_cast<int>(name_width)) << row.indicator << "  "
        << std::setw(16) << param << "  ";
    if (row.correlation) {
      out << six_digits(*row.correlation * 100.0) << "%";
    } else {
      out << "error: " << row.error;
    }
    out << '\n';
  }
}

void write_report_csv(std::ostream& out, const IndicatorReport& report) {
  out << "indicator,parameter_name,best_parameter,correlation,error\n";
  for (const auto& row : report.rows) {
    out << row.indicator << ',' << row.parameter_name << ','
        << (row.best_parameter ? full_precision(*row.best_parameter) : "") << ','
        << (row.correlation ? full_precision(*row.correlation) : "") << ',';
    // Errors may contain commas; quote them.
    if (!row.error.empty()) {
      std::string quoted = "\"";
      for (const char c : row.error) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      out << quoted << '"';
    }
    out << '\n';
  }
}

void write_report_json(std::ostream& out, const IndicatorReport& report) {
  auto rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json j;
    j["indicator"] = row.indicator;
    j["parameter_name"] = row.parameter_name.empty() ? nlohmann::json() : nlohmann::json(row.parameter_name);
    j["best_parameter"] = row.best_parameter ? nlohmann::json(*row.best_parameter) : nlohmann::json();
    j["correlation"] = row.correlation ? nlohmann::json(*row.correlation) : nlohmann::json();
    if (!row.error.empty()) j["error"] = row.error;
    rows.push_back(std::move(j));
  }
  out << nlohmann::json{{"rows", rows}}.dump(2) << '\n';
}

}  // namespace pdrank
