#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "pdrank/errors.hpp"
#include "pdrank/evaluation.hpp"
#include "pdrank/game_data.hpp"
#include "pdrank/indicators.hpp"
#include "pdrank/regression.hpp"
#include "pdrank/synth.hpp"
#include "pdrank/weighting.hpp"

namespace pdrank::cli {
namespace {

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  2  validation error (bad flag or parameter value)\n"
    "  3  data integrity error (malformed CSV, tie score, missing/duplicate game_no)\n"
    "  4  numeric error (undefined correlation, divergence, singular system)\n"
    "  5  I/O error (unreadable input, unwritable output)\n";

std::string six_digits(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string single_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

struct Common {
  std::string in;
  std::string out;
  std::string format;
  unsigned threads = 1;
};

void add_input(CLI::App* cmd, Common& c) {
  cmd->add_option("--in", c.in, "Team-game or game-level CSV")->required();
}

void add_output(CLI::App* cmd, Common& c, std::string default_format,
                const std::vector<std::string>& formats) {
  c.format = std::move(default_format);
  cmd->add_option("--out", c.out, "Output path (default: stdout)");
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
}

void add_threads(CLI::App* cmd, Common& c) {
  cmd->add_option("--threads", c.threads, "Sweep worker threads (0 = all cores)")
      ->capture_default_str();
}

/// Collects the output in memory and writes it in one go.
void emit(const Common& c, const std::string& payload, std::ostream& out) {
  if (c.out.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(c.out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + c.out + "' for writing");
  file << payload;
  file.flush();
  if (!file) throw IoError("write to '" + c.out + "' failed");
}

std::vector<TeamSeason> load_seasons(const std::string& path) {
  const auto games = read_games_file(path);
  return build_team_seasons(games);
}

std::vector<double> grid_from(const std::vector<double>& explicit_values, double lo, double hi,
                              double step) {
  if (!explicit_values.empty()) {
    auto values = explicit_values;
    std::sort(values.begin(), values.end());
    return values;
  }
  return linear_grid(lo, hi, step);
}

std::string sweep_payload(const SweepResult& sweep, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    write_sweep_json(os, sweep);
  } else if (format == "text") {
    os << sweep.parameter_name << "  correlation\n";
    for (const auto& p : sweep.points) {
      os << six_digits(p.parameter) << "  " << six_digits(p.correlation) << '\n';
    }
    os << "argmax " << sweep.parameter_name << '=' << six_digits(sweep.argmax.parameter)
       << " r=" << six_digits(sweep.argmax.correlation) << '\n';
  } else {
    write_sweep_csv(os, sweep);
  }
  return os.str();
}

std::string ingest_summary(const std::vector<GameResult>& games,
                           const std::vector<TeamSeason>& seasons, const std::string& format) {
  std::map<int, int> length_histogram;
  std::set<int> years;
  int max_abs_margin = 0;
  for (const auto& s : seasons) {
    ++length_histogram[s.n_games()];
    years.insert(s.season_year);
  }
  for (const auto& g : games) max_abs_margin = std::max(max_abs_margin, std::abs(margin(g)));

  std::ostringstream os;
  if (format == "json") {
    nlohmann::json j;
    j["rows"] = games.size();
    j["team_seasons"] = seasons.size();
    j["seasons"] = years.size();
    j["first_season"] = years.empty() ? nlohmann::json() : nlohmann::json(*years.begin());
    j["last_season"] = years.empty() ? nlohmann::json() : nlohmann::json(*years.rbegin());
    j["max_abs_margin"] = max_abs_margin;
    auto lengths = nlohmann::json::object();
    for (const auto& [n, count] : length_histogram) lengths[std::to_string(n)] = count;
    j["season_lengths"] = lengths;
    os << j.dump(2) << '\n';
  } else if (format == "csv") {
    write_games_csv(os, games);
  } else {
    os << "rows            " << games.size() << '\n';
    os << "team-seasons    " << seasons.size() << '\n';
    os << "seasons         " << years.size();
    if (!years.empty()) os << " (" << *years.begin() << "-" << *years.rbegin() << ")";
    os << '\n';
    os << "max |margin|    " << max_abs_margin << '\n';
    for (const auto& [n, count] : length_histogram) {
      os << "games=" << n << "  " << count << " team-season(s)\n";
    }
  }
  return os.str();
}

std::string fit_payload(const FitResult& fit, std::span<const TeamSeason> seasons,
                        const std::string& format) {
  std::ostringstream os;
  if (format == "csv") {
    write_weight_csv(os, fit.weight_vector());
  } else if (format == "text") {
    const auto values = learned_weights_indicator(seasons, fit);
    std::vector<double> x;
    for (const auto& v : values) x.push_back(v.value);
    const double r = pearson(x, second_half_targets(seasons));
    os << "lambda           " << six_digits(fit.lambda) << '\n';
    os << "learning_rate    " << six_digits(fit.learning_rate) << '\n';
    os << "iterations       " << fit.iterations << (fit.converged ? " (converged)" : "") << '\n';
    os << "final_loss       " << six_digits(fit.final_loss) << '\n';
    os << "in-sample r      " << six_digits(r) << "  (training data; not a forecast metric)\n";
    os << "margin  weight\n";
    const auto w = fit.weight_vector();
    for (int i = 0; i < WeightVector::kSize; ++i) {
      os << WeightVector::margin_of(i) << "  " << six_digits(w[i]) << '\n';
    }
  } else {
    write_fit_json(os, fit);
  }
  return os.str();
}

std::string report_payload(const IndicatorReport& report, const std::string& format) {
  std::ostringstream os;
  if (format == "csv") {
    write_report_csv(os, report);
  } else if (format == "json") {
    write_report_json(os, report);
  } else {
    write_report_text(os, report);
  }
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pdrank: weighted point-differential indicators of team strength"};
  app.require_subcommand(1, 1);
  app.footer(kExitCodes);
  app.set_version_flag("--version", "pdrank 0.1.0");

  // ingest-check
  Common ingest;
  auto* ingest_cmd = app.add_subcommand("ingest-check", "Validate a games CSV and summarize it");
  add_input(ingest_cmd, ingest);
  add_output(ingest_cmd, ingest, "text", {"text", "json", "csv"});

  // sweep-cap
  Common cap;
  int cap_min = kDefaultCapMin;
  int cap_max = kDefaultCapMax;
  auto* cap_cmd = app.add_subcommand("sweep-cap", "Correlation of capped point-differential vs cap");
  add_input(cap_cmd, cap);
  cap_cmd->add_option("--cap-min", cap_min, "Smallest cap")->capture_default_str();
  cap_cmd->add_option("--cap-max", cap_max, "Largest cap")->capture_default_str();
  add_output(cap_cmd, cap, "csv", {"csv", "json", "text"});
  add_threads(cap_cmd, cap);

  // sweep-soft
  Common soft;
  std::string soft_fn;
  std::vector<double> d_values;
  double d_min = 0.5, d_max = 40.0, d_step = 0.5;
  auto* soft_cmd = app.add_subcommand("sweep-soft", "Correlation of a soft-cap weighting vs scale D");
  add_input(soft_cmd, soft);
  soft_cmd->add_option("--fn", soft_fn, "Soft-cap function")
      ->required()
      ->check(CLI::IsMember({"tanh", "erf", "exp"}));
  soft_cmd->add_option("--d", d_values, "Explicit D values (overrides the grid)")->delimiter(',');
  soft_cmd->add_option("--d-min", d_min, "Grid start")->capture_default_str();
  soft_cmd->add_option("--d-max", d_max, "Grid end (inclusive)")->capture_default_str();
  soft_cmd->add_option("--d-step", d_step, "Grid step")->capture_default_str();
  add_output(soft_cmd, soft, "csv", {"csv", "json", "text"});
  add_threads(soft_cmd, soft);

  // sweep-pyth
  Common pyth;
  std::vector<double> exp_values;
  double exp_min = 0.5, exp_max = 5.0, exp_step = 0.05;
  auto* pyth_cmd = app.add_subcommand("sweep-pyth", "Correlation of Pythagorean win % vs exponent");
  add_input(pyth_cmd, pyth);
  pyth_cmd->add_option("--exp", exp_values, "Explicit exponents (overrides the grid)")->delimiter(',');
  pyth_cmd->add_option("--exp-min", exp_min, "Grid start")->capture_default_str();
  pyth_cmd->add_option("--exp-max", exp_max, "Grid end (inclusive)")->capture_default_str();
  pyth_cmd->add_option("--exp-step", exp_step, "Grid step")->capture_default_str();
  add_output(pyth_cmd, pyth, "csv", {"csv", "json", "text"});
  add_threads(pyth_cmd, pyth);

  // fit-weights
  Common fit_io;
  GdOptions gd;
  double learning_rate = 0.0;
  std::string oob = "clamp";
  std::string weights_out;
  auto* fit_cmd = app.add_subcommand("fit-weights", "Fit per-margin weights by ridge gradient descent");
  add_input(fit_cmd, fit_io);
  fit_cmd->add_option("--lambda", gd.lambda, "Ridge penalty")->capture_default_str();
  fit_cmd->add_option("--lr", learning_rate,
                      "Learning rate (default 1/(2(trace(X'X)+lambda*81)))");
  fit_cmd->add_option("--iterations", gd.iterations, "Maximum gradient steps")->capture_default_str();
  fit_cmd->add_option("--tolerance", gd.tolerance,
                      "Stop when relative loss change falls below this (<= 0 disables)")
      ->capture_default_str();
  fit_cmd->add_option("--trace-every", gd.trace_every, "Steps between trace points")
      ->capture_default_str();
  fit_cmd->add_option("--oob", oob, "Margins beyond +/-40: clamp into edge bins or drop")
      ->check(CLI::IsMember({"clamp", "drop"}))
      ->capture_default_str();
  fit_cmd->add_option("--weights-out", weights_out, "Also write the 81 weights as margin,weight CSV");
  add_output(fit_cmd, fit_io, "json", {"json", "csv", "text"});

  // table1
  Common table;
  ReportGrids grids;
  auto* table_cmd = app.add_subcommand("table1", "Summary of every indicator at its best parameter");
  add_input(table_cmd, table);
  table_cmd->add_option("--cap-min", grids.cap_min, "Cap sweep start")->capture_default_str();
  table_cmd->add_option("--cap-max", grids.cap_max, "Cap sweep end")->capture_default_str();
  add_output(table_cmd, table, "text", {"text", "csv", "json"});
  add_threads(table_cmd, table);

  // indicator
  Common ind;
  std::string ind_kind;
  int ind_cap = 20;
  double ind_d = 12.0;
  double ind_exp = 2.4;
  std::string ind_weights;
  auto* ind_cmd = app.add_subcommand("indicator", "Export one first-half indicator per team-season");
  add_input(ind_cmd, ind);
  ind_cmd->add_option("--kind", ind_kind, "Indicator")
      ->required()
      ->check(CLI::IsMember({"winloss", "pd", "cap", "tanh", "erf", "exp", "pyth", "lookup"}));
  ind_cmd->add_option("--cap", ind_cap, "Cap for --kind cap")->capture_default_str();
  ind_cmd->add_option("--d", ind_d, "Scale D for tanh/erf/exp")->capture_default_str();
  ind_cmd->add_option("--exp", ind_exp, "Pythagorean exponent")->capture_default_str();
  ind_cmd->add_option("--weights", ind_weights, "margin,weight CSV for --kind lookup");
  add_output(ind_cmd, ind, "csv", {"csv"});

  // synth
  Common synth_io;
  SynthConfig synth_cfg;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a deterministic synthetic games CSV");
  synth_cmd->add_option("--seed", synth_cfg.seed, "RNG seed")->capture_default_str();
  synth_cmd->add_option("--teams", synth_cfg.n_teams, "Teams per season")->capture_default_str();
  synth_cmd->add_option("--games", synth_cfg.n_games, "Games per team-season")->capture_default_str();
  synth_cmd->add_option("--seasons", synth_cfg.n_seasons, "Number of seasons")->capture_default_str();
  synth_cmd->add_option("--spread", synth_cfg.strength_spread, "Std of latent team strength (points)")
      ->capture_default_str();
  synth_cmd->add_option("--noise", synth_cfg.noise_std, "Std of per-game margin noise (points)")
      ->capture_default_str();
  synth_cmd->add_option("--first-season", synth_cfg.first_season, "Year of the first season")
      ->capture_default_str();
  add_output(synth_cmd, synth_io, "csv", {"csv"});

  for (auto* sub : app.get_subcommands({})) sub->footer(kExitCodes);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "pdrank: error code=" << static_cast<int>(ExitCode::kValidation)
        << " kind=usage: " << single_line(e.what()) << '\n';
    return static_cast<int>(ExitCode::kValidation);
  }

  try {
    if (*ingest_cmd) {
      const auto games = read_games_file(ingest.in);
      const auto seasons = build_team_seasons(games);
      for (const auto& s : seasons) split_half(s);
      emit(ingest, ingest_summary(games, seasons, ingest.format), out);
    } else if (*cap_cmd) {
      if (cap_min < 1 || cap_max < cap_min) {
        throw ParameterError("cap range must satisfy 1 <= cap-min <= cap-max");
      }
      const auto seasons = load_seasons(cap.in);
      emit(cap, sweep_payload(sweep_cap(seasons, cap_min, cap_max, cap.threads), cap.format), out);
    } else if (*soft_cmd) {
      const auto kind = parse_soft_cap_kind(soft_fn);
      const auto grid = grid_from(d_values, d_min, d_max, d_step);
      for (const double d : grid) WeightFunction::soft_cap(kind, d);
      const auto seasons = load_seasons(soft.in);
      emit(soft, sweep_payload(sweep_softcap(seasons, kind, grid, soft.threads), soft.format), out);
    } else if (*pyth_cmd) {
      const auto grid = grid_from(exp_values, exp_min, exp_max, exp_step);
      for (const double e : grid) {
        if (!(e > 0.0)) throw ParameterError("exponents must be positive");
      }
      const auto seasons = load_seasons(pyth.in);
      emit(pyth, sweep_payload(sweep_pythagorean(seasons, grid, pyth.threads), pyth.format), out);
    } else if (*fit_cmd) {
      if (fit_cmd->count("--lr") > 0) gd.learning_rate = learning_rate;
      if (gd.learning_rate && !(*gd.learning_rate > 0.0)) {
        throw ParameterError("--lr must be positive");
      }
      if (!(gd.lambda >= 0.0)) throw ParameterError("--lambda must be >= 0");
      if (gd.iterations < 1) throw ParameterError("--iterations must be >= 1");
      if (gd.trace_every < 1) throw ParameterError("--trace-every must be >= 1");
      const auto policy = parse_out_of_range(oob);
      const auto seasons = load_seasons(fit_io.in);
      const auto data = featurize(seasons, policy);
      const auto fit = ridge_gd_fit(data.x, data.y, gd);
      if (!weights_out.empty()) {
        std::ostringstream os;
        write_weight_csv(os, fit.weight_vector());
        Common side;
        side.out = weights_out;
        emit(side, os.str(), out);
      }
      emit(fit_io, fit_payload(fit, seasons, fit_io.format), out);
    } else if (*table_cmd) {
      if (grids.cap_min < 1 || grids.cap_max < grids.cap_min) {
        throw ParameterError("cap range must satisfy 1 <= cap-min <= cap-max");
      }
      const auto seasons = load_seasons(table.in);
      emit(table, report_payload(table1_report(seasons, grids, table.threads), table.format), out);
    } else if (*ind_cmd) {
      IndicatorSpec spec = WinLossSpec{};
      if (ind_kind == "pd") {
        spec = WeightedSpec{WeightFunction::identity()};
      } else if (ind_kind == "cap") {
        spec = WeightedSpec{WeightFunction::hard_cap(ind_cap)};
      } else if (ind_kind == "tanh" || ind_kind == "erf" || ind_kind == "exp") {
        spec = WeightedSpec{WeightFunction::soft_cap(parse_soft_cap_kind(ind_kind), ind_d)};
      } else if (ind_kind == "pyth") {
        if (!(ind_exp > 0.0)) throw ParameterError("--exp must be positive");
        spec = PythagoreanSpec{ind_exp};
      } else if (ind_kind == "lookup") {
        if (ind_weights.empty()) throw ParameterError("--kind lookup needs --weights");
        std::ifstream wf(ind_weights);
        if (!wf) throw IoError("cannot open '" + ind_weights + "' for reading");
        spec = WeightedSpec{WeightFunction::lookup(read_weight_csv(wf))};
      }
      const auto seasons = load_seasons(ind.in);
      std::ostringstream os;
      write_indicator_csv(os, compute_indicator(seasons, spec));
      emit(ind, os.str(), out);
    } else if (*synth_cmd) {
      validate(synth_cfg);
      std::ostringstream os;
      write_games_csv(os, generate(synth_cfg));
      emit(synth_io, os.str(), out);
    }
  } catch (const Error& e) {
    err << "pdrank: error code=" << static_cast<int>(e.code()) << " kind=" << e.kind() << ": "
        << single_line(e.what()) << '\n';
    return static_cast<int>(e.code());
  }
  return 0;
}

}  // namespace pdrank::cli
