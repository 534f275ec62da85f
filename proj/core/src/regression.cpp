#include "pdrank/regression.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <nlohmann/json.hpp>
#include <ostream>

#include "pdrank/errors.hpp"
#include "pdrank/evaluation.hpp"

namespace pdrank {
namespace {

void check_dimensions(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  if (x.rows() == 0 || x.cols() == 0) throw DimensionError("design matrix is empty");
  if (x.rows() != y.size()) {
    throw DimensionError("design matrix has " + std::to_string(x.rows()) + " rows but target has " +
                         std::to_string(y.size()) + " entries");
  }
}

void check_lambda(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ParameterError("ridge lambda must be a nonnegative finite number");
  }
}

std::optional<double> trace_correlation(const RidgeProblem& problem, const Eigen::VectorXd& w,
                                        std::span<const double> row_scale) {
  Eigen::VectorXd prediction = problem.x() * w;
  if (!row_scale.empty()) {
    for (Eigen::Index r = 0; r < prediction.size(); ++r) {
      prediction[r] /= row_scale[static_cast<std::size_t>(r)];
    }
  }
  try {
    return pearson(std::span<const double>(prediction.data(), static_cast<std::size_t>(prediction.size())),
                   std::span<const double>(problem.y().data(), static_cast<std::size_t>(problem.y().size())));
  } catch (const UndefinedCorrelationError&) {
    return std::nullopt;
  }
}

}  // namespace

std::string to_string(OutOfRange policy) {
  return policy == OutOfRange::kClamp ? "clamp" : "drop";
}

OutOfRange parse_out_of_range(const std::string& name) {
  if (name == "clamp") return OutOfRange::kClamp;
  if (name == "drop") return OutOfRange::kDrop;
  throw ParameterError("unknown out-of-range policy '" + name + "' (expected clamp or drop)");
}

Featurized featurize(std::span<const TeamSeason> seasons, OutOfRange policy) {
  const auto n = static_cast<Eigen::Index>(seasons.size());
  Featurized out;
  out.x.counts = Eigen::MatrixXd::Zero(n, WeightVector::kSize);
  out.x.row_keys.reserve(seasons.size());
  out.x.first_half_games.reserve(seasons.size());
  out.y.values.resize(n);

  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& season = seasons[static_cast<std::size_t>(r)];
    const auto split = split_half(season);
    for (const auto& g : split.first_half) {
      const int m = margin(g);
      if (policy == OutOfRange::kDrop && std::abs(m) > WeightVector::kMaxMargin) continue;
      out.x.counts(r, WeightVector::index_of(m)) += 1.0;
    }
    out.x.row_keys.push_back(season.key());
    out.x.first_half_games.push_back(static_cast<int>(split.first_half.size()));
    out.y.values[r] = split.second_half_win_fraction;
  }
  return out;
}

RidgeProblem::RidgeProblem(Eigen::MatrixXd x, Eigen::VectorXd y, double lambda)
    : x_(std::move(x)), y_(std::move(y)), lambda_(lambda) {
  check_dimensions(x_, y_);
  check_lambda(lambda_);
  gram_ = x_.transpose() * x_;
  xty_ = x_.transpose() * y_;
  yty_ = y_.squaredNorm();
}

double RidgeProblem::loss(const Eigen::VectorXd& w) const {
  return (y_ - x_ * w).squaredNorm() + lambda_ * w.squaredNorm();
}

Eigen::VectorXd RidgeProblem::gradient(const Eigen::VectorXd& w) const {
  return 2.0 * (gram_ * w - xty_ + lambda_ * w);
}

double RidgeProblem::lipschitz() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram_, Eigen::EigenvaluesOnly);
  return 2.0 * (solver.eigenvalues().maxCoeff() + lambda_);
}

double RidgeProblem::default_learning_rate() const {
  const double bound = gram_.trace() + lambda_ * static_cast<double>(gram_.cols());
  if (!(bound > 0.0)) throw DegenerateInputError("design matrix is all zeros");
  return 1.0 / (2.0 * bound);
}

WeightVector FitResult::weight_vector() const { return WeightVector(weights); }

FitResult ridge_gd_fit(const RidgeProblem& problem, const GdOptions& options,
                       std::span<const double> row_scale) {
  if (options.iterations < 1) throw ParameterError("iterations must be >= 1");
  if (options.trace_every < 1) throw ParameterError("trace interval must be >= 1");
  if (options.divergence_patience < 1) throw ParameterError("divergence patience must be >= 1");
  if (options.lambda != problem.lambda()) {
    throw ParameterError("options.lambda does not match the problem's lambda");
  }
  if (!row_scale.empty() && row_scale.size() != static_cast<std::size_t>(problem.x().rows())) {
    throw DimensionError("row scale length does not match design matrix rows");
  }
  const double eta =
      options.learning_rate ? *options.learning_rate : problem.default_learning_rate();
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw ParameterError("learning rate must be a positive finite number");
  }

  const auto& gram = problem.gram();
  const auto& xty = problem.xty();
  const double lambda = problem.lambda();
  const double yty = problem.yty();
  // Loss rises smaller than this are round-off in the Gram-form loss.
  const double increase_floor = 1e-12 * std::max(yty, std::numeric_limits<double>::min());

  FitResult fit;
  fit.lambda = lambda;
  fit.learning_rate = eta;

  Eigen::VectorXd w = Eigen::VectorXd::Zero(gram.cols());
  Eigen::VectorXd gw = Eigen::VectorXd::Zero(gram.cols());
  double prev_loss = yty;
  int rises = 0;
  int it = 0;
  while (it < options.iterations) {
    ++it;
    w -= eta * 2.0 * (gw - xty + lambda * w);
    gw.noalias() = gram * w;
    const double loss = yty - 2.0 * w.dot(xty) + w.dot(gw) + lambda * w.squaredNorm();
    if (!std::isfinite(loss) || !w.allFinite()) {
      throw NumericError("non-finite value at gradient step " + std::to_string(it));
    }
    if (loss - prev_loss > increase_floor) {
      if (++rises >= options.divergence_patience) {
        throw DivergenceError("loss increased for " + std::to_string(rises) +
                              " consecutive steps at step " + std::to_string(it) +
                              "; try a smaller learning rate than " + std::to_string(eta));
      }
    } else {
      rises = 0;
    }
    const bool converged =
        options.tolerance > 0.0 && std::abs(loss - prev_loss) <= options.tolerance * std::abs(prev_loss);
    if (it % options.trace_every == 0 || converged || it == options.iterations) {
      if (auto r = trace_correlation(problem, w, row_scale)) fit.trace.push_back({it, *r});
    }
    prev_loss = loss;
    if (converged) {
      fit.converged = true;
      break;
    }
  }

  fit.iterations = it;
  fit.final_loss = problem.loss(w);
  fit.weights.assign(w.data(), w.data() + w.size());
  return fit;
}

FitResult ridge_gd_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                       const GdOptions& options) {
  return ridge_gd_fit(RidgeProblem(x, y, options.lambda), options);
}

FitResult ridge_gd_fit(const DesignMatrix& x, const TargetVector& y, const GdOptions& options) {
  std::vector<double> scale(x.first_half_games.begin(), x.first_half_games.end());
  return ridge_gd_fit(RidgeProblem(x.counts, y.values, options.lambda), options, scale);
}

Eigen::VectorXd ridge_closed_form(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                  double lambda) {
  check_dimensions(x, y);
  check_lambda(lambda);
  if (lambda == 0.0) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    if (qr.rank() < x.cols()) {
      throw SingularSystemError("X^T X is singular (column rank " + std::to_string(qr.rank()) +
                                " < " + std::to_string(x.cols()) + ") and lambda is 0");
    }
    return qr.solve(y);
  }
  Eigen::MatrixXd system = x.transpose() * x;
  system.diagonal().array() += lambda;
  Eigen::LLT<Eigen::MatrixXd> llt(system);
  if (llt.info() != Eigen::Success) {
    throw SingularSystemError("X^T X + lambda I is not positive definite");
  }
  return llt.solve(x.transpose() * y);
}

std::vector<IndicatorValue> learned_weights_indicator(std::span<const TeamSeason> seasons,
                                                      const FitResult& fit) {
  const auto w = WeightFunction::lookup(fit.weight_vector());
  std::vector<IndicatorValue> values;
  values.reserve(seasons.size());
  for (const auto& s : seasons) values.push_back(wpd(s, w));
  return values;
}

void write_fit_json(std::ostream& out, const FitResult& fit) {
  nlohmann::json j;
  j["lambda"] = fit.lambda;
  j["learning_rate"] = fit.learning_rate;
  j["iterations"] = fit.iterations;
  j["converged"] = fit.converged;
  j["final_loss"] = fit.final_loss;
  j["weights"] = fit.weights;
  auto trace = nlohmann::json::array();
  for (const auto& p : fit.trace) trace.push_back({p.iteration, p.correlation});
  j["trace"] = std::move(trace);
  out << j.dump(2) << '\n';
}

FitResult read_fit_json(std::istream& in) {
  try {
    const auto j = nlohmann::json::parse(in);
    FitResult fit;
    fit.lambda = j.at("lambda").get<double>();
    fit.learning_rate = j.at("learning_rate").get<double>();
    fit.iterations = j.at("iterations").get<int>();
    fit.converged = j.value("converged", false);
    fit.final_loss = j.value("final_loss", 0.0);
    fit.weights = j.at("weights").get<std::vector<double>>();
    for (const auto& p : j.at("trace")) {
      fit.trace.push_back({p.at(0).get<int>(), p.at(1).get<double>()});
    }
    return fit;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("fit JSON: ") + e.what());
  }
}

}  // namespace pdrank
