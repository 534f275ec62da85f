#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdrank/game_data.hpp"
#include "pdrank/indicators.hpp"
#include "pdrank/weighting.hpp"

namespace pdrank {

/// What to do with first-half games whose |margin| exceeds 40.
enum class OutOfRange { kClamp, kDrop };

std::string to_string(OutOfRange policy);
OutOfRange parse_out_of_range(const std::string& name);

/// Team-season x margin-bin histogram of first-half games. Column c counts
/// games with margin c - 40.
struct DesignMatrix {
  Eigen::MatrixXd counts;
  std::vector<TeamKey> row_keys;
  /// floor(N/2) for each row, independent of the out-of-range policy.
  std::vector<int> first_half_games;

  Eigen::Index rows() const { return counts.rows(); }
  Eigen::Index cols() const { return counts.cols(); }
};

/// Second-half win fraction per design-matrix row.
struct TargetVector {
  Eigen::VectorXd values;
};

struct Featurized {
  DesignMatrix x;
  TargetVector y;
};

Featurized featurize(std::span<const TeamSeason> seasons,
                     OutOfRange policy = OutOfRange::kClamp);

/// Ridge least squares  f(W) = ||Y - XW||^2 + lambda ||W||^2  with its Gram
/// form cached. No intercept column is added.
class RidgeProblem {
 public:
  RidgeProblem(Eigen::MatrixXd x, Eigen::VectorXd y, double lambda);

  double loss(const Eigen::VectorXd& w) const;
  /// -2 X^T (Y - XW) + 2 lambda W
  Eigen::VectorXd gradient(const Eigen::VectorXd& w) const;

  /// Lipschitz constant of the gradient: 2 * lambda_max(X^T X + lambda I).
  double lipschitz() const;
  /// 1 / (2 (trace(X^T X) + lambda p)), never above 1 / lipschitz().
  double default_learning_rate() const;

  const Eigen::MatrixXd& x() const { return x_; }
  const Eigen::VectorXd& y() const { return y_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  const Eigen::VectorXd& xty() const { return xty_; }
  double yty() const { return yty_; }
  double lambda() const { return lambda_; }

 private:
  Eigen::MatrixXd x_;
  Eigen::VectorXd y_;
  double lambda_;
  Eigen::MatrixXd gram_;
  Eigen::VectorXd xty_;
  double yty_;
};

struct GdOptions {
  double lambda = 1.0;
  std::optional<double> learning_rate;  // default: RidgeProblem::default_learning_rate()
  int iterations = 50'000;
  /// Stop once |loss change| <= tolerance * loss. Non-positive disables.
  double tolerance = 1e-12;
  int trace_every = 100;
  /// Consecutive loss increases tolerated before declaring divergence.
  int divergence_patience = 10;
};

struct TracePoint {
  int iteration = 0;
  double correlation = 0.0;
};

struct FitResult {
  std::vector<double> weights;
  std::vector<TracePoint> trace;
  double lambda = 0.0;
  double learning_rate = 0.0;
  int iterations = 0;  // gradient steps actually taken
  bool converged = false;
  double final_loss = 0.0;

  /// The weights as an 81-entry table; throws DimensionError otherwise.
  WeightVector weight_vector() const;
};

/// Full-batch gradient descent from W = 0 with
///   W <- W - eta * (-2 X^T (Y - XW) + 2 lambda W).
/// The trace holds the in-sample Pearson correlation between the per-row
/// prediction (XW)_r / row_scale_r and Y every `trace_every` steps and at the
/// final step; points where the prediction is constant are omitted. An empty
/// row_scale means 1 for every row.
/// Throws DivergenceError if the loss rises for `divergence_patience`
/// consecutive steps and NumericError on non-finite values.
FitResult ridge_gd_fit(const RidgeProblem& problem, const GdOptions& options,
                       std::span<const double> row_scale = {});
FitResult ridge_gd_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                       const GdOptions& options);
/// Fits the margin weights; the trace scales by first-half game counts so it
/// matches learned_weights_indicator.
FitResult ridge_gd_fit(const DesignMatrix& x, const TargetVector& y, const GdOptions& options);

/// Direct solve of (X^T X + lambda I) W = X^T Y. For lambda == 0 the least
/// squares problem is solved by pivoted QR on X and SingularSystemError is
/// thrown when X is column-rank deficient.
Eigen::VectorXd ridge_closed_form(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                  double lambda);

/// WPD of every season under lookup(fit.weights).
std::vector<IndicatorValue> learned_weights_indicator(std::span<const TeamSeason> seasons,
                                                      const FitResult& fit);

/// {"lambda", "learning_rate", "iterations", "weights": [...], "trace": [[iter, r], ...]}
void write_fit_json(std::ostream& out, const FitResult& fit);
FitResult read_fit_json(std::istream& in);

}  // namespace pdrank
