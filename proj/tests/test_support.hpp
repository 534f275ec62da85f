#pragma once

// Test-only oracles and fixtures. Nothing here calls into the code under test
// except the plain data types used to build fixtures.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pdrank/game_data.hpp"

namespace pdrank::testing {

// Adaptive 7/15-point Gauss-Kronrod quadrature.
inline double gauss_kronrod(const std::function<double(double)>& f, double a, double b, double tol,
                            int depth = 0) {
  static constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                   0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = wgk[7] * f(center);
  double gauss = wg[3] * f(center);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * xgk[i];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += wgk[i] * sum;
    if (i % 2 == 1) gauss += wg[i / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  if (std::abs(kronrod - gauss) <= tol || depth > 40) return kronrod;
  return gauss_kronrod(f, a, center, tol / 2, depth + 1) +
         gauss_kronrod(f, center, b, tol / 2, depth + 1);
}

/// (1/sqrt(pi)) * integral of exp(-t^2) over [-x, x], taken literally.
inline double erf_by_quadrature(double x) {
  const double lo = std::min(-x, x);
  const double hi = std::max(-x, x);
  const double integral =
      gauss_kronrod([](double t) { return std::exp(-t * t); }, lo, hi, 1e-14);
  const double value = integral / std::sqrt(std::acos(-1.0));
  return x < 0 ? -value : value;
}

/// Builds a team-season whose games have exactly the given margins.
inline TeamSeason season_from_margins(int year, const std::string& team,
                                      const std::vector<int>& margins) {
  TeamSeason s{year, team, {}};
  int index = 1;
  for (const int m : margins) {
    const int pf = 100 + (m > 0 ? m : 0);
    const int pa = 100 + (m < 0 ? -m : 0);
    s.games.push_back({year, team, index++, pf, pa});
  }
  return s;
}

/// Random team-seasons with margins drawn from a skewed per-team distribution.
/// Independent of the library's synthetic generator.
inline std::vector<TeamSeason> random_seasons(int count, int n_games, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> strength(0.0, 5.0);
  std::normal_distribution<double> noise(0.0, 13.0);
  std::vector<TeamSeason> out;
  for (int t = 0; t < count; ++t) {
    const double s = strength(rng);
    std::vector<int> margins;
    for (int g = 0; g < n_games; ++g) {
      int m = 0;
      while (m == 0) m = static_cast<int>(std::lround(s + noise(rng)));
      margins.push_back(m);
    }
    out.push_back(season_from_margins(2000 + t / 30, "T" + std::to_string(t % 30), margins));
  }
  return out;
}

struct RidgeInstance {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  double lambda;
};

inline RidgeInstance random_ridge_instance(std::uint64_t seed, int rows, int cols, double lambda) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RidgeInstance inst{Eigen::MatrixXd(rows, cols), Eigen::VectorXd(rows), lambda};
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) inst.x(r, c) = u(rng);
    inst.y[r] = u(rng);
  }
  return inst;
}

}  // namespace pdrank::testing
