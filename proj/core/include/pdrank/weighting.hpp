#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>

namespace pdrank {

/// Per-margin weights for margins -40..+40 (index = margin + 40).
class WeightVector {
 public:
  static constexpr int kMaxMargin = 40;
  static constexpr int kSize = 2 * kMaxMargin + 1;

  WeightVector() { weights_.fill(0.0); }
  /// Throws DimensionError unless exactly 81 values, ParameterError on
  /// non-finite entries.
  explicit WeightVector(std::span<const double> weights);

  static constexpr int margin_of(int index) { return index - kMaxMargin; }
  /// Bin for a margin; margins beyond +/-40 land in the edge bins.
  static constexpr int index_of(int margin) {
    if (margin < -kMaxMargin) return 0;
    if (margin > kMaxMargin) return kSize - 1;
    return margin + kMaxMargin;
  }

  double operator[](int index) const { return weights_[static_cast<std::size_t>(index)]; }
  double at_margin(int margin) const { return (*this)[index_of(margin)]; }
  std::span<const double, kSize> values() const { return weights_; }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::array<double, kSize> weights_;
};

/// `margin,weight` CSV with a header and 81 rows in ascending margin order.
void write_weight_csv(std::ostream& out, const WeightVector& w);
WeightVector read_weight_csv(std::istream& in);

// Scalar weighting functions. All analytic kinds are odd in pm; the
// parameterized ones throw ParameterError for cap < 1 or D <= 0.
double w_identity(int pm);
double w_hard_cap(int pm, int cap);
double w_tanh(int pm, double d);
/// erf(pm/D), evaluated as sign(pm) * std::erf(|pm|/D). The symmetric
/// integral (1/sqrt(pi)) * int_{-x}^{x} exp(-t^2) dt is exactly erf(x);
/// the C library's erf is a piecewise rational approximation accurate to
/// about one ulp, far inside the 1e-9 target.
double w_erf(int pm, double d);
/// sign(pm) * (1 - exp(-|pm|/D)), with sign(0) = 0. Uses expm1 so that the
/// large-D limit keeps full relative precision.
double w_exp(int pm, double d);
double w_lookup(int pm, const WeightVector& table);

struct IdentityWeight {};
struct HardCapWeight {
  int cap;
};
struct TanhWeight {
  double d;
};
struct ErfWeight {
  double d;
};
struct ExpWeight {
  double d;
};
struct LookupWeight {
  WeightVector table;
};

enum class SoftCapKind { kTanh, kErf, kExp };

std::string to_string(SoftCapKind kind);
/// Accepts "tanh", "erf", "exp"; throws ParameterError otherwise.
SoftCapKind parse_soft_cap_kind(const std::string& name);

/// A margin -> weight map. Construct through the named factories, which
/// validate parameters; evaluation is then total and pure.
class WeightFunction {
 public:
  using Kind = std::variant<IdentityWeight, HardCapWeight, TanhWeight, ErfWeight, ExpWeight,
                            LookupWeight>;

  static WeightFunction identity();
  static WeightFunction hard_cap(int cap);
  static WeightFunction tanh(double d);
  static WeightFunction erf(double d);
  static WeightFunction exp(double d);
  static WeightFunction soft_cap(SoftCapKind kind, double d);
  static WeightFunction lookup(WeightVector table);

  double operator()(int pm) const;
  const Kind& kind() const { return kind_; }
  std::string describe() const;

 private:
  explicit WeightFunction(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

}  // namespace pdrank
