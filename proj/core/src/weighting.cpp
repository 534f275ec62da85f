#include "pdrank/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "pdrank/errors.hpp"

namespace pdrank {
namespace {

void require_positive_scale(double d, const char* fn) {
  if (!(d > 0.0) || !std::isfinite(d)) {
    std::ostringstream msg;
    msg << fn << ": scale D must be a positive finite number, got " << d;
    throw ParameterError(msg.str());
  }
}

void require_cap(int cap) {
  if (cap < 1) {
    throw ParameterError("hard cap must be >= 1, got " + std::to_string(cap));
  }
}

// Odd extension of a function defined on |pm|; exact antisymmetry by construction.
template <typename F>
double odd(int pm, F&& on_magnitude) {
  if (pm == 0) return 0.0;
  const double v = on_magnitude(std::abs(static_cast<double>(pm)));
  return pm > 0 ? v : -v;
}

double tanh_unchecked(int pm, double d) {
  return odd(pm, [d](double a) { return std::tanh(a / d); });
}
double erf_unchecked(int pm, double d) {
  return odd(pm, [d](double a) { return std::erf(a / d); });
}
double exp_unchecked(int pm, double d) {
  return odd(pm, [d](double a) { return -std::expm1(-a / d); });
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

WeightVector::WeightVector(std::span<const double> weights) {
  if (weights.size() != static_cast<std::size_t>(kSize)) {
    throw DimensionError("weight vector needs " + std::to_string(kSize) + " entries, got " +
                         std::to_string(weights.size()));
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i])) {
      throw ParameterError("weight for margin " +
                           std::to_string(margin_of(static_cast<int>(i))) + " is not finite");
    }
    weights_[i] = weights[i];
  }
}

void write_weight_csv(std::ostream& out, const WeightVector& w) {
  out << "margin,weight\n";
  char buf[40];
  for (int i = 0; i < WeightVector::kSize; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", w[i]);
    out << WeightVector::margin_of(i) << ',' << buf << '\n';
  }
}

WeightVector read_weight_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> values;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "margin,weight") throw ParseError(line_no, "expected header 'margin,weight'");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(line_no, "expected 'margin,weight'");
    int margin_value = 0;
    double weight = 0.0;
    try {
      std::size_t used = 0;
      margin_value = std::stoi(line.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("margin");
      const auto rest = line.substr(comma + 1);
      weight = std::stod(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("weight");
    } catch (const std::logic_error&) {
      throw ParseError(line_no, "malformed row '" + line + "'");
    }
    const int expected = WeightVector::margin_of(static_cast<int>(values.size()));
    if (margin_value != expected) {
      throw ParseError(line_no, "expected margin " + std::to_string(expected) + ", found " +
                                    std::to_string(margin_value));
    }
    values.push_back(weight);
  }
  return WeightVector(values);
}

double w_identity(int pm) { return static_cast<double>(pm); }

double w_hard_cap(int pm, int cap) {
  require_cap(cap);
  return static_cast<double>(std::clamp(pm, -cap, cap));
}

double w_tanh(int pm, double d) {
  require_positive_scale(d, "tanh");
  return tanh_unchecked(pm, d);
}

double w_erf(int pm, double d) {
  require_positive_scale(d, "erf");
  return erf_unchecked(pm, d);
}

double w_exp(int pm, double d) {
  require_positive_scale(d, "exp");
  return exp_unchecked(pm, d);
}

double w_lookup(int pm, const WeightVector& table) { return table.at_margin(pm); }

std::string to_string(SoftCapKind kind) {
  switch (kind) {
    case SoftCapKind::kTanh: return "tanh";
    case SoftCapKind::kErf: return "erf";
    case SoftCapKind::kExp: return "exp";
  }
  return "?";
}

SoftCapKind parse_soft_cap_kind(const std::string& name) {
  if (name == "tanh") return SoftCapKind::kTanh;
  if (name == "erf") return SoftCapKind::kErf;
  if (name == "exp") return SoftCapKind::kExp;
  throw ParameterError("unknown soft-cap function '" + name + "' (expected tanh, erf or exp)");
}

WeightFunction WeightFunction::identity() { return WeightFunction(IdentityWeight{}); }

WeightFunction WeightFunction::hard_cap(int cap) {
  require_cap(cap);
  return WeightFunction(HardCapWeight{cap});
}

WeightFunction WeightFunction::tanh(double d) {
  require_positive_scale(d, "tanh");
  return WeightFunction(TanhWeight{d});
}

WeightFunction WeightFunction::erf(double d) {
  require_positive_scale(d, "erf");
  return WeightFunction(ErfWeight{d});
}

WeightFunction WeightFunction::exp(double d) {
  require_positive_scale(d, "exp");
  return WeightFunction(ExpWeight{d});
}

WeightFunction WeightFunction::soft_cap(SoftCapKind kind, double d) {
  switch (kind) {
    case SoftCapKind::kTanh: return tanh(d);
    case SoftCapKind::kErf: return erf(d);
    case SoftCapKind::kExp: return exp(d);
  }
  throw ParameterError("unknown soft-cap kind");
}

WeightFunction WeightFunction::lookup(WeightVector table) {
  return WeightFunction(LookupWeight{std::move(table)});
}

double WeightFunction::operator()(int pm) const {
  struct Visitor {
    int pm;
    double operator()(const IdentityWeight&) const { return w_identity(pm); }
    double operator()(const HardCapWeight& w) const {
      return static_cast<double>(std::clamp(pm, -w.cap, w.cap));
    }
    double operator()(const TanhWeight& w) const { return tanh_unchecked(pm, w.d); }
    double operator()(const ErfWeight& w) const { return erf_unchecked(pm, w.d); }
    double operator()(const ExpWeight& w) const { return exp_unchecked(pm, w.d); }
    double operator()(const LookupWeight& w) const { return w.table.at_margin(pm); }
  };
  return std::visit(Visitor{pm}, kind_);
}

std::string WeightFunction::describe() const {
  struct Visitor {
    std::string operator()(const IdentityWeight&) const { return "identity"; }
    std::string operator()(const HardCapWeight& w) const {
      return "hard_cap(" + std::to_string(w.cap) + ")";
    }
    std::string operator()(const TanhWeight& w) const { return "tanh(" + format_real(w.d) + ")"; }
    std::string operator()(const ErfWeight& w) const { return "erf(" + format_real(w.d) + ")"; }
    std::string operator()(const ExpWeight& w) const { return "exp(" + format_real(w.d) + ")"; }
    std::string operator()(const LookupWeight&) const { return "lookup"; }
  };
  return std::visit(Visitor{}, kind_);
}

}  // namespace pdrank
