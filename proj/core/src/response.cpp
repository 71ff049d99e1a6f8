#include "nfield/response.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nfield/error.hpp"

namespace nfield {

using std::numbers::pi;

namespace {

double sgn(double s) { return s > 0 ? 1.0 : (s < 0 ? -1.0 : 0.0); }

// Capped-linear on s >= 0. On the blend interval f' = 1 - S(t) with the
// smoothstep S(t) = 3t^2 - 2t^3, t = (s - (1 - delta)) / (2 delta).
double capped_pos(double s, double delta, int order) {
  if (s <= 1.0 - delta) return order == 0 ? s : (order == 1 ? 1.0 : 0.0);
  if (s >= 1.0 + delta) return order == 0 ? 1.0 : 0.0;
  const double t = (s - (1.0 - delta)) / (2.0 * delta);
  switch (order) {
    case 0: return (1.0 - delta) + 2.0 * delta * (t - t * t * t + 0.5 * t * t * t * t);
    case 1: return 1.0 - (3.0 * t * t - 2.0 * t * t * t);
    default: return -(6.0 * t - 6.0 * t * t) / (2.0 * delta);
  }
}

}  // namespace

ResponseKind ResponseKind::linear() { return ResponseKind(ResponseVariant::Linear); }
ResponseKind ResponseKind::tanh() { return ResponseKind(ResponseVariant::Tanh); }
ResponseKind ResponseKind::erf_sigmoid() { return ResponseKind(ResponseVariant::ErfSigmoid); }
ResponseKind ResponseKind::rational() { return ResponseKind(ResponseVariant::Rational); }

ResponseKind ResponseKind::capped_linear(double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw InvalidArgument("capped_linear: delta must lie in [0, 1)");
  }
  return ResponseKind(ResponseVariant::CappedLinear, delta);
}

ResponseKind ResponseKind::custom(std::string name, Fn f, Fn f_prime, Fn f_second) {
  if (!f || !f_prime || !f_second) {
    throw InvalidArgument("custom response: all three functions are required");
  }
  ResponseKind k(ResponseVariant::Custom);
  k.custom_ = std::make_shared<const Custom>(
      Custom{std::move(name), std::move(f), std::move(f_prime), std::move(f_second)});
  return k;
}

ResponseKind ResponseKind::parse(std::string_view text) {
  if (text == "linear") return linear();
  if (text == "tanh") return tanh();
  if (text == "erf" || text == "erf-sigmoid") return erf_sigmoid();
  if (text == "rational") return rational();
  if (text == "capped-linear") return capped_linear(0.0);
  constexpr std::string_view prefix = "capped-linear:";
  if (text.starts_with(prefix)) {
    const std::string rest(text.substr(prefix.size()));
    std::size_t used = 0;
    double delta = 0.0;
    try {
      delta = std::stod(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != rest.size()) {
      throw InvalidArgument("response: bad delta in '" + std::string(text) + "'");
    }
    return capped_linear(delta);
  }
  throw InvalidArgument("response: unknown kind '" + std::string(text) + "'");
}

std::string ResponseKind::name() const {
  switch (variant_) {
    case ResponseVariant::Linear: return "linear";
    case ResponseVariant::Tanh: return "tanh";
    case ResponseVariant::ErfSigmoid: return "erf";
    case ResponseVariant::Rational: return "rational";
    case ResponseVariant::CappedLinear:
      return delta_ == 0.0 ? "capped-linear" : "capped-linear:" + std::to_string(delta_);
    case ResponseVariant::Custom: return custom_->name;
  }
  return "?";
}

double ResponseKind::f(double s) const {
  switch (variant_) {
    case ResponseVariant::Linear: return s;
    case ResponseVariant::Tanh: return std::tanh(s);
    case ResponseVariant::ErfSigmoid: return std::erf(std::sqrt(pi) * s / 2.0);
    case ResponseVariant::Rational: return s / (1.0 + std::abs(s));
    case ResponseVariant::CappedLinear: return sgn(s) * capped_pos(std::abs(s), delta_, 0);
    case ResponseVariant::Custom: return custom_->f(s);
  }
  return s;
}

double ResponseKind::f_prime(double s) const {
  switch (variant_) {
    case ResponseVariant::Linear: return 1.0;
    case ResponseVariant::Tanh: {
      const double c = std::cosh(s);
      return std::isfinite(c) ? 1.0 / (c * c) : 0.0;
    }
    case ResponseVariant::ErfSigmoid: return std::exp(-pi * s * s / 4.0);
    case ResponseVariant::Rational: {
      const double d = 1.0 + std::abs(s);
      return 1.0 / (d * d);
    }
    case ResponseVariant::CappedLinear: return capped_pos(std::abs(s), delta_, 1);
    case ResponseVariant::Custom: return custom_->f_prime(s);
  }
  return 1.0;
}

double ResponseKind::f_second(double s) const {
  switch (variant_) {
    case ResponseVariant::Linear: return 0.0;
    case ResponseVariant::Tanh: {
      const double c = std::cosh(s);
      return std::isfinite(c) ? -2.0 * std::tanh(s) / (c * c) : 0.0;
    }
    case ResponseVariant::ErfSigmoid: return -(pi * s / 2.0) * std::exp(-pi * s * s / 4.0);
    case ResponseVariant::Rational: {
      const double d = 1.0 + std::abs(s);
      return -2.0 * sgn(s) / (d * d * d);
    }
    case ResponseVariant::CappedLinear:
      if (delta_ == 0.0) return 0.0;
      return sgn(s) * capped_pos(std::abs(s), delta_, 2);
    case ResponseVariant::Custom: return custom_->f_second(s);
  }
  return 0.0;
}

}  // namespace nfield
