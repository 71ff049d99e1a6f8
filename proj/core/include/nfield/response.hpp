#pragma once

// Firing-rate nonlinearities f with f(0) = 0 and f'(0) = 1 = max f'.

#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace nfield {

enum class ResponseVariant { Linear, Tanh, ErfSigmoid, Rational, CappedLinear, Custom };

class ResponseKind {
 public:
  using Fn = std::function<double(double)>;

  static ResponseKind linear();
  static ResponseKind tanh();
  /// erf(sqrt(pi) s / 2), so that f'(0) = 1.
  static ResponseKind erf_sigmoid();
  /// s / (1 + |s|)
  static ResponseKind rational();
  /// min(max(s, -1), 1); for delta > 0 the corners at |s| = 1 are replaced by a
  /// C^2 blend on [1 - delta, 1 + delta].
  static ResponseKind capped_linear(double delta = 0.0);
  /// User-supplied f with its first and second derivatives. Assumed bounded
  /// and nondecreasing; oddness is not required.
  static ResponseKind custom(std::string name, Fn f, Fn f_prime, Fn f_second);

  /// Parses "linear", "tanh", "erf", "rational", "capped-linear" or
  /// "capped-linear:<delta>".
  static ResponseKind parse(std::string_view text);

  ResponseVariant variant() const noexcept { return variant_; }
  double delta() const noexcept { return delta_; }
  std::string name() const;
  bool bounded() const noexcept { return variant_ != ResponseVariant::Linear; }
  bool odd() const noexcept { return variant_ != ResponseVariant::Custom; }

  double f(double s) const;
  double f_prime(double s) const;
  double f_second(double s) const;

 private:
  struct Custom {
    std::string name;
    Fn f, f_prime, f_second;
  };

  explicit ResponseKind(ResponseVariant v, double delta = 0.0) : variant_(v), delta_(delta) {}

  ResponseVariant variant_;
  double delta_ = 0.0;
  std::shared_ptr<const Custom> custom_;
};

}  // namespace nfield
