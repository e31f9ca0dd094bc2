#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace breather {

/// One term A*cos(w t + phase) of a trigonometric series. w == 0 is a constant.
struct TrigTerm {
  double amplitude;
  double frequency;
  double phase;
};

/// Closed-form scalar function of time.
///
/// A small immutable expression algebra: constants, harmonics
/// a + b*cos(w t + phase), sums, products, integer powers, quotients and
/// logarithmic derivatives f'/f. Every node has an exact symbolic derivative.
/// Integrals are exact whenever the expression reduces to a finite
/// trigonometric series or a (scaled) logarithmic derivative; otherwise an
/// adaptive Gauss-Kronrod quadrature is used.
///
/// Instances share their node graph and are safe to use from many threads.
class TimeFunction {
 public:
  enum class Kind { constant, harmonic, sum, product, power, quotient, log_derivative };

  /// The zero function.
  TimeFunction();

  static TimeFunction constant(double value);
  /// a + b*cos(w t + phase)
  static TimeFunction harmonic(double a, double b, double w, double phase = 0.0);
  /// f'(t)/f(t)
  static TimeFunction log_derivative(const TimeFunction& f);
  static TimeFunction power(const TimeFunction& f, int exponent);

  friend TimeFunction operator+(const TimeFunction& lhs, const TimeFunction& rhs);
  friend TimeFunction operator-(const TimeFunction& lhs, const TimeFunction& rhs);
  friend TimeFunction operator*(const TimeFunction& lhs, const TimeFunction& rhs);
  friend TimeFunction operator/(const TimeFunction& lhs, const TimeFunction& rhs);
  friend TimeFunction operator-(const TimeFunction& f);

  double operator()(double t) const;
  TimeFunction derivative() const;

  /// Definite integral from 0 to t.
  double integral(double t) const;

  /// Antiderivative with zero integration constant, e.g. ln|f| for f'/f and
  /// a t + (b/w) sin(w t + phase) for a harmonic. Pieces with no closed form
  /// fall back to the definite integral from 0.
  double antiderivative(double t) const;

  /// Exact trigonometric-series expansion when the expression admits one.
  std::optional<std::vector<TrigTerm>> trig_series() const;

  Kind kind() const;
  std::optional<double> constant_value() const;
  bool is_constant() const { return constant_value().has_value(); }
  bool is_zero() const;

  std::string to_string() const;

  struct Node;

 private:
  explicit TimeFunction(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

}  // namespace breather
