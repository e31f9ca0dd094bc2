#include "breather/time_function.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "breather/errors.hpp"

namespace breather {

struct TimeFunction::Node {
  Kind kind = Kind::constant;
  // constant: a. harmonic: a + b cos(w t + phase).
  double a = 0.0;
  double b = 0.0;
  double w = 0.0;
  double phase = 0.0;
  int exponent = 1;
  std::vector<TimeFunction> children;
};

namespace {

constexpr double kQuadratureTolerance = 1e-10;

using Series = std::vector<TrigTerm>;

void append_term(Series& out, TrigTerm term) {
  if (term.frequency == 0.0) {
    double value = term.amplitude * std::cos(term.phase);
    for (auto& existing : out) {
      if (existing.frequency == 0.0) {
        existing.amplitude += value;
        return;
      }
    }
    out.push_back({value, 0.0, 0.0});
    return;
  }
  if (term.frequency < 0.0) {
    term.frequency = -term.frequency;
    term.phase = -term.phase;
  }
  for (auto& existing : out) {
    if (existing.frequency == term.frequency && existing.phase == term.phase) {
      existing.amplitude += term.amplitude;
      return;
    }
  }
  out.push_back(term);
}

Series multiply(const Series& lhs, const Series& rhs) {
  Series out;
  for (const auto& p : lhs) {
    for (const auto& q : rhs) {
      double half = 0.5 * p.amplitude * q.amplitude;
      append_term(out, {half, p.frequency + q.frequency, p.phase + q.phase});
      append_term(out, {half, p.frequency - q.frequency, p.phase - q.phase});
    }
  }
  return out;
}

double series_integral(const Series& series, double t) {
  double total = 0.0;
  for (const auto& term : series) {
    if (term.frequency == 0.0) {
      total += term.amplitude * std::cos(term.phase) * t;
    } else {
      total += term.amplitude / term.frequency *
               (std::sin(term.frequency * t + term.phase) - std::sin(term.phase));
    }
  }
  return total;
}

double series_antiderivative(const Series& series, double t) {
  double total = 0.0;
  for (const auto& term : series) {
    if (term.frequency == 0.0) {
      total += term.amplitude * std::cos(term.phase) * t;
    } else {
      total += term.amplitude / term.frequency * std::sin(term.frequency * t + term.phase);
    }
  }
  return total;
}

}  // namespace

TimeFunction::TimeFunction() : TimeFunction(constant(0.0)) {}

TimeFunction::TimeFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

TimeFunction TimeFunction::constant(double value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::constant;
  node->a = value;
  return TimeFunction(std::move(node));
}

TimeFunction TimeFunction::harmonic(double a, double b, double w, double phase) {
  if (b == 0.0 || w == 0.0) return constant(a + b * std::cos(phase));
  auto node = std::make_shared<Node>();
  node->kind = Kind::harmonic;
  node->a = a;
  node->b = b;
  node->w = w;
  node->phase = phase;
  return TimeFunction(std::move(node));
}

TimeFunction TimeFunction::log_derivative(const TimeFunction& f) {
  if (auto value = f.constant_value()) {
    if (*value == 0.0) throw std::domain_error("log-derivative of the zero function");
    return constant(0.0);
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::log_derivative;
  node->children = {f, f.derivative()};
  return TimeFunction(std::move(node));
}

TimeFunction TimeFunction::power(const TimeFunction& f, int exponent) {
  if (exponent == 0) return constant(1.0);
  if (exponent == 1) return f;
  if (auto value = f.constant_value()) return constant(std::pow(*value, exponent));
  auto node = std::make_shared<Node>();
  node->kind = Kind::power;
  node->exponent = exponent;
  node->children = {f};
  return TimeFunction(std::move(node));
}

TimeFunction operator+(const TimeFunction& lhs, const TimeFunction& rhs) {
  auto lc = lhs.constant_value();
  auto rc = rhs.constant_value();
  if (lc && rc) return TimeFunction::constant(*lc + *rc);
  if (lc && *lc == 0.0) return rhs;
  if (rc && *rc == 0.0) return lhs;
  if (lc && rhs.kind() == TimeFunction::Kind::harmonic) {
    const auto& n = *rhs.node_;
    return TimeFunction::harmonic(n.a + *lc, n.b, n.w, n.phase);
  }
  if (rc && lhs.kind() == TimeFunction::Kind::harmonic) {
    const auto& n = *lhs.node_;
    return TimeFunction::harmonic(n.a + *rc, n.b, n.w, n.phase);
  }
  auto node = std::make_shared<TimeFunction::Node>();
  node->kind = TimeFunction::Kind::sum;
  node->children = {lhs, rhs};
  return TimeFunction(std::move(node));
}

TimeFunction operator-(const TimeFunction& f) { return TimeFunction::constant(-1.0) * f; }

TimeFunction operator-(const TimeFunction& lhs, const TimeFunction& rhs) { return lhs + (-rhs); }

TimeFunction operator*(const TimeFunction& lhs, const TimeFunction& rhs) {
  auto lc = lhs.constant_value();
  auto rc = rhs.constant_value();
  if (lc && rc) return TimeFunction::constant(*lc * *rc);
  if ((lc && *lc == 0.0) || (rc && *rc == 0.0)) return TimeFunction::constant(0.0);
  if (lc && *lc == 1.0) return rhs;
  if (rc && *rc == 1.0) return lhs;
  if (lc && rhs.kind() == TimeFunction::Kind::harmonic) {
    const auto& n = *rhs.node_;
    return TimeFunction::harmonic(*lc * n.a, *lc * n.b, n.w, n.phase);
  }
  if (rc && lhs.kind() == TimeFunction::Kind::harmonic) {
    const auto& n = *lhs.node_;
    return TimeFunction::harmonic(*rc * n.a, *rc * n.b, n.w, n.phase);
  }
  auto node = std::make_shared<TimeFunction::Node>();
  node->kind = TimeFunction::Kind::product;
  // Constant factor first keeps scaled integrals on the closed-form path.
  if (rc) {
    node->children = {rhs, lhs};
  } else {
    node->children = {lhs, rhs};
  }
  return TimeFunction(std::move(node));
}

TimeFunction operator/(const TimeFunction& lhs, const TimeFunction& rhs) {
  if (auto rc = rhs.constant_value()) {
    if (*rc == 0.0) throw std::domain_error("division by the zero function");
    return TimeFunction::constant(1.0 / *rc) * lhs;
  }
  if (lhs.is_zero()) return TimeFunction::constant(0.0);
  auto node = std::make_shared<TimeFunction::Node>();
  node->kind = TimeFunction::Kind::quotient;
  node->children = {lhs, rhs};
  return TimeFunction(std::move(node));
}

double TimeFunction::operator()(double t) const {
  const auto& n = *node_;
  switch (n.kind) {
    case Kind::constant:
      return n.a;
    case Kind::harmonic:
      return n.a + n.b * std::cos(n.w * t + n.phase);
    case Kind::sum:
      return n.children[0](t) + n.children[1](t);
    case Kind::product:
      return n.children[0](t) * n.children[1](t);
    case Kind::power:
      return std::pow(n.children[0](t), n.exponent);
    case Kind::quotient:
      return n.children[0](t) / n.children[1](t);
    case Kind::log_derivative:
      return n.children[1](t) / n.children[0](t);
  }
  return 0.0;
}

TimeFunction TimeFunction::derivative() const {
  const auto& n = *node_;
  switch (n.kind) {
    case Kind::constant:
      return constant(0.0);
    case Kind::harmonic:
      // -b w sin(wt + phase) == b w cos(wt + phase + pi/2)
      return harmonic(0.0, n.b * n.w, n.w, n.phase + std::numbers::pi / 2.0);
    case Kind::sum:
      return n.children[0].derivative() + n.children[1].derivative();
    case Kind::product: {
      const auto& f = n.children[0];
      const auto& g = n.children[1];
      return f.derivative() * g + f * g.derivative();
    }
    case Kind::power: {
      const auto& f = n.children[0];
      return constant(n.exponent) * power(f, n.exponent - 1) * f.derivative();
    }
    case Kind::quotient: {
      const auto& f = n.children[0];
      const auto& g = n.children[1];
      return (f.derivative() * g - f * g.derivative()) / power(g, 2);
    }
    case Kind::log_derivative: {
      return n.children[1].derivative() / n.children[0] - power(*this, 2);
    }
  }
  return constant(0.0);
}

std::optional<std::vector<TrigTerm>> TimeFunction::trig_series() const {
  const auto& n = *node_;
  switch (n.kind) {
    case Kind::constant:
      return Series{{n.a, 0.0, 0.0}};
    case Kind::harmonic: {
      Series out;
      append_term(out, {n.a, 0.0, 0.0});
      append_term(out, {n.b, n.w, n.phase});
      return out;
    }
    case Kind::sum: {
      auto lhs = n.children[0].trig_series();
      auto rhs = n.children[1].trig_series();
      if (!lhs || !rhs) return std::nullopt;
      for (const auto& term : *rhs) append_term(*lhs, term);
      return lhs;
    }
    case Kind::product: {
      auto lhs = n.children[0].trig_series();
      auto rhs = n.children[1].trig_series();
      if (!lhs || !rhs) return std::nullopt;
      return multiply(*lhs, *rhs);
    }
    case Kind::power: {
      if (n.exponent < 0) return std::nullopt;
      auto base = n.children[0].trig_series();
      if (!base) return std::nullopt;
      Series out{{1.0, 0.0, 0.0}};
      for (int i = 0; i < n.exponent; ++i) out = multiply(out, *base);
      return out;
    }
    case Kind::quotient:
    case Kind::log_derivative:
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

double quadrature(const TimeFunction& f, double t) {
  if (t == 0.0) return 0.0;
  double lo = std::min(0.0, t);
  double hi = std::max(0.0, t);
  double error = 0.0;
  double value = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(
      [&f](double s) { return f(s); }, lo, hi, 20, 1e-14, &error);
  if (!std::isfinite(value) || error > kQuadratureTolerance) {
    std::ostringstream msg;
    msg << "quadrature of " << f.to_string() << " on [0, " << t
        << "] missed tolerance (error estimate " << error << ")";
    throw QuadratureFailure(msg.str());
  }
  return t < 0.0 ? -value : value;
}

}  // namespace

double TimeFunction::integral(double t) const {
  const auto& n = *node_;
  if (auto series = trig_series()) return series_integral(*series, t);
  switch (n.kind) {
    case Kind::sum:
      return n.children[0].integral(t) + n.children[1].integral(t);
    case Kind::product:
      if (auto k = n.children[0].constant_value()) return *k * n.children[1].integral(t);
      break;
    case Kind::log_derivative: {
      const auto& f = n.children[0];
      return std::log(std::abs(f(t) / f(0.0)));
    }
    default:
      break;
  }
  return quadrature(*this, t);
}

double TimeFunction::antiderivative(double t) const {
  const auto& n = *node_;
  if (auto series = trig_series()) return series_antiderivative(*series, t);
  switch (n.kind) {
    case Kind::sum:
      return n.children[0].antiderivative(t) + n.children[1].antiderivative(t);
    case Kind::product:
      if (auto k = n.children[0].constant_value()) return *k * n.children[1].antiderivative(t);
      break;
    case Kind::log_derivative:
      return std::log(std::abs(n.children[0](t)));
    default:
      break;
  }
  return quadrature(*this, t);
}

TimeFunction::Kind TimeFunction::kind() const { return node_->kind; }

std::optional<double> TimeFunction::constant_value() const {
  if (node_->kind == Kind::constant) return node_->a;
  return std::nullopt;
}

bool TimeFunction::is_zero() const {
  auto value = constant_value();
  return value && *value == 0.0;
}

std::string TimeFunction::to_string() const {
  const auto& n = *node_;
  std::ostringstream out;
  out.precision(17);
  switch (n.kind) {
    case Kind::constant:
      out << n.a;
      break;
    case Kind::harmonic:
      out << "(" << n.a << " + " << n.b << "*cos(" << n.w << "*t + " << n.phase << "))";
      break;
    case Kind::sum:
      out << "(" << n.children[0].to_string() << " + " << n.children[1].to_string() << ")";
      break;
    case Kind::product:
      out << n.children[0].to_string() << "*" << n.children[1].to_string();
      break;
    case Kind::power:
      out << n.children[0].to_string() << "^" << n.exponent;
      break;
    case Kind::quotient:
      out << n.children[0].to_string() << "/" << n.children[1].to_string();
      break;
    case Kind::log_derivative:
      out << "dlog(" << n.children[0].to_string() << ")";
      break;
  }
  return out.str();
}

}  // namespace breather
