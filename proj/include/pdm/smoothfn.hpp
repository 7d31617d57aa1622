#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pdm/jet.hpp"

namespace pdm {

namespace detail {
struct Node;
}

/// A closed-form scalar function of one real variable with exact derivatives.
///
/// Built from a small set of leaves (constants, x, x^s, exp(c x), ln x,
/// polynomials, Gaussian bumps, cosines) and combinators (sum, product,
/// scalar multiple, reciprocal, composition, derivative). Values are
/// immutable and cheap to copy; evaluation is pure and thread-safe.
///
/// Derivatives are carried by forward-mode Taylor arithmetic. Internally the
/// series run to order 6 so that derivative nodes (m', m'' inside an
/// effective potential, f''' inside a coordinate map correction) still hand
/// back complete third-order jets.
class SmoothFn {
public:
  /// The zero function.
  SmoothFn();

  static SmoothFn constant(double value);
  static SmoothFn identity();
  /// x^s. Non-integer s requires x > 0; negative integer s requires x != 0.
  static SmoothFn power(double exponent);
  /// exp(rate * x).
  static SmoothFn exponential(double rate);
  /// Natural logarithm, x > 0.
  static SmoothFn log();
  /// coeffs[0] + coeffs[1] x + coeffs[2] x^2 + ...
  static SmoothFn polynomial(std::vector<double> coeffs);
  /// exp(-(x - center)^2 / width^2).
  static SmoothFn gaussian(double center, double width);
  /// cos(wavenumber * x + phase).
  static SmoothFn cosine(double wavenumber, double phase = 0.0);

  friend SmoothFn operator+(const SmoothFn& a, const SmoothFn& b);
  friend SmoothFn operator-(const SmoothFn& a, const SmoothFn& b);
  friend SmoothFn operator*(const SmoothFn& a, const SmoothFn& b);
  friend SmoothFn operator*(double s, const SmoothFn& a);
  friend SmoothFn operator*(const SmoothFn& a, double s) { return s * a; }
  friend SmoothFn operator-(const SmoothFn& a) { return -1.0 * a; }

  /// 1/f, admissible only where f > 0.
  [[nodiscard]] SmoothFn recip() const;
  /// f^s as x^s composed with f.
  [[nodiscard]] SmoothFn pow(double exponent) const;
  /// d^order f / dx^order.
  [[nodiscard]] SmoothFn derivative(int order = 1) const;
  /// this(inner(x)).
  [[nodiscard]] SmoothFn compose(const SmoothFn& inner) const;

  [[nodiscard]] double operator()(double x) const;
  /// Throws DomainError outside the admissible domain.
  [[nodiscard]] Jet3 eval_jet(double x) const;

  /// True when the expression is a bare constant leaf.
  [[nodiscard]] bool is_constant() const;
  [[nodiscard]] std::string describe() const;

  /// Two handles to the same expression node compare equal.
  [[nodiscard]] bool same_node(const SmoothFn& other) const { return node_ == other.node_; }

private:
  explicit SmoothFn(std::shared_ptr<const detail::Node> node);
  std::shared_ptr<const detail::Node> node_;

  friend struct detail::Node;
  friend const detail::Node& node_of(const SmoothFn& f);
};

inline Jet3 eval_jet(const SmoothFn& fn, double x) { return fn.eval_jet(x); }

} // namespace pdm
