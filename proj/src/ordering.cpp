#include "pdm/ordering.hpp"

#include <cmath>

#include "pdm/errors.hpp"

namespace pdm {

namespace {
constexpr double kConstraintTol = 1e-12;
}

OrderingParams::OrderingParams(double a, double alpha, double gamma)
    : a_(a), alpha_(alpha), gamma_(gamma) {
  if (!std::isfinite(a) || !std::isfinite(alpha) || !std::isfinite(gamma))
    throw InvalidParam("ordering parameters must be finite");
  if (std::abs(a + 1.0) < 1e-12) throw SingularNormalization("a = -1 makes 1/(4(a+1)) singular");
}

std::string_view to_string(OrderingName name) {
  switch (name) {
  case OrderingName::weyl: return "weyl";
  case OrderingName::li_kuhn: return "li-kuhn";
  case OrderingName::zhu_kroemer: return "zhu-kroemer";
  case OrderingName::gora_williams: return "gora-williams";
  case OrderingName::bendaniel_duke: return "bendaniel-duke";
  }
  return "?";
}

std::optional<OrderingName> parse_ordering_name(std::string_view name) {
  for (auto n : kCatalog)
    if (to_string(n) == name) return n;
  return std::nullopt;
}

std::string catalog_names() {
  std::string out;
  for (auto n : kCatalog) {
    if (!out.empty()) out += ", ";
    out += to_string(n);
  }
  return out;
}

OrderingParams catalog(OrderingName name) {
  switch (name) {
  case OrderingName::weyl: return {1.0, 0.0, 0.0};
  case OrderingName::li_kuhn: return {0.0, 0.0, -0.5};
  case OrderingName::zhu_kroemer: return {0.0, -0.5, -0.5};
  case OrderingName::gora_williams: return {0.0, -1.0, 0.0};
  case OrderingName::bendaniel_duke: return {0.0, 0.0, 0.0};
  }
  throw InvalidParam("unknown ordering");
}

bool is_ambiguity_free(const OrderingParams& ord) {
  return std::abs(ord.curvature_coefficient()) <= kConstraintTol &&
         std::abs(ord.slope_coefficient()) <= kConstraintTol;
}

SmoothFn ambiguity_potential(const OrderingParams& ord, const SmoothFn& mass, double hbar) {
  if (mass.is_constant()) return SmoothFn::constant(0.0);
  const SmoothFn inv = mass.recip();
  const SmoothFn d1 = mass.derivative(1);
  const SmoothFn d2 = mass.derivative(2);
  const SmoothFn bracket = ord.curvature_coefficient() * (d2 * inv * inv) +
                           (2.0 * ord.slope_coefficient()) * (d1 * d1 * inv * inv * inv);
  return (-hbar * hbar / (4.0 * (ord.a() + 1.0))) * bracket;
}

SmoothFn effective_potential(const OrderingParams& ord, const SmoothFn& mass,
                             const SmoothFn& potential, double hbar) {
  if (mass.is_constant()) return potential;
  const SmoothFn inv = mass.recip();
  const SmoothFn d1 = mass.derivative(1);
  const SmoothFn d2 = mass.derivative(2);
  const SmoothFn kinetic = (hbar * hbar / 4.0) *
                           (1.5 * (d1 * d1 * inv * inv * inv) - d2 * inv * inv);
  return potential + ambiguity_potential(ord, mass, hbar) + kinetic;
}

double q_coefficient(const OrderingParams& ord, double c) {
  return c * c / (4.0 * (ord.a() + 1.0)) *
         (ord.a() - 2.0 * ord.alpha() * ord.gamma() - ord.alpha() - ord.gamma());
}

double g_coefficient(const OrderingParams& ord, double hbar) {
  return hbar * hbar / (2.0 * (ord.a() + 1.0)) *
         (4.0 * ord.alpha() * ord.gamma() + 3.0 * (ord.alpha() + ord.gamma()) - ord.a() + 2.0);
}

} // namespace pdm
