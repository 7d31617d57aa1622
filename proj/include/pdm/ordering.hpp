#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "pdm/smoothfn.hpp"

namespace pdm {

/// Ambiguity parameters of the four-term kinetic operator
///
///   H = 1/(4(a+1)) { a [m^-1 p^2 + p^2 m^-1] + m^alpha p m^beta p m^gamma
///                    + m^gamma p m^beta p m^alpha }
///
/// with beta = -1 - alpha - gamma always derived, never stored.
class OrderingParams {
public:
  /// Throws SingularNormalization when a == -1.
  OrderingParams(double a, double alpha, double gamma);

  [[nodiscard]] double a() const { return a_; }
  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] double gamma() const { return gamma_; }
  [[nodiscard]] double beta() const { return -1.0 - alpha_ - gamma_; }

  /// alpha + gamma - a, the coefficient of m m'' in the ambiguity potential.
  [[nodiscard]] double curvature_coefficient() const { return alpha_ + gamma_ - a_; }
  /// a - alpha gamma - alpha - gamma, half the coefficient of (m')^2.
  [[nodiscard]] double slope_coefficient() const { return a_ - alpha_ * gamma_ - alpha_ - gamma_; }

  friend bool operator==(const OrderingParams&, const OrderingParams&) = default;

private:
  double a_;
  double alpha_;
  double gamma_;
};

inline OrderingParams make_ordering(double a, double alpha, double gamma) {
  return {a, alpha, gamma};
}

enum class OrderingName { weyl, li_kuhn, zhu_kroemer, gora_williams, bendaniel_duke };

struct NamedOrdering {
  OrderingName name;
  OrderingParams params;
};

inline constexpr std::array<OrderingName, 5> kCatalog = {
    OrderingName::weyl, OrderingName::li_kuhn, OrderingName::zhu_kroemer,
    OrderingName::gora_williams, OrderingName::bendaniel_duke};

std::string_view to_string(OrderingName name);
std::optional<OrderingName> parse_ordering_name(std::string_view name);
/// Comma-separated list of catalog names, for diagnostics.
std::string catalog_names();
OrderingParams catalog(OrderingName name);

/// Both constraints alpha + gamma - a = 0 and a - alpha gamma - alpha - gamma = 0
/// hold to 1e-12 absolute.
bool is_ambiguity_free(const OrderingParams& ord);

/// U = -hbar^2 / (4 m^3 (a+1)) [ (alpha+gamma-a) m m'' + 2 (a - alpha gamma - alpha - gamma) m'^2 ]
SmoothFn ambiguity_potential(const OrderingParams& ord, const SmoothFn& mass, double hbar);

/// U_eff = V + U + hbar^2/(4m) [ 3/2 (m'/m)^2 - m''/m ], the potential seen by
/// phi = psi / sqrt(m).
SmoothFn effective_potential(const OrderingParams& ord, const SmoothFn& mass,
                             const SmoothFn& potential, double hbar);

/// m(x) U(x) for the exponential mass m0 exp(c x) equals -hbar^2 q with
/// q = c^2 / (4(a+1)) (a - 2 alpha gamma - alpha - gamma).
double q_coefficient(const OrderingParams& ord, double c);

/// Coefficient added to A in the 1/x^2 term for the quadratic mass c x^2:
/// g = hbar^2 / (2(a+1)) [4 alpha gamma + 3(alpha + gamma) - a + 2].
double g_coefficient(const OrderingParams& ord, double hbar);

} // namespace pdm
