#pragma once

#include <optional>

#include "pdm/numeric.hpp"
#include "pdm/ordering.hpp"
#include "pdm/profiles.hpp"

namespace pdm {

/// m = m0 exp(c x), V = V0 exp(c x).
struct Example1 {
  double m0 = 1.0;
  double c = 1.0;
  double V0 = 1.0;
  friend bool operator==(const Example1&, const Example1&) = default;
};

/// m = cmass x^2, V = A/(cmass x^4) + B/(cmass x^2), x > 0.
struct Example2 {
  double cmass = 1.0;
  double A = 1.0 / 32.0;
  double B = -5.0;
  friend bool operator==(const Example2&, const Example2&) = default;
};

/// Mass, external potential, ordering and domain of one eigenvalue problem.
struct SpectralProblem {
  SmoothFn mass;
  SmoothFn potential;
  OrderingParams ordering{0.0, 0.0, 0.0};
  Interval domain{0.0, 1.0};
  double hbar = 1.0;
  BoundaryCondition left;
  BoundaryCondition right;

  /// Generalized form with U_eff from the ordering.
  [[nodiscard]] DiscreteSpec discrete_spec() const;
};

/// Default example-1 interval for the lowest k levels. Truncation sits where
/// the mass has fallen to ~1e-9 of the oscillator scale on one side and well
/// past the k-th turning point on the other.
Interval example1_default_domain(const Example1& ex, double hbar, int k);

/// Example 1 on `domain` (default above). The end where the mass vanishes
/// gets the Robin condition matching the asymptotic decay of phi; the other
/// end is Dirichlet.
SpectralProblem example1_problem(const Example1& ex, const OrderingParams& ord, double hbar,
                                 int k, std::optional<Interval> domain = std::nullopt);

/// Default example-2 half-line truncation: x_min = 1e-4 ground-state lengths,
/// x_max a generous margin past the k-th turning point.
Interval example2_default_domain(const Example2& ex, const OrderingParams& ord, double hbar,
                                 int k);

/// Example 2 with Dirichlet ends on `domain` (default above).
SpectralProblem example2_problem(const Example2& ex, const OrderingParams& ord, double hbar,
                                 int k, std::optional<Interval> domain = std::nullopt);

/// Constant mass m0 with a caller-supplied potential, Dirichlet ends.
SpectralProblem custom_problem(SmoothFn mass, SmoothFn potential, const OrderingParams& ord,
                               double hbar, Interval domain);

/// Lowest eigenvalue on the given domain and on an enlarged one.
struct DomainProbe {
  Interval base;
  Interval enlarged;
  double e0_base = 0.0;
  double e0_enlarged = 0.0;
  double relative_shift = 0.0;
  /// Relative shift <= kDomainShiftTolerance. A spectrum that keeps dropping as the domain
  /// grows toward a singular end is the numeric signature of a complex nu.
  bool stable = true;
};

/// Stable problems shift by discretization error only (~1e-3 at a few hundred
/// points); a falling ground state moves by orders of magnitude.
inline constexpr double kDomainShiftTolerance = 1e-2;

/// Shrinks a positive lower end by 100x (half-line problems) or pushes it out
/// by a quarter of the length, pushes the upper end out by a quarter, and
/// halves the spacing.
DomainProbe probe_domain(const SpectralProblem& problem, int points);

} // namespace pdm
