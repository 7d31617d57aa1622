#pragma once

#include <functional>
#include <vector>

#include "pdm/numeric.hpp"
#include "pdm/profiles.hpp"
#include "pdm/smoothfn.hpp"

namespace pdm {

/// Change of variable x = f(u) on a u-interval, with f' != 0 throughout.
class CoordinateMap {
public:
  /// `inverse` may be empty, in which case x -> u is found by bisection.
  /// Throws InvalidParam if f' vanishes or changes sign on a sample grid.
  CoordinateMap(SmoothFn f, Interval u_domain, std::function<double(double)> inverse = {});

  [[nodiscard]] const SmoothFn& f() const { return f_; }
  [[nodiscard]] Interval u_domain() const { return u_domain_; }
  [[nodiscard]] bool decreasing() const { return decreasing_; }
  /// f(u_domain), oriented so lo < hi.
  [[nodiscard]] Interval x_image() const;
  /// u with f(u) = x. Throws DomainError when x is outside x_image().
  [[nodiscard]] double inverse(double x) const;
  /// |f'| as a SmoothFn that stays positive, so it can be inverted.
  [[nodiscard]] SmoothFn abs_slope() const;

private:
  SmoothFn f_;
  Interval u_domain_;
  std::function<double(double)> inverse_;
  bool decreasing_ = false;
};

CoordinateMap identity_map(Interval u_domain);
/// f(u) = sigma u + tau, sigma != 0.
CoordinateMap affine_map(double sigma, double tau, Interval u_domain);
/// f(u) = (2/c) ln u on u > 0, so that exp(c f(u)) = u^2. Throws InvalidParam for c = 0.
CoordinateMap log_map(double c, Interval u_domain = {1e-8, 1e8});

/// Given the combination W - E of a problem -(hbar^2/2) phi'' + (W - E) phi = 0,
/// returns f'^2 (W - E)(f(u)) - (hbar^2/4) [ f'''/f' - (3/2)(f''/f')^2 ],
/// the corresponding combination for chi(u) = phi(f(u)) / sqrt(|f'(u)|).
SmoothFn transform_potential(const SmoothFn& w_minus_e, const CoordinateMap& map, double hbar);

/// Just the second term above: -(hbar^2/4) [ f'''/f' - (3/2)(f''/f')^2 ].
SmoothFn map_correction(const CoordinateMap& map, double hbar);

/// The u-space image of a generalized problem -(hbar^2/2) phi'' + s phi = E w phi.
struct TransformedProblem {
  SmoothFn potential;  ///< per unit weight: transformed s divided by the weight
  SmoothFn weight;     ///< f'^2 w(f(u))
  bool constant_weight = false;
  double mass = 0.0;   ///< the constant weight, when constant_weight
  Interval domain{0.0, 1.0};
  double hbar = 1.0;
  BoundaryCondition left;
  BoundaryCondition right;

  /// Ready for refine(): constant-mass form when the weight is constant,
  /// the generalized form otherwise.
  [[nodiscard]] DiscreteSpec discrete_spec() const;
};

/// Maps the problem stated by `x_spec` (pdm-generalized form, potential =
/// U_eff, mass = weight) through `map`. The x-domain must lie inside the map's
/// image; boundary conditions are carried over as logarithmic derivatives.
TransformedProblem transform_problem(const DiscreteSpec& x_spec, const CoordinateMap& map);

/// Logarithmic derivative chi'/chi at u, given phi'/phi at x = f(u).
double map_log_derivative(const CoordinateMap& map, double u, double phi_log_derivative);

/// Samples on a uniform grid.
struct SampledState {
  double start = 0.0;
  double step = 1.0;
  std::vector<double> values;

  [[nodiscard]] double node(std::size_t i) const { return start + step * static_cast<double>(i); }
  [[nodiscard]] double end() const { return node(values.size() - 1); }
  /// Trapezoidal integral of values^2.
  [[nodiscard]] double norm_squared() const;
};

/// psi(x) = sqrt(m(x)) sqrt(|f'(u(x))|) chi(u(x)) on `x_nodes`, with chi
/// interpolated by a cubic B-spline and the result scaled to unit plain L^2
/// norm. Throws DomainError if some x maps outside the sampled u range.
SampledState pull_back_state(const SampledState& chi, const CoordinateMap& map,
                             const SmoothFn& mass, double x_start, double x_step,
                             std::size_t count);

/// Inverse of pull_back_state: chi(u) = psi(f(u)) / (sqrt(m) sqrt(|f'|)), unit L^2 in u.
SampledState push_forward_state(const SampledState& psi, const CoordinateMap& map,
                                const SmoothFn& mass, double u_start, double u_step,
                                std::size_t count);

} // namespace pdm
