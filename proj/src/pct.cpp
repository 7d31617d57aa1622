#include "pdm/pct.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/tools/roots.hpp>

#include "pdm/errors.hpp"

namespace pdm {

CoordinateMap::CoordinateMap(SmoothFn f, Interval u_domain, std::function<double(double)> inverse)
    : f_(std::move(f)), u_domain_(u_domain), inverse_(std::move(inverse)) {
  if (!(u_domain.lo < u_domain.hi)) throw InvalidParam("coordinate map needs a nonempty u-domain");
  constexpr int samples = 256;
  int sign = 0;
  for (int i = 0; i <= samples; ++i) {
    const double u = u_domain.lo + (u_domain.hi - u_domain.lo) * i / samples;
    const double slope = f_.eval_jet(u).v1;
    if (!std::isfinite(slope) || slope == 0.0)
      throw InvalidParam("coordinate map has f'(u) = 0 or non-finite at u = " + std::to_string(u));
    const int s = slope > 0.0 ? 1 : -1;
    if (sign != 0 && s != sign)
      throw InvalidParam("coordinate map is not monotone near u = " + std::to_string(u));
    sign = s;
  }
  decreasing_ = sign < 0;
}

Interval CoordinateMap::x_image() const {
  const double a = f_(u_domain_.lo);
  const double b = f_(u_domain_.hi);
  return {std::min(a, b), std::max(a, b)};
}

double CoordinateMap::inverse(double x) const {
  const Interval img = x_image();
  const double slack = 1e-12 * std::max(1.0, std::max(std::abs(img.lo), std::abs(img.hi)));
  if (x < img.lo - slack || x > img.hi + slack)
    throw DomainError("x = " + std::to_string(x) + " lies outside the image of the map");
  if (inverse_) return std::clamp(inverse_(x), u_domain_.lo, u_domain_.hi);

  auto g = [&](double u) { return f_(u) - x; };
  double lo = u_domain_.lo;
  double hi = u_domain_.hi;
  const double glo = g(lo);
  const double ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo > 0.0) == (ghi > 0.0)) return std::abs(glo) < std::abs(ghi) ? lo : hi;
  std::uintmax_t iters = 200;
  const auto root = boost::math::tools::toms748_solve(
      g, lo, hi, glo, ghi, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (root.first + root.second);
}

SmoothFn CoordinateMap::abs_slope() const {
  const SmoothFn slope = f_.derivative(1);
  return decreasing_ ? -slope : slope;
}

CoordinateMap identity_map(Interval u_domain) {
  return {SmoothFn::identity(), u_domain, [](double x) { return x; }};
}

CoordinateMap affine_map(double sigma, double tau, Interval u_domain) {
  if (!(sigma != 0.0) || !std::isfinite(sigma) || !std::isfinite(tau))
    throw InvalidParam("affine map needs finite sigma != 0 and finite tau");
  return {SmoothFn::polynomial({tau, sigma}), u_domain,
          [sigma, tau](double x) { return (x - tau) / sigma; }};
}

CoordinateMap log_map(double c, Interval u_domain) {
  if (c == 0.0 || !std::isfinite(c)) throw InvalidParam("log map needs finite c != 0");
  if (!(u_domain.lo > 0.0)) throw InvalidParam("log map lives on u > 0");
  return {(2.0 / c) * SmoothFn::log(), u_domain, [c](double x) { return std::exp(0.5 * c * x); }};
}

SmoothFn map_correction(const CoordinateMap& map, double hbar) {
  const SmoothFn& f = map.f();
  const SmoothFn inv = map.abs_slope().recip();
  const double sigma = map.decreasing() ? -1.0 : 1.0;
  const SmoothFn f2 = f.derivative(2);
  const SmoothFn f3 = f.derivative(3);
  const SmoothFn bracket = sigma * (f3 * inv) - 1.5 * (f2 * inv * f2 * inv);
  return (-0.25 * hbar * hbar) * bracket;
}

SmoothFn transform_potential(const SmoothFn& w_minus_e, const CoordinateMap& map, double hbar) {
  const SmoothFn slope = map.f().derivative(1);
  return slope * slope * w_minus_e.compose(map.f()) + map_correction(map, hbar);
}

double map_log_derivative(const CoordinateMap& map, double u, double phi_log_derivative) {
  const Jet3 j = map.f().eval_jet(u);
  return j.v1 * phi_log_derivative - j.v2 / (2.0 * j.v1);
}

namespace {

BoundaryCondition carry(const BoundaryCondition& bc, const CoordinateMap& map, double u) {
  if (bc.kind == BoundaryCondition::Kind::dirichlet) return bc;
  return BoundaryCondition::robin(map_log_derivative(map, u, bc.log_derivative));
}

} // namespace

TransformedProblem transform_problem(const DiscreteSpec& x_spec, const CoordinateMap& map) {
  const SmoothFn stiffness = x_spec.mass * x_spec.potential;
  const SmoothFn slope = map.f().derivative(1);

  TransformedProblem tp;
  tp.hbar = x_spec.hbar;
  tp.weight = slope * slope * x_spec.mass.compose(map.f());
  const SmoothFn s_u = transform_potential(stiffness, map, x_spec.hbar);

  const double ua = map.inverse(x_spec.domain.lo);
  const double ub = map.inverse(x_spec.domain.hi);
  tp.domain = {std::min(ua, ub), std::max(ua, ub)};
  if (map.decreasing()) {
    tp.left = carry(x_spec.right, map, tp.domain.lo);
    tp.right = carry(x_spec.left, map, tp.domain.hi);
  } else {
    tp.left = carry(x_spec.left, map, tp.domain.lo);
    tp.right = carry(x_spec.right, map, tp.domain.hi);
  }

  constexpr int samples = 64;
  double lo = HUGE_VAL;
  double hi = -HUGE_VAL;
  for (int i = 0; i <= samples; ++i) {
    const double u = tp.domain.lo + tp.domain.length() * i / samples;
    const double w = tp.weight(u);
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  if (!(lo > 0.0)) throw InvalidParam("transformed weight is not positive on the u-domain");
  tp.constant_weight = (hi - lo) <= 1e-10 * hi;
  if (tp.constant_weight) {
    tp.mass = tp.weight(0.5 * (tp.domain.lo + tp.domain.hi));
    tp.potential = (1.0 / tp.mass) * s_u;
  } else {
    tp.potential = s_u * tp.weight.recip();
  }
  return tp;
}

DiscreteSpec TransformedProblem::discrete_spec() const {
  if (constant_weight)
    return {SmoothFn::constant(mass), potential, hbar, Form::constant_mass, domain, left, right};
  return {weight, potential, hbar, Form::pdm_generalized, domain, left, right};
}

double SampledState::norm_squared() const {
  if (values.size() < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v2 = values[i] * values[i];
    sum += (i == 0 || i + 1 == values.size()) ? 0.5 * v2 : v2;
  }
  return sum * step;
}

namespace {

void normalize(SampledState& s) {
  const double n2 = s.norm_squared();
  if (!(n2 > 0.0)) throw InvalidParam("state has zero norm");
  const double scale = 1.0 / std::sqrt(n2);
  for (double& v : s.values) v *= scale;
}

boost::math::interpolators::cardinal_cubic_b_spline<double> spline_of(const SampledState& s) {
  if (s.values.size() < 4) throw InvalidParam("interpolation needs at least 4 samples");
  return {s.values.data(), s.values.size(), s.start, s.step};
}

void check_inside(double t, const SampledState& s, const char* what) {
  const double slack = 1e-10 * std::abs(s.step);
  if (t < s.start - slack || t > s.end() + slack)
    throw DomainError(std::string(what) + " = " + std::to_string(t) +
                      " falls outside the sampled range");
}

} // namespace

SampledState pull_back_state(const SampledState& chi, const CoordinateMap& map,
                             const SmoothFn& mass, double x_start, double x_step,
                             std::size_t count) {
  const auto spline = spline_of(chi);
  const SmoothFn slope = map.abs_slope();
  SampledState psi{x_start, x_step, std::vector<double>(count)};
  for (std::size_t i = 0; i < count; ++i) {
    const double x = psi.node(i);
    const double u = map.inverse(x);
    check_inside(u, chi, "u");
    psi.values[i] = std::sqrt(mass(x) * slope(u)) * spline(u);
  }
  normalize(psi);
  return psi;
}

SampledState push_forward_state(const SampledState& psi, const CoordinateMap& map,
                                const SmoothFn& mass, double u_start, double u_step,
                                std::size_t count) {
  const auto spline = spline_of(psi);
  const SmoothFn slope = map.abs_slope();
  SampledState chi{u_start, u_step, std::vector<double>(count)};
  for (std::size_t i = 0; i < count; ++i) {
    const double u = chi.node(i);
    const double x = map.f()(u);
    check_inside(x, psi, "x");
    chi.values[i] = spline(x) / std::sqrt(mass(x) * slope(u));
  }
  normalize(chi);
  return chi;
}

} // namespace pdm
