#include "pdm/problems.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "pdm/analytic.hpp"
#include "pdm/errors.hpp"

namespace pdm {

DiscreteSpec SpectralProblem::discrete_spec() const {
  return {mass,   effective_potential(ordering, mass, potential, hbar),
          hbar,   Form::pdm_generalized,
          domain, left,
          right};
}

namespace {

void check_example1(const Example1& ex, double hbar, int k) {
  if (!(ex.m0 > 0.0) || !(ex.V0 > 0.0)) throw InvalidParam("example 1 needs m0 > 0 and V0 > 0");
  if (ex.c == 0.0 || !std::isfinite(ex.c)) throw InvalidParam("example 1 needs finite c != 0");
  if (!(hbar > 0.0)) throw InvalidParam("hbar must be positive");
  if (k < 1) throw InvalidParam("k must be >= 1");
}

} // namespace

Interval example1_default_domain(const Example1& ex, double hbar, int k) {
  check_example1(ex, hbar, k);
  // In u = exp(c x / 2) the problem is an oscillator of mass M and frequency omega.
  const double M = 4.0 * ex.m0 / (ex.c * ex.c);
  const double omega = std::abs(ex.c) * std::sqrt(ex.V0 / (2.0 * ex.m0));
  const double length2 = hbar / (M * omega);
  const double top = hbar * omega * (2.0 * k + 3.0);
  const double u2_min = 1e-9 * length2;
  const double u2_max = 2.0 * (top + 200.0 * hbar * omega) / (M * omega * omega);
  const double a = std::log(u2_min) / ex.c;
  const double b = std::log(u2_max) / ex.c;
  return {std::min(a, b), std::max(a, b)};
}

SpectralProblem example1_problem(const Example1& ex, const OrderingParams& ord, double hbar,
                                 int k, std::optional<Interval> domain) {
  check_example1(ex, hbar, k);
  SpectralProblem p;
  p.mass = ex.m0 * SmoothFn::exponential(ex.c);
  p.potential = ex.V0 * SmoothFn::exponential(ex.c);
  p.ordering = ord;
  p.hbar = hbar;
  p.domain = domain.value_or(example1_default_domain(ex, hbar, k));
  // Where the mass vanishes, m U_eff tends to hbar^2 (c^2/8 - q).
  const double asymptote = hbar * hbar * (ex.c * ex.c / 8.0 - q_coefficient(ord, ex.c));
  if (ex.c > 0.0)
    p.left = asymptotic_bc(asymptote, 1.0, hbar, Side::left);
  else
    p.right = asymptotic_bc(asymptote, 1.0, hbar, Side::right);
  return p;
}

Interval example2_default_domain(const Example2& ex, const OrderingParams& ord, double hbar,
                                 int k) {
  if (!(ex.cmass > 0.0)) throw InvalidParam("example 2 needs cmass > 0");
  if (!(ex.B < 0.0)) throw InvalidParam("example 2 has bound states only for B < 0");
  if (!(hbar > 0.0)) throw InvalidParam("hbar must be positive");
  if (k < 1) throw InvalidParam("k must be >= 1");
  const double G = example2_inverse_square(ex.cmass, ex.A, ex.B, ord, hbar);
  const double radicand = 0.25 + 2.0 * G / (hbar * hbar);
  const double nu = radicand > 0.0 ? std::sqrt(radicand) : 0.0;
  // At fixed E_j the problem is an oscillator with omega_j = -B / (hbar (2j + 1 + nu)).
  auto omega = [&](int j) { return -ex.B / (hbar * (2.0 * j + 1.0 + nu)); };
  const double w0 = omega(0);
  const double wk = omega(k - 1);
  const double x_min = 1e-4 * std::sqrt(hbar / w0);
  const double x_max = std::sqrt(2.0 * (-ex.B + 40.0 * hbar * wk)) / wk;
  return {x_min, x_max};
}

SpectralProblem example2_problem(const Example2& ex, const OrderingParams& ord, double hbar,
                                 int k, std::optional<Interval> domain) {
  SpectralProblem p;
  p.domain = domain.value_or(example2_default_domain(ex, ord, hbar, k));
  if (!(p.domain.lo > 0.0)) throw InvalidParam("example 2 lives on x > 0; the domain must start above 0");
  p.mass = ex.cmass * SmoothFn::power(2.0);
  p.potential =
      (ex.A / ex.cmass) * SmoothFn::power(-4.0) + (ex.B / ex.cmass) * SmoothFn::power(-2.0);
  p.ordering = ord;
  p.hbar = hbar;
  return p;
}

SpectralProblem custom_problem(SmoothFn mass, SmoothFn potential, const OrderingParams& ord,
                               double hbar, Interval domain) {
  if (!(hbar > 0.0)) throw InvalidParam("hbar must be positive");
  if (!(domain.lo < domain.hi)) throw InvalidParam("domain needs lo < hi");
  SpectralProblem p;
  p.mass = std::move(mass);
  p.potential = std::move(potential);
  p.ordering = ord;
  p.hbar = hbar;
  p.domain = domain;
  return p;
}

DomainProbe probe_domain(const SpectralProblem& problem, int points) {
  DomainProbe out;
  out.base = problem.domain;
  const double quarter = 0.25 * problem.domain.length();
  out.enlarged = {problem.domain.lo > 0.0 ? problem.domain.lo / 100.0 : problem.domain.lo - quarter,
                  problem.domain.hi + quarter};

  auto ground = [&](Interval dom, int n) {
    SpectralProblem p = problem;
    p.domain = dom;
    const DiscreteSpec spec = p.discrete_spec();
    const GeneralizedProblem gp = discretize(spec.mass, spec.potential, spec.hbar,
                                             Grid1D::make(dom.lo, dom.hi, n), spec.form,
                                             spec.left, spec.right);
    return lowest_eigenvalues(gp, 1).eigenvalues[0];
  };
  // Half the spacing on the enlarged interval: a singular end that swallows
  // the ground state shows up under either change.
  const int enlarged_points = static_cast<int>(
      std::lround(2.0 * (points + 1) * out.enlarged.length() / out.base.length())) - 1;
  out.e0_base = ground(out.base, points);
  out.e0_enlarged = ground(out.enlarged, enlarged_points);
  out.relative_shift =
      std::abs(out.e0_enlarged - out.e0_base) / std::max(std::abs(out.e0_base), 1e-300);
  out.stable = out.relative_shift <= kDomainShiftTolerance;
  return out;
}

} // namespace pdm
