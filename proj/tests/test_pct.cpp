#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pdm/errors.hpp"
#include "pdm/pct.hpp"
#include "pdm/problems.hpp"

using namespace pdm;

TEST_CASE("log map: image, inverse and Schwarzian-type correction") {
  const double c = 1.5;
  const CoordinateMap map = log_map(c, {0.1, 10.0});
  CHECK_FALSE(map.decreasing());
  CHECK(map.x_image().lo == doctest::Approx(2.0 / c * std::log(0.1)));
  for (double u : {0.2, 1.0, 7.0}) CHECK(map.inverse(map.f()(u)) == doctest::Approx(u).epsilon(1e-14));
  // f = (2/c) ln u: f'''/f' - 1.5 (f''/f')^2 = 2/u^2 - 1.5/u^2.
  const SmoothFn corr = map_correction(map, 0.7);
  for (double u : {0.3, 1.0, 4.0})
    CHECK(corr(u) == doctest::Approx(-0.49 / (8.0 * u * u)).epsilon(1e-13));
  CHECK(log_map(-1.0).decreasing());
  CHECK_THROWS_AS(log_map(0.0), InvalidParam);
}

TEST_CASE("numeric inverse agrees with the closed form") {
  const SmoothFn f = SmoothFn::exponential(0.5) + SmoothFn::identity();
  const CoordinateMap numeric(f, {-2.0, 3.0});
  for (double u : {-1.9, 0.0, 2.5}) CHECK(numeric.inverse(f(u)) == doctest::Approx(u).epsilon(1e-12));
  CHECK_THROWS_AS((void)numeric.inverse(f(3.0) + 1.0), DomainError);
}

TEST_CASE("maps with a vanishing or sign-changing slope are rejected") {
  CHECK_THROWS_AS(CoordinateMap(SmoothFn::power(2.0), {-1.0, 1.0}), InvalidParam);
  CHECK_THROWS_AS(affine_map(0.0, 1.0, {0.0, 1.0}), InvalidParam);
}

TEST_CASE("affine maps rescale the spectrum trivially") {
  // Oscillator on x in [-10, 10]; with x = 2u + 1 the u-problem carries weight 4.
  DiscreteSpec xs{SmoothFn::constant(1.0), 0.5 * SmoothFn::power(2.0), 1.0, Form::pdm_generalized,
                  {-10.0, 10.0}, {}, {}};
  const TransformedProblem tp = transform_problem(xs, affine_map(2.0, 1.0, {-10.0, 10.0}));
  CHECK(tp.constant_weight);
  CHECK(tp.mass == doctest::Approx(4.0));
  const auto r = refine(tp.discrete_spec(), 400, 3, 3);
  for (int n = 0; n < 3; ++n) CHECK(r.extrapolated[n] == doctest::Approx(n + 0.5).epsilon(1e-7));
}

TEST_CASE("decreasing maps swap the ends and flip log-derivatives") {
  DiscreteSpec xs{SmoothFn::constant(1.0), 0.5 * SmoothFn::power(2.0), 1.0, Form::pdm_generalized,
                  {0.0, 12.0}, BoundaryCondition::robin(0.0), {}};
  const TransformedProblem tp = transform_problem(xs, affine_map(-1.0, 0.0, {-12.0, 0.0}));
  CHECK(tp.right.kind == BoundaryCondition::Kind::robin);
  CHECK(tp.left.kind == BoundaryCondition::Kind::dirichlet);
  const auto r = refine(tp.discrete_spec(), 400, 3, 2);
  CHECK(r.extrapolated[0] == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(r.extrapolated[1] == doctest::Approx(2.5).epsilon(1e-7));
  // chi = phi(f(u)) / sqrt|f'|: chi'/chi = f' phi'/phi - f''/(2 f').
  const CoordinateMap lm = log_map(1.0);
  CHECK(map_log_derivative(lm, 2.0, 3.0) == doctest::Approx(3.0 + 0.25));
}

TEST_CASE("example 1 under the log map has a constant weight 4 m0 / c^2") {
  const Example1 ex{1.5, 2.0, 0.8};
  const SpectralProblem p = example1_problem(ex, catalog(OrderingName::weyl), 1.0, 3, Interval{-5.0, 2.0});
  const TransformedProblem tp = transform_problem(p.discrete_spec(), log_map(ex.c));
  CHECK(tp.constant_weight);
  CHECK(tp.mass == doctest::Approx(4.0 * ex.m0 / (ex.c * ex.c)).epsilon(1e-12));
}

TEST_CASE("pull-back and push-forward invert each other") {
  const CoordinateMap map = log_map(1.0, {1e-3, 50.0});
  const SmoothFn mass = SmoothFn::exponential(1.0);
  SampledState chi;
  chi.start = 0.05;
  chi.step = 1e-3;
  for (int i = 0; i <= 6000; ++i) {
    const double u = chi.node(i);
    chi.values.push_back(u * u * std::exp(-u * u));
  }
  const SampledState psi = pull_back_state(chi, map, mass, -5.0, 1e-3, 7001);
  CHECK(psi.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  const SampledState back = push_forward_state(psi, map, mass, 0.1, 1e-3, 2601);
  // Compare shapes: chi scaled to unit norm on the same window.
  double scale = 0.0;
  for (std::size_t i = 0; i < back.values.size(); ++i) {
    const double u = back.node(i);
    const double ref = u * u * std::exp(-u * u);
    if (i == 2000) scale = back.values[i] / ref;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < back.values.size(); ++i) {
    const double u = back.node(i);
    worst = std::max(worst, std::abs(back.values[i] / scale - u * u * std::exp(-u * u)));
  }
  CHECK(worst <= 1e-8);
  CHECK_THROWS_AS(pull_back_state(chi, map, mass, -20.0, 1e-3, 10), DomainError);
}

TEST_CASE("pulled-back u-route ground state matches the direct x-route state") {
  const Example1 ex;
  const Interval dom{-8.0, 3.0};
  const SpectralProblem p = example1_problem(ex, catalog(OrderingName::weyl), 1.0, 1, dom);
  const DiscreteSpec xs = p.discrete_spec();
  const CoordinateMap map = log_map(ex.c);
  const TransformedProblem tp = transform_problem(xs, map);
  const DiscreteSpec us = tp.discrete_spec();

  const int n = 3001;
  const auto ur = lowest_eigenvalues(
      discretize(us.mass, us.potential, 1.0, Grid1D::make(us.domain.lo, us.domain.hi, n), us.form,
                 us.left, us.right),
      1, true);
  const auto xg = discretize(xs.mass, xs.potential, 1.0, Grid1D::make(dom.lo, dom.hi, n), xs.form,
                             xs.left, xs.right);
  const auto xr = lowest_eigenvalues(xg, 1, true);
  CHECK(ur.eigenvalues[0] == doctest::Approx(xr.eigenvalues[0]).epsilon(1e-4));

  // A Robin end makes the boundary node an unknown.
  const double u0 = us.left.kind == BoundaryCondition::Kind::robin ? ur.grid.node(0) : ur.grid.node(1);
  const SampledState chi{u0, ur.grid.h(), ur.eigenvectors[0]};
  const double x0 = -6.0, dx = 1e-2;
  const SampledState psi = pull_back_state(chi, map, xs.mass, x0, dx, 801);

  // Direct route: psi = sqrt(m) phi, sampled at the same points by linear interpolation.
  SampledState direct{x0, dx, {}};
  for (int i = 0; i < 801; ++i) {
    const double x = x0 + dx * i;
    const double t = (x - xg.nodes.front()) / xg.grid.h();
    const auto j = static_cast<std::size_t>(t);
    const double phi = xr.eigenvectors[0][j] + (t - j) * (xr.eigenvectors[0][j + 1] - xr.eigenvectors[0][j]);
    direct.values.push_back(std::sqrt(xs.mass(x)) * phi);
  }
  const double nd = std::sqrt(direct.norm_squared());
  double worst = 0.0;
  for (std::size_t i = 0; i < psi.values.size(); ++i)
    worst = std::max(worst, std::abs(psi.values[i] - direct.values[i] / nd));
  CHECK(worst <= 2e-3);
}
