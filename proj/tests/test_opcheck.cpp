#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pdm/errors.hpp"
#include "pdm/opcheck.hpp"

using namespace pdm;
using namespace pdm::opcheck;

namespace {

TestFunction real_fn(std::string name, SmoothFn f) { return {std::move(name), std::move(f), SmoothFn()}; }

} // namespace

TEST_CASE("words: depth limit, adjoint and signature") {
  const SmoothFn m = SmoothFn::exponential(1.0);
  CHECK_THROWS_AS(OperatorWord({Momentum{}, Momentum{}, Momentum{}}), TooDeep);
  const OperatorWord w({mass_power(m, 0.5), Momentum{}, mass_power(m, -1.0)}, {2.0, 1.0});
  CHECK(w.momenta() == 1);
  const OperatorWord a = w.adjoint();
  CHECK(a.weight() == std::complex<double>(2.0, -1.0));
  CHECK(a.signature() == "m^-1 p m^0.5");
}

TEST_CASE("p on a real function is -i hbar times its derivative") {
  const TestFunction g = real_fn("g", SmoothFn::gaussian(0.2, 0.9));
  const OperatorWord p({Momentum{}});
  const OperatorWord p2({Momentum{}, Momentum{}});
  for (double x : {-0.5, 0.0, 0.7}) {
    const Jet3 j = g.re.eval_jet(x);
    const complex v = apply_word(p, g, x, 0.7);
    CHECK(v.real() == doctest::Approx(0.0));
    CHECK(v.imag() == doctest::Approx(-0.7 * j.v1));
    CHECK(apply_word(p2, g, x, 0.7).real() == doctest::Approx(-0.49 * j.v2));
  }
}

TEST_CASE("four-term Hamiltonians are closed under the adjoint") {
  const SmoothFn m = SmoothFn::polynomial({1.0, 0.0, 1.0});
  for (const OrderingParams& o : random_orderings(10, 3))
    CHECK(build_four_term(o, m, 1.0).closed_under_adjoint());
  CHECK(build_weyl(m, 1.0).closed_under_adjoint());
  CHECK(build_li_kuhn(m, 1.0).closed_under_adjoint());
  // a = 0 drops the Weyl-type words.
  CHECK(build_four_term(catalog(OrderingName::zhu_kroemer), m, 1.0).words.size() == 2);
}

TEST_CASE("constant mass: every ordering is p^2 / 2m") {
  const SmoothFn m = SmoothFn::constant(2.0);
  const auto& suite = default_suite();
  for (const OrderingParams& o : random_orderings(5, 8)) {
    const OrderedHamiltonian h = build_four_term(o, m, 1.0);
    for (const TestFunction& psi : suite.functions)
      for (double x : {-1.0, 0.3}) {
        const complex want = -0.25 * complex(psi.re.eval_jet(x).v2, psi.im.eval_jet(x).v2);
        CHECK(std::abs(h.apply(psi, x) - want) <= 1e-13 * (1.0 + std::abs(want)));
      }
  }
}

TEST_CASE("Weyl equals Li-Kuhn and the four-term operator has the canonical form") {
  const auto& suite = default_suite();
  for (const NamedMass& m : default_masses()) {
    CAPTURE(m.name);
    CHECK(residual_weyl_lk(m.fn, suite.functions, suite.points, 1.0) <= 1e-11);
    for (const OrderingParams& o : random_orderings(20, 20240611))
      CHECK(canonical_form_residual(o, m.fn, suite.functions, suite.points, 1.0) <= 1e-11);
  }
}

TEST_CASE("residuals are sensitive: a wrong ordering fails the Weyl comparison") {
  const auto& suite = default_suite();
  const SmoothFn m = SmoothFn::polynomial({1.0, 0.0, 1.0});
  const OrderedHamiltonian weyl = build_weyl(m, 1.0);
  const OrderedHamiltonian zk = build_four_term(catalog(OrderingName::zhu_kroemer), m, 1.0);
  double worst = 0.0;
  for (const TestFunction& psi : suite.functions)
    for (double x : suite.points)
      worst = std::max(worst, std::abs(weyl.apply(psi, x) - zk.apply(psi, x)) /
                                  (weyl.magnitude(psi, x) + zk.magnitude(psi, x)));
  CHECK(worst > 1e-3);
}

TEST_CASE("random draws are deterministic and avoid a = -1") {
  const auto a = random_orderings(50, 11);
  const auto b = random_orderings(50, 11);
  CHECK(a == b);
  CHECK(a != random_orderings(50, 12));
  for (const OrderingParams& o : a) {
    CHECK(std::abs(o.a() + 1.0) >= 0.05);
    CHECK(o.alpha() >= -1.5);
    CHECK(o.alpha() <= 1.5);
  }
  for (const OrderingParams& o : ambiguity_free_orderings(20, 2)) CHECK(is_ambiguity_free(o));
}

TEST_CASE("serial and parallel sweeps give identical maxima") {
  const auto ords = random_orderings(12, 4);
  const auto masses = default_masses();
  const auto& suite = default_suite();
  CHECK(canonical_sweep_serial(ords, masses, suite, 1.0) ==
        canonical_sweep_parallel(ords, masses, suite, 1.0));
}

TEST_CASE("symmetrized linear quantization does not depend on alpha, kappa = 1/2") {
  const SmoothFn f = SmoothFn::polynomial({1.0, 0.5, 1.0});
  const auto& suite = default_suite();
  for (const TestFunction& psi : suite.functions)
    for (double x : {-1.1, 0.2, 0.9}) {
      const complex ref = linear_quantization(f, 0.0, psi, x, 1.0, true);
      for (double alpha : {-1.0, 0.25, 0.5, 2.0, 3.5})
        CHECK(std::abs(linear_quantization(f, alpha, psi, x, 1.0, true) - ref) <=
              1e-13 * std::abs(ref));
      // The unsymmetrized form does depend on alpha.
      if (std::abs(psi.re(x)) > 1e-2)
        CHECK(std::abs(linear_quantization(f, 0.0, psi, x, 1.0, false) -
                       linear_quantization(f, 1.0, psi, x, 1.0, false)) > 1e-6);
    }
  const TestFunction g = suite.functions[0];
  CHECK(measure_kappa(f, g, 0.4, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(linear_quantization(SmoothFn::identity(), 0.5, g, -1.0, 1.0, true), DomainError);
}

TEST_CASE("Hermiticity defect is small for orderings and large for a non-Hermitian word") {
  const SmoothFn m = SmoothFn::polynomial({2.0, 1.0, 0.5});
  const auto& suite = default_suite();
  for (auto name : kCatalog) {
    const OrderedHamiltonian h = build_four_term(catalog(name), m, 1.0);
    CHECK(hermiticity_defect(h, suite.functions[0], suite.functions[2], -12.0, 12.0, 4000) <= 1e-9);
  }
  OrderedHamiltonian lopsided;
  lopsided.words.emplace_back(std::vector<Token>{mass_power(m, -1.0), Momentum{}, Momentum{}});
  CHECK(hermiticity_defect(lopsided, suite.functions[0], suite.functions[2], -12.0, 12.0, 4000) > 1e-3);
}

TEST_CASE("suite is versioned and fixed") {
  const Suite& s = default_suite();
  CHECK(s.version == "opcheck-suite/v1");
  CHECK(s.functions.size() == 6);
  CHECK(s.points.size() == 20);
  CHECK(s.points.front() == doctest::Approx(-1.425));
}
