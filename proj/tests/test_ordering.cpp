#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pdm/errors.hpp"
#include "pdm/opcheck.hpp"
#include "pdm/ordering.hpp"

using namespace pdm;

TEST_CASE("catalog triples and derived beta") {
  const OrderingParams w = catalog(OrderingName::weyl);
  CHECK(w == OrderingParams(1.0, 0.0, 0.0));
  CHECK(w.beta() == -1.0);
  CHECK(catalog(OrderingName::bendaniel_duke) == OrderingParams(0.0, 0.0, 0.0));
  CHECK(catalog(OrderingName::zhu_kroemer) == OrderingParams(0.0, -0.5, -0.5));
  CHECK(catalog(OrderingName::zhu_kroemer).beta() == 0.0);
  CHECK(catalog(OrderingName::gora_williams).beta() == 0.0);
  CHECK(catalog(OrderingName::li_kuhn).beta() == -0.5);
  for (auto n : kCatalog) CHECK(parse_ordering_name(to_string(n)) == n);
  CHECK_FALSE(parse_ordering_name("weil").has_value());
  CHECK(catalog_names().find("bendaniel-duke") != std::string::npos);
}

TEST_CASE("a = -1 is rejected") {
  CHECK_THROWS_AS(OrderingParams(-1.0, 0.3, 0.2), SingularNormalization);
}

TEST_CASE("closed-form ambiguity potential equals the Hamiltonian applied to 1") {
  // The four-term operator acting on the constant function leaves exactly its
  // zeroth-order term; the word expansion never uses the closed form.
  const auto masses = opcheck::default_masses();
  for (const OrderingParams& o : opcheck::random_orderings(25, 99))
    for (const auto& m : masses) {
      const SmoothFn U = ambiguity_potential(o, m.fn, 0.8);
      for (double x : {-1.2, -0.3, 0.4, 1.1}) {
        const double direct = opcheck::extracted_zeroth_order(o, m.fn, x, 0.8);
        CHECK(U(x) == doctest::Approx(direct).epsilon(1e-11).scale(1e-12));
      }
    }
}

TEST_CASE("exponential mass: m U = -hbar^2 q") {
  const double c = 1.7, hbar = 0.6;
  const SmoothFn m = 2.0 * SmoothFn::exponential(c);
  for (const OrderingParams& o : opcheck::random_orderings(20, 5)) {
    const SmoothFn U = ambiguity_potential(o, m, hbar);
    for (double x : {-1.0, 0.0, 0.7})
      CHECK(m(x) * U(x) == doctest::Approx(-hbar * hbar * q_coefficient(o, c)).epsilon(1e-12));
  }
  // q for the two-parameter family reduces to the printed value for a = 0.
  const OrderingParams zk = catalog(OrderingName::zhu_kroemer);
  CHECK(q_coefficient(zk, 1.0) == doctest::Approx((-2 * 0.25 + 1.0) / 4.0));
}

TEST_CASE("quadratic mass: the 1/x^2 strength of m U_eff is A + g") {
  const double cm = 1.3, A = 0.2, B = -4.0, hbar = 0.9;
  const SmoothFn m = SmoothFn::polynomial({0.0, 0.0, cm});
  const SmoothFn V = (A / cm) * SmoothFn::power(-4.0) + (B / cm) * SmoothFn::power(-2.0);
  for (const OrderingParams& o : opcheck::random_orderings(20, 17)) {
    const SmoothFn Ueff = effective_potential(o, m, V, hbar);
    const double G = A + g_coefficient(o, hbar);
    for (double x : {0.3, 1.0, 2.5})
      CHECK(m(x) * Ueff(x) == doctest::Approx(B + G / (x * x)).epsilon(1e-11));
  }
}

TEST_CASE("ambiguity-free families have vanishing U for any mass") {
  const SmoothFn m = SmoothFn::polynomial({2.0, 1.0, 0.5}) * SmoothFn::exponential(0.3);
  for (const OrderingParams& o : opcheck::ambiguity_free_orderings(20, 4)) {
    CHECK(is_ambiguity_free(o));
    const SmoothFn U = ambiguity_potential(o, m, 1.0);
    for (double x : {-2.0, -0.5, 0.5, 2.0}) CHECK(std::abs(U(x)) <= 1e-12);
  }
  CHECK(is_ambiguity_free(catalog(OrderingName::bendaniel_duke)));
  CHECK_FALSE(is_ambiguity_free(catalog(OrderingName::zhu_kroemer)));
}

TEST_CASE("U is symmetric under alpha <-> gamma") {
  const SmoothFn m = SmoothFn::polynomial({1.0, 0.0, 1.0});
  const SmoothFn a = ambiguity_potential({0.4, -0.3, 1.2}, m, 1.0);
  const SmoothFn b = ambiguity_potential({0.4, 1.2, -0.3}, m, 1.0);
  for (double x : {-1.0, 0.2, 1.5}) CHECK(a(x) == doctest::Approx(b(x)));
}

TEST_CASE("Weyl and Li-Kuhn share the effective potential") {
  const auto masses = opcheck::default_masses();
  const SmoothFn V = SmoothFn::gaussian(0.0, 1.0);
  for (const auto& m : masses) {
    const SmoothFn a = effective_potential(catalog(OrderingName::weyl), m.fn, V, 1.0);
    const SmoothFn b = effective_potential(catalog(OrderingName::li_kuhn), m.fn, V, 1.0);
    for (double x : {-1.4, -0.1, 0.9}) CHECK(a(x) == doctest::Approx(b(x)).epsilon(1e-12));
  }
}
