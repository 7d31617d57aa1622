#include "pdm/analytic.hpp"

#include <array>
#include <cmath>
#include <string>

#include "pdm/errors.hpp"
#include "pdm/pct.hpp"
#include "pdm/profiles.hpp"

namespace pdm {

std::string_view to_string(Classification c) {
  return c == Classification::physical ? "physical" : "forbidden-complex";
}

std::string_view to_string(Provenance p) {
  return p == Provenance::paper_printed ? "paper-printed" : "derived-mapping";
}

Classification classify_ordering(std::complex<double> nu) {
  return std::abs(nu.imag()) > 1e-12 ? Classification::forbidden_complex
                                     : Classification::physical;
}

namespace {

std::complex<double> csqrt(double radicand) { return std::sqrt(std::complex<double>(radicand)); }

SpectrumFormula from_nu(std::complex<double> nu, Provenance prov, int n_max, auto level) {
  SpectrumFormula out{nu, {}, classify_ordering(nu), prov};
  if (out.classification == Classification::physical)
    for (int n = 0; n <= n_max; ++n) out.levels.push_back(level(n, nu.real()));
  return out;
}

/// Solves the 3x3 system rows . x = rhs by Cramer's rule.
std::array<double, 3> solve3(const std::array<std::array<double, 3>, 3>& a,
                             const std::array<double, 3>& b) {
  auto det = [](const std::array<std::array<double, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double d = det(a);
  std::array<double, 3> x{};
  for (int k = 0; k < 3; ++k) {
    auto m = a;
    for (int r = 0; r < 3; ++r) m[r][k] = b[r];
    x[k] = det(m) / d;
  }
  return x;
}

/// Fits fn(t) = p0 b0(t) + p1 b1(t) + p2 b2(t) through three samples and
/// confirms the fit at a fourth point.
template <class Basis>
std::array<double, 3> fit3(const SmoothFn& fn, Basis basis, std::array<double, 4> t,
                           const char* what) {
  std::array<std::array<double, 3>, 3> a{};
  std::array<double, 3> b{};
  for (int r = 0; r < 3; ++r) {
    a[r] = basis(t[r]);
    b[r] = fn(t[r]);
  }
  const auto p = solve3(a, b);
  const auto check = basis(t[3]);
  const double predicted = p[0] * check[0] + p[1] * check[1] + p[2] * check[2];
  const double actual = fn(t[3]);
  if (std::abs(predicted - actual) > 1e-9 * (std::abs(actual) + 1.0))
    throw InvalidParam(std::string(what) + " does not have the expected closed form");
  return p;
}

} // namespace

SpectrumFormula barrier_levels(const BarrierOscillator& p, int n_max) {
  if (n_max < 0) throw InvalidParam("n_max must be >= 0");
  if (!(p.omega > 0.0) || !(p.mass > 0.0) || !(p.hbar > 0.0))
    throw InvalidParam("barrier oscillator needs omega, mass, hbar > 0");
  const auto nu = csqrt(0.25 - 2.0 * p.mass * p.barrier / (p.hbar * p.hbar));
  return from_nu(nu, Provenance::derived_mapping, n_max,
                 [&](int n, double v) { return p.hbar * p.omega * (2.0 * n + 1.0 + v); });
}

SpectrumVariants example1_spectrum(double m0, double c, double V0, const OrderingParams& ord,
                                   double hbar, int n_max) {
  if (!(m0 > 0.0) || !(V0 > 0.0)) throw InvalidParam("example 1 needs m0 > 0 and V0 > 0");
  if (c == 0.0 || !std::isfinite(c)) throw InvalidParam("example 1 needs finite c != 0");
  if (!(hbar > 0.0)) throw InvalidParam("hbar must be positive");
  if (n_max < 0) throw InvalidParam("n_max must be >= 0");

  SpectrumVariants out;
  const double q = q_coefficient(ord, c);
  out.nu_without_radical = 0.25 - 2.0 * q / (c * c);
  const double prefactor = hbar * std::abs(c) * std::sqrt(2.0 * V0 / m0);
  out.paper = from_nu(csqrt(out.nu_without_radical), Provenance::paper_printed, n_max,
                      [&](int n, double v) { return prefactor * (2.0 * n + 1.0 + v); });

  // Derived: push m U_eff and m through the log map and read off the oscillator.
  const SmoothFn mass = m0 * SmoothFn::exponential(c);
  const SmoothFn stiffness =
      mass * effective_potential(ord, mass, V0 * SmoothFn::exponential(c), hbar);
  const CoordinateMap map = log_map(c, {1e-3, 1e3});
  const SmoothFn slope = map.f().derivative(1);
  const double kinetic_mass = (slope * slope * mass.compose(map.f()))(1.0);
  const SmoothFn potential = (1.0 / kinetic_mass) * transform_potential(stiffness, map, hbar);
  const auto p = fit3(
      potential, [](double u) { return std::array<double, 3>{u * u, 1.0 / (u * u), 1.0}; },
      {0.5, 1.0, 2.0, 1.5}, "transformed example-1 potential");

  const BarrierOscillator osc{std::sqrt(2.0 * p[0] / kinetic_mass), -p[1], hbar, kinetic_mass};
  out.derived = barrier_levels(osc, n_max);
  for (double& e : out.derived.levels) e += p[2];
  return out;
}

double example2_inverse_square(double cmass, double A, double B, const OrderingParams& ord,
                               double hbar) {
  const SmoothFn mass = cmass * SmoothFn::power(2.0);
  const SmoothFn potential = (A / cmass) * SmoothFn::power(-4.0) + (B / cmass) * SmoothFn::power(-2.0);
  const SmoothFn stiffness = mass * effective_potential(ord, mass, potential, hbar);
  const auto p = fit3(
      stiffness, [](double x) { return std::array<double, 3>{1.0, 1.0 / (x * x), x * x}; },
      {0.5, 1.0, 2.0, 1.5}, "example-2 stiffness");
  return p[1];
}

SpectrumVariants example2_spectrum(double cmass, double A, double B, const OrderingParams& ord,
                                   double hbar, int n_max) {
  if (!(cmass > 0.0)) throw InvalidParam("example 2 needs cmass > 0");
  if (!(B < 0.0)) throw InvalidParam("example 2 has bound states only for B < 0");
  if (!(hbar > 0.0)) throw InvalidParam("hbar must be positive");
  if (n_max < 0) throw InvalidParam("n_max must be >= 0");

  SpectrumVariants out;
  const double g = g_coefficient(ord, hbar);
  out.nu_without_radical = NAN;
  out.paper = from_nu(csqrt(0.25 - 2.0 * (A + g) / (hbar * hbar)), Provenance::paper_printed,
                      n_max, [&](int n, double v) {
                        const double d = 2.0 * n + v + 1.0;
                        return -2.0 * B * B / (cmass * d * d * hbar * hbar);
                      });

  // Derived: at fixed E < 0, -(hbar^2/2) phi'' + (G/x^2 + |E| cmass x^2) phi = -B phi
  // is an oscillator of unit mass with omega = sqrt(2 |E| cmass) and barrier -G.
  const double G = example2_inverse_square(cmass, A, B, ord, hbar);
  const SpectrumFormula unit = barrier_levels({1.0, -G, hbar, 1.0}, n_max);
  out.derived = unit;
  out.derived.levels.clear();
  for (double level : unit.levels) {
    const double omega = -B / level;  // level = hbar (2n + 1 + nu) at omega = 1
    out.derived.levels.push_back(-omega * omega / (2.0 * cmass));
  }
  return out;
}

} // namespace pdm
