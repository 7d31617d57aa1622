#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "pdm/ordering.hpp"

namespace pdm {

/// -(hbar^2/2m) chi'' + [ m omega^2 u^2 / 2 - barrier / u^2 ] chi = E chi on u > 0.
struct BarrierOscillator {
  double omega = 1.0;
  double barrier = 0.0;
  double hbar = 1.0;
  double mass = 1.0;
};

enum class Classification { physical, forbidden_complex };
enum class Provenance { paper_printed, derived_mapping };

std::string_view to_string(Classification c);
std::string_view to_string(Provenance p);

struct SpectrumFormula {
  std::complex<double> nu;
  std::vector<double> levels;  ///< empty when nu is complex
  Classification classification = Classification::physical;
  Provenance provenance = Provenance::derived_mapping;
};

/// Both readings of a closed-form spectrum.
struct SpectrumVariants {
  SpectrumFormula paper;
  SpectrumFormula derived;
  /// Example 1 only: the shift as literally printed, 1/4 - 2q/c^2, with no radical.
  double nu_without_radical = 0.0;
};

/// forbidden_complex iff |Im nu| > 1e-12.
Classification classify_ordering(std::complex<double> nu);

/// E_n = hbar omega (2n + 1 + nu), nu = sqrt(1/4 - 2 m barrier / hbar^2), n = 0..n_max.
SpectrumFormula barrier_levels(const BarrierOscillator& p, int n_max);

/// Exponential mass m0 exp(c x) with potential V0 exp(c x).
/// Printed reading: nu = sqrt(1/4 - 2q/c^2), E_n = hbar |c| sqrt(2 V0/m0) (2n + 1 + nu).
/// Derived reading: the log-map image of the problem is fitted to a barrier
/// oscillator and handed to barrier_levels.
SpectrumVariants example1_spectrum(double m0, double c, double V0, const OrderingParams& ord,
                                   double hbar, int n_max);

/// Quadratic mass cmass x^2 with potential A/(cmass x^4) + B/(cmass x^2), B < 0.
/// Printed reading: nu = sqrt(1/4 - 2(A+g)/hbar^2), E_n = -2B^2 / (cmass (2n+nu+1)^2 hbar^2).
/// Derived reading: m U_eff = B + G/x^2 is fitted, and the fixed-energy problem
/// is read as an oscillator whose frequency carries E.
SpectrumVariants example2_spectrum(double cmass, double A, double B, const OrderingParams& ord,
                                   double hbar, int n_max);

/// The strength G of the 1/x^2 term in m U_eff for example 2 (equals A + g).
double example2_inverse_square(double cmass, double A, double B, const OrderingParams& ord,
                               double hbar);

} // namespace pdm
