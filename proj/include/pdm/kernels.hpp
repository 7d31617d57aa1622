#pragma once

#include <span>
#include <vector>

#include "pdm/smoothfn.hpp"

/// Data-parallel kernels behind the numeric referee. Every kernel has a
/// plain serial version kept as the reference the OpenMP version is tested
/// and benchmarked against; both produce bit-identical output.
namespace pdm::kernels {

enum class Execution { serial, parallel };

/// Number of eigenvalues of the symmetric tridiagonal matrix (diag, off)
/// strictly below `shift`, from the signs of the LDL^T pivots of T - shift I.
int sturm_count(std::span<const double> diag, std::span<const double> off, double shift);

struct Bracket {
  double lo;
  double hi;
};

/// Gershgorin interval enclosing the whole spectrum.
Bracket gershgorin(std::span<const double> diag, std::span<const double> off);

struct Bisection {
  std::vector<double> eigenvalues;
  std::vector<double> widths;  ///< final bracket width per eigenvalue
};

/// Lowest k eigenvalues by independent Sturm bisection, to relative width rtol.
Bisection bisect_serial(std::span<const double> diag, std::span<const double> off, int k,
                        double rtol);
Bisection bisect_parallel(std::span<const double> diag, std::span<const double> off, int k,
                          double rtol);

/// Values of fn at each x. `ok[i]` is 0 where evaluation threw or was non-finite.
void evaluate_serial(const SmoothFn& fn, std::span<const double> x, std::span<double> out,
                     std::span<unsigned char> ok);
void evaluate_parallel(const SmoothFn& fn, std::span<const double> x, std::span<double> out,
                       std::span<unsigned char> ok);

inline Bisection bisect(std::span<const double> diag, std::span<const double> off, int k,
                        double rtol, Execution exec) {
  return exec == Execution::parallel ? bisect_parallel(diag, off, k, rtol)
                                     : bisect_serial(diag, off, k, rtol);
}

inline void evaluate(const SmoothFn& fn, std::span<const double> x, std::span<double> out,
                     std::span<unsigned char> ok, Execution exec) {
  if (exec == Execution::parallel)
    evaluate_parallel(fn, x, out, ok);
  else
    evaluate_serial(fn, x, out, ok);
}

} // namespace pdm::kernels
