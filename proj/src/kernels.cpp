#include "pdm/kernels.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include "pdm/errors.hpp"

namespace pdm::kernels {

namespace {

double pivot_floor(std::span<const double> off) {
  double emax = 1.0;
  for (double e : off) emax = std::max(emax, e * e);
  return DBL_MIN * emax;
}

int count_with_floor(std::span<const double> diag, std::span<const double> off, double shift,
                     double pivmin) {
  int count = 0;
  double q = diag[0] - shift;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    q = (diag[i] - shift) - off[i - 1] * off[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

/// j-th eigenvalue (0-based) inside [lo, hi].
void bisect_one(std::span<const double> diag, std::span<const double> off, int j, Bracket b,
                double rtol, double pivmin, double& value, double& width) {
  double lo = b.lo;
  double hi = b.hi;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= rtol * std::max(std::abs(lo), std::abs(hi))) break;
    if (count_with_floor(diag, off, mid, pivmin) > j)
      hi = mid;
    else
      lo = mid;
  }
  value = 0.5 * (lo + hi);
  width = hi - lo;
}

Bracket checked_bracket(std::span<const double> diag, std::span<const double> off, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > diag.size())
    throw ConvergenceFailure("requested " + std::to_string(k) + " eigenvalues of a " +
                             std::to_string(diag.size()) + "-point problem");
  Bracket b = gershgorin(diag, off);
  if (!std::isfinite(b.lo) || !std::isfinite(b.hi))
    throw ConvergenceFailure("non-finite Gershgorin bracket; the operator has non-finite entries");
  // Open the bracket slightly so that count(lo) = 0 and count(hi) = n hold strictly.
  const double pad = 1e-10 * std::max({std::abs(b.lo), std::abs(b.hi), 1.0});
  b.lo -= pad;
  b.hi += pad;
  const double pivmin = pivot_floor(off);
  if (count_with_floor(diag, off, b.lo, pivmin) != 0 ||
      count_with_floor(diag, off, b.hi, pivmin) != static_cast<int>(diag.size()))
    throw ConvergenceFailure("Sturm counts at the Gershgorin ends are inconsistent");
  return b;
}

} // namespace

int sturm_count(std::span<const double> diag, std::span<const double> off, double shift) {
  if (diag.empty()) return 0;
  return count_with_floor(diag, off, shift, pivot_floor(off));
}

Bracket gershgorin(std::span<const double> diag, std::span<const double> off) {
  Bracket b{INFINITY, -INFINITY};
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(off[i - 1]);
    if (i + 1 < n) r += std::abs(off[i]);
    b.lo = std::min(b.lo, diag[i] - r);
    b.hi = std::max(b.hi, diag[i] + r);
  }
  return b;
}

Bisection bisect_serial(std::span<const double> diag, std::span<const double> off, int k,
                        double rtol) {
  const Bracket b = checked_bracket(diag, off, k);
  const double pivmin = pivot_floor(off);
  Bisection out{std::vector<double>(k), std::vector<double>(k)};
  for (int j = 0; j < k; ++j)
    bisect_one(diag, off, j, b, rtol, pivmin, out.eigenvalues[j], out.widths[j]);
  return out;
}

Bisection bisect_parallel(std::span<const double> diag, std::span<const double> off, int k,
                          double rtol) {
  const Bracket b = checked_bracket(diag, off, k);
  const double pivmin = pivot_floor(off);
  Bisection out{std::vector<double>(k), std::vector<double>(k)};
  double* values = out.eigenvalues.data();
  double* widths = out.widths.data();
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < k; ++j) bisect_one(diag, off, j, b, rtol, pivmin, values[j], widths[j]);
  return out;
}

namespace {
void evaluate_at(const SmoothFn& fn, double x, double& out, unsigned char& ok) {
  try {
    out = fn(x);
    ok = std::isfinite(out) ? 1 : 0;
  } catch (const Error&) {
    out = NAN;
    ok = 0;
  }
}
} // namespace

void evaluate_serial(const SmoothFn& fn, std::span<const double> x, std::span<double> out,
                     std::span<unsigned char> ok) {
  for (std::size_t i = 0; i < x.size(); ++i) evaluate_at(fn, x[i], out[i], ok[i]);
}

void evaluate_parallel(const SmoothFn& fn, std::span<const double> x, std::span<double> out,
                       std::span<unsigned char> ok) {
  const auto n = static_cast<long>(x.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) evaluate_at(fn, x[i], out[i], ok[i]);
}

} // namespace pdm::kernels
