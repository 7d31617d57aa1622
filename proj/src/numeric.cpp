#include "pdm/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pdm/errors.hpp"

namespace pdm {

Grid1D Grid1D::make(double x_min, double x_max, int n_points) {
  if (!(x_min < x_max)) throw InvalidParam("grid needs x_min < x_max");
  if (n_points < 16) throw InvalidParam("grid needs at least 16 interior points");
  return {x_min, x_max, n_points};
}

BoundaryCondition asymptotic_bc(double asymptote, double kinetic_mass, double hbar, Side side) {
  if (!(asymptote >= 0.0)) return BoundaryCondition::dirichlet();
  const double kappa = std::sqrt(2.0 * kinetic_mass * asymptote) / hbar;
  return BoundaryCondition::robin(side == Side::left ? kappa : -kappa);
}

GeneralizedProblem discretize(const SmoothFn& mass, const SmoothFn& potential, double hbar,
                              const Grid1D& grid_in, Form form, BoundaryCondition left,
                              BoundaryCondition right, kernels::Execution exec) {
  const Grid1D grid = Grid1D::make(grid_in.x_min, grid_in.x_max, grid_in.n_points);
  const bool robin_left = left.kind == BoundaryCondition::Kind::robin;
  const bool robin_right = right.kind == BoundaryCondition::Kind::robin;
  const int first = robin_left ? 0 : 1;
  const int last = robin_right ? grid.n_points + 1 : grid.n_points;
  const int n = last - first + 1;
  const double h = grid.h();

  GeneralizedProblem gp{{}, {}, {}, std::vector<double>(n), grid, left, right};
  for (int i = 0; i < n; ++i) gp.nodes[i] = grid.node(first + i);

  std::vector<double> m(n), v(n);
  std::vector<unsigned char> ok_m(n), ok_v(n);
  kernels::evaluate(mass, gp.nodes, m, ok_m, exec);
  kernels::evaluate(potential, gp.nodes, v, ok_v, exec);
  for (int i = 0; i < n; ++i) {
    if (!ok_m[i] || !ok_v[i])
      throw SingularPotential("non-finite operator entry at x = " + std::to_string(gp.nodes[i]) +
                              "; singular problems need a grid that avoids the singularity");
    if (!(m[i] > 0.0))
      throw InvalidParam("mass must be positive, got " + std::to_string(m[i]) +
                         " at x = " + std::to_string(gp.nodes[i]));
  }

  double kinetic = 0.0;
  gp.diag.resize(n);
  gp.weight.resize(n);
  if (form == Form::constant_mass) {
    const double m0 = m[0];
    for (double mi : m)
      if (std::abs(mi - m0) > 1e-12 * std::abs(m0))
        throw InvalidParam("constant-mass form needs a constant mass profile");
    kinetic = hbar * hbar / (2.0 * m0);
    for (int i = 0; i < n; ++i) {
      gp.diag[i] = 2.0 * kinetic / (h * h) + v[i];
      gp.weight[i] = 1.0;
    }
  } else {
    kinetic = hbar * hbar / 2.0;
    for (int i = 0; i < n; ++i) {
      gp.diag[i] = 2.0 * kinetic / (h * h) + m[i] * v[i];
      gp.weight[i] = m[i];
    }
  }
  gp.off.assign(n - 1, -kinetic / (h * h));

  // Ghost-node elimination, then halving the boundary row keeps the matrix symmetric.
  if (robin_left) {
    gp.diag[0] = kinetic * (1.0 + h * left.log_derivative) / (h * h) +
                 0.5 * (gp.diag[0] - 2.0 * kinetic / (h * h));
    gp.weight[0] *= 0.5;
  }
  if (robin_right) {
    gp.diag[n - 1] = kinetic * (1.0 - h * right.log_derivative) / (h * h) +
                     0.5 * (gp.diag[n - 1] - 2.0 * kinetic / (h * h));
    gp.weight[n - 1] *= 0.5;
  }
  return gp;
}

ReducedProblem reduce(const GeneralizedProblem& gp) {
  const int n = gp.size();
  ReducedProblem r{std::vector<double>(n), std::vector<double>(std::max(n - 1, 0))};
  for (int i = 0; i < n; ++i) r.diag[i] = gp.diag[i] / gp.weight[i];
  for (int i = 0; i + 1 < n; ++i) r.off[i] = gp.off[i] / std::sqrt(gp.weight[i] * gp.weight[i + 1]);
  return r;
}

namespace {

/// Solves (T - shift I) y = b in place with a partially pivoted tridiagonal LU.
void shifted_tridiagonal_solve(const ReducedProblem& t, double shift, std::vector<double>& b) {
  const int n = static_cast<int>(t.diag.size());
  std::vector<double> d(n), du(n, 0.0), du2(n, 0.0), dl(n, 0.0);
  std::vector<char> swapped(n, 0);
  for (int i = 0; i < n; ++i) d[i] = t.diag[i] - shift;
  for (int i = 0; i + 1 < n; ++i) {
    du[i] = t.off[i];
    dl[i] = t.off[i];
  }
  const double tiny = 1e-300;
  for (int i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = tiny;
      const double f = dl[i] / d[i];
      dl[i] = f;
      d[i + 1] -= f * du[i];
    } else {
      const double f = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = f;
      const double tmp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = tmp - f * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du2[i];
      }
      swapped[i] = 1;
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = tiny;
  for (int i = 0; i + 1 < n; ++i) {
    if (swapped[i]) std::swap(b[i], b[i + 1]);
    b[i + 1] -= dl[i] * b[i];
  }
  b[n - 1] /= d[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  for (int i = n - 3; i >= 0; --i) b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
}

double norm2(const std::vector<double>& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

} // namespace

EigenResult lowest_eigenvalues(const GeneralizedProblem& gp, int k, bool want_vectors,
                               kernels::Execution exec) {
  const int n = gp.size();
  if (k < 1 || k > n / 4)
    throw InvalidParam("k must lie in [1, n/4] = [1, " + std::to_string(n / 4) + "]");
  for (double w : gp.weight)
    if (!(w > 0.0)) throw InvalidParam("weight must be strictly positive");

  const ReducedProblem t = reduce(gp);
  const kernels::Bisection bis = kernels::bisect(t.diag, t.off, k, 1e-12, exec);

  EigenResult out{bis.eigenvalues, bis.widths, {}, {}, gp.grid};
  for (int j = 0; j + 1 < k; ++j)
    if (!(out.eigenvalues[j] < out.eigenvalues[j + 1]))
      throw ConvergenceFailure("bisection returned non-ascending eigenvalues at index " +
                               std::to_string(j));
  if (!want_vectors) return out;

  const double h = gp.grid.h();
  for (int j = 0; j < k; ++j) {
    const double lambda = out.eigenvalues[j];
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) y[i] = 1.0 + 0.5 * std::sin(0.7 * i + 0.3 * j);
    for (int it = 0; it < 3; ++it) {
      shifted_tridiagonal_solve(t, lambda, y);
      const double nrm = norm2(y);
      if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw ConvergenceFailure("inverse iteration broke down for eigenvalue " +
                                 std::to_string(j));
      for (double& yi : y) yi /= nrm;
    }
    // Back to phi = W^-1/2 y, normalized as sum w phi^2 h = 1.
    std::vector<double> phi(n);
    for (int i = 0; i < n; ++i) phi[i] = y[i] / std::sqrt(gp.weight[i]);
    double mass_norm = 0.0;
    for (int i = 0; i < n; ++i) mass_norm += gp.weight[i] * phi[i] * phi[i] * h;
    const double scale = 1.0 / std::sqrt(mass_norm);
    // Fix the sign so the first significant entry is positive.
    const auto first = std::find_if(phi.begin(), phi.end(), [&](double v) {
      return std::abs(v) > 1e-8 * std::abs(*std::max_element(
                                      phi.begin(), phi.end(),
                                      [](double a, double b) { return std::abs(a) < std::abs(b); }));
    });
    const double sign = (first != phi.end() && *first < 0.0) ? -1.0 : 1.0;
    for (double& p : phi) p *= scale * sign;

    std::vector<double> r(n), s_phi(n), w_phi(n);
    for (int i = 0; i < n; ++i) {
      double sp = gp.diag[i] * phi[i];
      if (i > 0) sp += gp.off[i - 1] * phi[i - 1];
      if (i + 1 < n) sp += gp.off[i] * phi[i + 1];
      s_phi[i] = sp;
      w_phi[i] = gp.weight[i] * phi[i];
      r[i] = sp - lambda * w_phi[i];
    }
    const double rel = norm2(r) / (norm2(s_phi) + std::abs(lambda) * norm2(w_phi));
    if (!(rel <= 1e-8))
      throw ConvergenceFailure("eigenvector " + std::to_string(j) + " residual " +
                               std::to_string(rel) + " exceeds 1e-8");
    out.eigenvectors.push_back(std::move(phi));
    out.residuals.push_back(rel);
  }
  return out;
}

bool ConvergenceReport::all_trusted() const {
  return std::all_of(trusted.begin(), trusted.end(), [](bool b) { return b; });
}

bool ConvergenceReport::any_not_converging() const {
  return std::any_of(not_converging.begin(), not_converging.end(), [](bool b) { return b; });
}

ConvergenceReport refine_report(const DiscreteSpec& spec, int base_points, int levels, int k,
                                kernels::Execution exec) {
  if (levels < 2) throw InvalidParam("refinement needs at least 2 levels");
  ConvergenceReport rep;
  Grid1D grid = Grid1D::make(spec.domain.lo, spec.domain.hi, base_points);
  for (int l = 0; l < levels; ++l) {
    const GeneralizedProblem gp =
        discretize(spec.mass, spec.potential, spec.hbar, grid, spec.form, spec.left, spec.right,
                   exec);
    rep.levels.push_back({grid, lowest_eigenvalues(gp, k, false, exec).eigenvalues});
    grid = grid.halved();
  }

  const auto& fine = rep.levels[levels - 1].eigenvalues;
  const auto& mid = rep.levels[levels - 2].eigenvalues;
  for (int j = 0; j < k; ++j) {
    const double richardson = fine[j] + (fine[j] - mid[j]) / 3.0;
    double estimate = std::abs(fine[j] - mid[j]) / 3.0;
    double order = NAN;
    bool trusted = true;
    bool stalled = false;
    const double roundoff = 1e-12 * std::max(std::abs(fine[j]), 1e-300);
    if (levels >= 3) {
      const double coarse = rep.levels[levels - 3].eigenvalues[j];
      const double d1 = mid[j] - coarse;
      const double d2 = fine[j] - mid[j];
      const double previous = mid[j] + (mid[j] - coarse) / 3.0;
      estimate = std::abs(richardson - previous);
      if (std::abs(d1) > 1e3 * roundoff && std::abs(d2) > 10.0 * roundoff) {
        order = std::log2(std::abs(d1) / std::abs(d2));
        trusted = order >= kTrustedOrderLow && order <= kTrustedOrderHigh;
        stalled = order < kMinimumOrder;
      }
    }
    rep.extrapolated.push_back(richardson);
    rep.error_estimates.push_back(std::max(estimate, roundoff));
    rep.observed_order.push_back(order);
    rep.trusted.push_back(trusted);
    rep.not_converging.push_back(stalled);
  }
  return rep;
}

ConvergenceReport refine(const DiscreteSpec& spec, int base_points, int levels, int k,
                         kernels::Execution exec) {
  ConvergenceReport rep = refine_report(spec, base_points, levels, k, exec);
  for (int j = 0; j < k; ++j)
    if (rep.not_converging[j])
      throw NotConverging("eigenvalue " + std::to_string(j) + " converges with observed order " +
                          std::to_string(rep.observed_order[j]) +
                          " (< 1); check domain truncation or a singular potential");
  return rep;
}

} // namespace pdm
