#pragma once

#include <optional>
#include <vector>

#include "pdm/kernels.hpp"
#include "pdm/profiles.hpp"
#include "pdm/smoothfn.hpp"

namespace pdm {

/// Uniform grid with `n_points` interior nodes; h = (x_max - x_min)/(n_points + 1).
struct Grid1D {
  double x_min;
  double x_max;
  int n_points;

  /// Throws InvalidParam unless x_min < x_max and n_points >= 16.
  static Grid1D make(double x_min, double x_max, int n_points);

  [[nodiscard]] double h() const { return (x_max - x_min) / (n_points + 1); }
  /// Node i = 0 .. n_points + 1; 0 and n_points + 1 are the endpoints.
  [[nodiscard]] double node(int i) const { return x_min + i * h(); }
  /// Same interval, spacing halved: 2n + 1 interior points.
  [[nodiscard]] Grid1D halved() const { return {x_min, x_max, 2 * n_points + 1}; }
  friend bool operator==(const Grid1D&, const Grid1D&) = default;
};

/// Condition imposed at one end of the interval. Robin fixes the logarithmic
/// derivative phi'/phi there; the boundary node then becomes an unknown.
struct BoundaryCondition {
  enum class Kind { dirichlet, robin };
  Kind kind = Kind::dirichlet;
  double log_derivative = 0.0;

  static BoundaryCondition dirichlet() { return {}; }
  static BoundaryCondition robin(double log_derivative) { return {Kind::robin, log_derivative}; }
  friend bool operator==(const BoundaryCondition&, const BoundaryCondition&) = default;
};

enum class Side { left, right };

/// Robin condition matching exponential decay into the truncated region
/// where the stiffness potential tends to `asymptote`. Falls back to
/// Dirichlet when the asymptote is negative (oscillatory tail).
BoundaryCondition asymptotic_bc(double asymptote, double kinetic_mass, double hbar, Side side);

enum class Form {
  /// -(hbar^2 / 2 m0) phi'' + V phi = E phi
  constant_mass,
  /// -(hbar^2 / 2) phi'' + m U_eff phi = E m phi
  pdm_generalized,
};

/// stiffness v = lambda weight v with a symmetric tridiagonal stiffness and a
/// positive diagonal weight.
struct GeneralizedProblem {
  std::vector<double> diag;
  std::vector<double> off;  ///< shared by both sides, so symmetry is exact
  std::vector<double> weight;
  std::vector<double> nodes;  ///< positions of the unknowns
  Grid1D grid;
  BoundaryCondition left;
  BoundaryCondition right;

  [[nodiscard]] int size() const { return static_cast<int>(diag.size()); }
};

/// `potential` is V for the constant-mass form (mass must then be constant)
/// and U_eff for the generalized form. Throws SingularPotential when any node
/// value is non-finite or inadmissible.
GeneralizedProblem discretize(const SmoothFn& mass, const SmoothFn& potential, double hbar,
                              const Grid1D& grid, Form form,
                              BoundaryCondition left = BoundaryCondition::dirichlet(),
                              BoundaryCondition right = BoundaryCondition::dirichlet(),
                              kernels::Execution exec = kernels::Execution::parallel);

struct EigenResult {
  std::vector<double> eigenvalues;      ///< ascending
  std::vector<double> error_estimates;  ///< bisection width for a single solve
  std::vector<std::vector<double>> eigenvectors;  ///< phi at `nodes`, sum w phi^2 h = 1
  std::vector<double> residuals;
  Grid1D grid;
};

/// Lowest k eigenvalues via reduction by weight^-1/2 and Sturm bisection to
/// relative width 1e-12; eigenvectors by inverse iteration.
EigenResult lowest_eigenvalues(const GeneralizedProblem& gp, int k, bool want_vectors = false,
                               kernels::Execution exec = kernels::Execution::parallel);

/// Symmetric tridiagonal standard form W^-1/2 S W^-1/2.
struct ReducedProblem {
  std::vector<double> diag;
  std::vector<double> off;
};
ReducedProblem reduce(const GeneralizedProblem& gp);

/// Everything needed to rebuild the discrete problem on any grid of an interval.
struct DiscreteSpec {
  SmoothFn mass;
  SmoothFn potential;
  double hbar = 1.0;
  Form form = Form::pdm_generalized;
  Interval domain{0.0, 1.0};
  BoundaryCondition left;
  BoundaryCondition right;
};

struct LevelSolve {
  Grid1D grid;
  std::vector<double> eigenvalues;
};

/// Richardson summary over grids with n, 2n+1, 4n+3, ... interior points.
struct ConvergenceReport {
  std::vector<LevelSolve> levels;
  std::vector<double> extrapolated;
  std::vector<double> error_estimates;
  std::vector<double> observed_order;  ///< NaN with fewer than 3 levels or exact convergence
  std::vector<bool> trusted;           ///< order in [1.6, 2.4] (or converged to roundoff)
  std::vector<bool> not_converging;    ///< order < 1.0

  [[nodiscard]] bool all_trusted() const;
  [[nodiscard]] bool any_not_converging() const;
};

inline constexpr double kTrustedOrderLow = 1.6;
inline constexpr double kTrustedOrderHigh = 2.4;
inline constexpr double kMinimumOrder = 1.0;

/// Never throws on slow convergence; flags it instead.
ConvergenceReport refine_report(const DiscreteSpec& spec, int base_points, int levels, int k,
                                kernels::Execution exec = kernels::Execution::parallel);

/// As refine_report, but throws NotConverging when any observed order is below 1.
ConvergenceReport refine(const DiscreteSpec& spec, int base_points, int levels, int k,
                         kernels::Execution exec = kernels::Execution::parallel);

} // namespace pdm
