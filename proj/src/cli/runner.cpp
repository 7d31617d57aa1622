#include "pdm/cli/runner.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "pdm/analytic.hpp"
#include "pdm/cli/audit.hpp"
#include "pdm/errors.hpp"
#include "pdm/opcheck.hpp"

namespace pdm::cli {

using nlohmann::json;

namespace {

std::string yes_no(bool b) { return b ? "true" : "false"; }

json complex_json(std::complex<double> z) { return {json_number(z.real()), json_number(z.imag())}; }

json ordering_json(const OrderingParams& o) {
  return {{"a", o.a()}, {"alpha", o.alpha()}, {"beta", o.beta()}, {"gamma", o.gamma()}};
}

json bc_json(const BoundaryCondition& bc) {
  if (bc.kind == BoundaryCondition::Kind::dirichlet) return {{"kind", "dirichlet"}};
  return {{"kind", "robin"}, {"log_derivative", bc.log_derivative}};
}

json formula_json(const SpectrumFormula& f) {
  json levels = json::array();
  for (double e : f.levels) levels.push_back(e);
  return {{"nu", complex_json(f.nu)},
          {"classification", to_string(f.classification)},
          {"provenance", to_string(f.provenance)},
          {"levels", levels}};
}

/// Closed forms for the scenario's problem, when it has them.
std::optional<SpectrumVariants> analytic_for(const Scenario& s, int n_max) {
  const OrderingParams ord = s.ordering.params();
  if (s.problem.kind == ProblemKind::example1)
    return example1_spectrum(s.problem.ex1.m0, s.problem.ex1.c, s.problem.ex1.V0, ord, s.hbar,
                             n_max);
  if (s.problem.kind == ProblemKind::example2)
    return example2_spectrum(s.problem.ex2.cmass, s.problem.ex2.A, s.problem.ex2.B, ord, s.hbar,
                             n_max);
  return std::nullopt;
}

double level_or_nan(const SpectrumFormula& f, int n) {
  return n < static_cast<int>(f.levels.size()) ? f.levels[n] : NAN;
}

json problem_json(const SpectralProblem& p) {
  return {{"mass", p.mass.describe()},
          {"potential", p.potential.describe()},
          {"ordering", ordering_json(p.ordering)},
          {"domain", {p.domain.lo, p.domain.hi}},
          {"left", bc_json(p.left)},
          {"right", bc_json(p.right)},
          {"hbar", p.hbar}};
}

json convergence_json(const ConvergenceReport& r) {
  json levels = json::array();
  for (std::size_t j = 0; j < r.extrapolated.size(); ++j)
    levels.push_back({{"n", j},
                      {"eigenvalue", r.extrapolated[j]},
                      {"error_estimate", r.error_estimates[j]},
                      {"observed_order", json_number(r.observed_order[j])},
                      {"trusted", static_cast<bool>(r.trusted[j])},
                      {"not_converging", static_cast<bool>(r.not_converging[j])}});
  json grids = json::array();
  for (const LevelSolve& l : r.levels)
    grids.push_back({{"points", l.grid.n_points}, {"h", l.grid.h()}, {"eigenvalues", l.eigenvalues}});
  return {{"levels", levels}, {"grids", grids}};
}

CommandResult spectrum(const Scenario& s) {
  const SpectralProblem p = build_problem(s);
  const ConvergenceReport r = refine(p.discrete_spec(), s.grid.points, s.grid.levels, s.k);
  const auto analytic = analytic_for(s, s.k - 1);

  CommandResult out;
  out.csv.header = {"n", "eigenvalue", "error_estimate", "order", "trusted", "analytic_paper",
                    "analytic_derived"};
  for (int j = 0; j < s.k; ++j)
    out.csv.rows.push_back(
        {std::to_string(j), format_number(r.extrapolated[j]), format_number(r.error_estimates[j]),
         format_number(r.observed_order[j]), yes_no(r.trusted[j]),
         format_number(analytic ? level_or_nan(analytic->paper, j) : NAN),
         format_number(analytic ? level_or_nan(analytic->derived, j) : NAN)});

  out.report = report_header(s);
  out.report["problem"] = problem_json(p);
  out.report["numeric"] = convergence_json(r);
  if (analytic)
    out.report["analytic"] = {{"paper", formula_json(analytic->paper)},
                              {"derived", formula_json(analytic->derived)}};
  const DomainProbe probe = probe_domain(p, s.grid.points);
  out.report["domain_probe"] = {{"base", {probe.base.lo, probe.base.hi}},
                                {"enlarged", {probe.enlarged.lo, probe.enlarged.hi}},
                                {"e0_base", probe.e0_base},
                                {"e0_enlarged", probe.e0_enlarged},
                                {"relative_shift", probe.relative_shift},
                                {"stable", probe.stable}};
  return out;
}

CommandResult convergence(const Scenario& s) {
  const SpectralProblem p = build_problem(s);
  const ConvergenceReport r = refine_report(p.discrete_spec(), s.grid.points, s.grid.levels, s.k);
  CommandResult out;
  out.csv.header = {"level", "points", "h", "n", "eigenvalue"};
  for (std::size_t l = 0; l < r.levels.size(); ++l)
    for (int j = 0; j < s.k; ++j)
      out.csv.rows.push_back({std::to_string(l), std::to_string(r.levels[l].grid.n_points),
                              format_number(r.levels[l].grid.h()), std::to_string(j),
                              format_number(r.levels[l].eigenvalues[j])});
  out.report = report_header(s);
  out.report["problem"] = problem_json(p);
  out.report["numeric"] = convergence_json(r);
  out.report["all_trusted"] = r.all_trusted();
  out.report["any_not_converging"] = r.any_not_converging();
  if (r.any_not_converging()) out.exit_code = kSolverFailure;
  return out;
}

struct IdentityCheck {
  std::string name;
  double value;
  double threshold;
  [[nodiscard]] bool pass() const { return std::isfinite(value) && value <= threshold; }
};

CommandResult identities(const Scenario& s) {
  using namespace opcheck;
  const Suite& suite = default_suite();
  const auto masses = default_masses();
  std::vector<IdentityCheck> checks;

  for (const NamedMass& m : masses)
    checks.push_back({"residual_weyl_lk[" + m.name + "]",
                      residual_weyl_lk(m.fn, suite.functions, suite.points, s.hbar), 1e-11});

  for (const NamedMass& m : masses) {
    double worst = 0.0;
    const OrderingParams weyl = catalog(OrderingName::weyl);
    const OrderingParams lk = catalog(OrderingName::li_kuhn);
    const SmoothFn a = effective_potential(weyl, m.fn, SmoothFn(), s.hbar);
    const SmoothFn b = effective_potential(lk, m.fn, SmoothFn(), s.hbar);
    for (double x : suite.points)
      worst = std::max(worst, std::abs(a(x) - b(x)) / std::max(std::abs(a(x)), 1e-300));
    checks.push_back({"effective_potential_weyl_vs_lk[" + m.name + "]", worst, 1e-12});
  }

  std::vector<OrderingParams> catalog_ords;
  for (auto n : kCatalog) catalog_ords.push_back(catalog(n));
  checks.push_back({"canonical_form_residual[catalog]",
                    canonical_sweep_parallel(catalog_ords, masses, suite, s.hbar), 1e-11});
  const auto random = random_orderings(20, 20240611);
  checks.push_back({"canonical_form_residual[20 random]",
                    canonical_sweep_parallel(random, masses, suite, s.hbar), 1e-11});

  // Symmetrized linear quantization: spread over alpha at each point.
  const SmoothFn f = SmoothFn::polynomial({1.0, 0.0, 1.0});
  double spread = 0.0;
  for (const TestFunction& psi : suite.functions)
    for (int i = 0; i < 10; ++i) {
      const double x = suite.points[2 * i];
      const complex ref = linear_quantization(f, -2.0, psi, x, s.hbar, true);
      for (double alpha : {-1.0, 0.0, 0.3, 1.0, 3.0}) {
        const complex v = linear_quantization(f, alpha, psi, x, s.hbar, true);
        spread = std::max(spread, std::abs(v - ref) / std::max(std::abs(ref), 1e-300));
      }
    }
  checks.push_back({"symmetrized_linear_alpha_spread", spread, 1e-13});

  double free_worst = 0.0;
  for (const OrderingParams& o : ambiguity_free_orderings(20, 7))
    for (const NamedMass& m : masses) {
      const SmoothFn U = ambiguity_potential(o, m.fn, s.hbar);
      for (double x : suite.points) free_worst = std::max(free_worst, std::abs(U(x)) / (s.hbar * s.hbar));
    }
  checks.push_back({"ambiguity_free_potential", free_worst, 1e-12});

  double herm = 0.0;
  for (const NamedMass& m : {masses[1], masses[2]})
    for (const OrderingParams& o : catalog_ords) {
      const OrderedHamiltonian h = build_four_term(o, m.fn, s.hbar);
      herm = std::max(herm, hermiticity_defect(h, suite.functions[0], suite.functions[2], -12.0,
                                               12.0, 4000));
    }
  checks.push_back({"hermiticity_defect", herm, 1e-9});

  double kappa_lo = HUGE_VAL;
  double kappa_hi = -HUGE_VAL;
  for (const TestFunction& psi : suite.functions)
    for (double x : suite.points) {
      if (std::abs(psi.re(x) * f.eval_jet(x).v1) < 1e-3) continue;
      const double k = measure_kappa(f, psi, x, s.hbar);
      kappa_lo = std::min(kappa_lo, k);
      kappa_hi = std::max(kappa_hi, k);
    }

  CommandResult out;
  out.csv.header = {"identity", "max_residual", "threshold", "pass"};
  json list = json::array();
  bool all = true;
  for (const IdentityCheck& c : checks) {
    out.csv.rows.push_back(
        {c.name, format_number(c.value), format_number(c.threshold), yes_no(c.pass())});
    list.push_back({{"identity", c.name},
                    {"max_residual", json_number(c.value)},
                    {"threshold", c.threshold},
                    {"pass", c.pass()}});
    all = all && c.pass();
  }
  json functions = json::array();
  for (const TestFunction& t : suite.functions) functions.push_back(t.name);
  json mass_names = json::array();
  for (const NamedMass& m : masses) mass_names.push_back(m.name);

  out.report = report_header(s);
  out.report["suite"] = {{"version", suite.version},
                         {"functions", functions},
                         {"points", suite.points},
                         {"masses", mass_names}};
  out.report["identities"] = list;
  out.report["kappa"] = {{"min", kappa_lo}, {"max", kappa_hi}, {"f", "1+x^2"}};
  out.report["all_pass"] = all;
  if (!all) out.exit_code = kIdentityFailure;
  return out;
}

CommandResult audit(const Scenario& s) {
  CommandResult out;
  out.report = report_header(s);
  out.csv.header = {"n",           "analytic_paper", "analytic_derived", "numeric",
                    "numeric_error", "delta_paper",  "delta_derived",    "paper_agrees",
                    "derived_agrees"};

  const SpectralProblem p = build_problem(s);
  const ConvergenceReport r = refine_report(p.discrete_spec(), s.grid.points, s.grid.levels, s.k);
  const auto analytic = analytic_for(s, s.k - 1);
  json rows = json::array();
  for (int j = 0; j < s.k; ++j) {
    const double num = r.extrapolated[j];
    const double err = r.error_estimates[j];
    const double paper = analytic ? level_or_nan(analytic->paper, j) : NAN;
    const double derived = analytic ? level_or_nan(analytic->derived, j) : NAN;
    // Agreement: within ten error estimates plus a relative floor of 1e-6.
    auto agrees = [&](double a) {
      return std::isfinite(a) && std::abs(a - num) <= 10.0 * err + 1e-6 * std::abs(num);
    };
    out.csv.rows.push_back({std::to_string(j), format_number(paper), format_number(derived),
                            format_number(num), format_number(err),
                            format_number(std::abs(paper - num)),
                            format_number(std::abs(derived - num)), yes_no(agrees(paper)),
                            yes_no(agrees(derived))});
    rows.push_back({{"n", j},
                    {"analytic_paper", json_number(paper)},
                    {"analytic_derived", json_number(derived)},
                    {"numeric", num},
                    {"numeric_error", err},
                    {"observed_order", json_number(r.observed_order[j])},
                    {"paper_agrees", agrees(paper)},
                    {"derived_agrees", agrees(derived)}});
  }
  out.report["problem"] = problem_json(p);
  out.report["rows"] = rows;
  if (analytic)
    out.report["analytic"] = {{"paper", formula_json(analytic->paper)},
                              {"derived", formula_json(analytic->derived)},
                              {"nu_without_radical", json_number(analytic->nu_without_radical)}};
  out.report["any_not_converging"] = r.any_not_converging();

  json discrepancies = json::array();
  for (const Discrepancy& d : adjudicate(s)) discrepancies.push_back(to_json(d));
  out.report["discrepancies"] = discrepancies;

  using namespace opcheck;
  const Suite& suite = default_suite();
  const auto masses = default_masses();
  json residuals = json::object();
  double wlk = 0.0;
  for (const NamedMass& m : masses)
    wlk = std::max(wlk, residual_weyl_lk(m.fn, suite.functions, suite.points, s.hbar));
  residuals["residual_weyl_lk"] = wlk;
  residuals["canonical_form_residual"] =
      canonical_sweep_parallel(random_orderings(20, 20240611), masses, suite, s.hbar);
  residuals["suite"] = suite.version;
  out.report["identity_residuals"] = residuals;
  return out;
}

struct SweepRow {
  std::string label;
  OrderingParams ord{0.0, 0.0, 0.0};
  std::vector<std::string> cells;
};

CommandResult sweep(const Scenario& s) {
  std::vector<SweepRow> rows;
  for (int i = 0; i < s.sweep.a.count; ++i)
    for (int j = 0; j < s.sweep.alpha.count; ++j)
      for (int k = 0; k < s.sweep.gamma.count; ++k) {
        const double a = s.sweep.a.at(i);
        if (std::abs(a + 1.0) < 1e-12) continue;
        rows.push_back({"grid", OrderingParams(a, s.sweep.alpha.at(j), s.sweep.gamma.at(k)), {}});
      }
  if (s.sweep.include_catalog)
    for (auto n : kCatalog) rows.push_back({std::string(to_string(n)), catalog(n), {}});

  const Example1& e1 = s.problem.ex1;
  const Example2& e2 = s.problem.ex2;
  const SmoothFn mass1 = e1.m0 * SmoothFn::exponential(e1.c);
  const long count = static_cast<long>(rows.size());
#pragma omp parallel for schedule(dynamic)
  for (long r = 0; r < count; ++r) {
    SweepRow& row = rows[r];
    const OrderingParams& o = row.ord;
    std::vector<std::string>& c = row.cells;
    c = {row.label, format_number(o.a()), format_number(o.alpha()), format_number(o.beta()),
         format_number(o.gamma())};
    std::string status = "ok";
    try {
      const SmoothFn U = ambiguity_potential(o, mass1, s.hbar);
      double unorm = 0.0;
      for (int t = 0; t <= 20; ++t) unorm = std::max(unorm, std::abs(U(-1.0 + 0.1 * t)));
      c.push_back(yes_no(is_ambiguity_free(o)));
      c.push_back(format_number(unorm));
      c.push_back(format_number(q_coefficient(o, e1.c)));
      c.push_back(format_number(g_coefficient(o, s.hbar)));
      const SpectrumVariants v1 = example1_spectrum(e1.m0, e1.c, e1.V0, o, s.hbar, 0);
      const SpectrumVariants v2 = example2_spectrum(e2.cmass, e2.A, e2.B, o, s.hbar, 0);
      for (const SpectrumFormula* f : {&v1.paper, &v1.derived, &v2.paper, &v2.derived}) {
        c.push_back(format_number(f->nu.real()));
        c.push_back(format_number(f->nu.imag()));
        c.push_back(std::string(to_string(f->classification)));
      }
      double e0 = NAN;
      double shift = NAN;
      std::string stable;
      if (s.sweep.numeric) {
        const SpectralProblem p = example1_problem(e1, o, s.hbar, 1);
        const ConvergenceReport rep =
            refine_report(p.discrete_spec(), s.grid.points, s.grid.levels, 1,
                          kernels::Execution::serial);
        e0 = rep.extrapolated[0];
        const DomainProbe probe = probe_domain(p, s.grid.points);
        shift = probe.relative_shift;
        stable = yes_no(probe.stable);
        // A ground state that moves with the truncation is not a bound state.
        if (!probe.stable)
          status = "unbounded-below";
        else if (rep.any_not_converging())
          status = "not-converging";
      }
      c.push_back(format_number(e0));
      c.push_back(format_number(shift));
      c.push_back(stable);
    } catch (const std::exception& e) {
      status = std::string("failed: ") + e.what();
    }
    c.resize(24);
    c.push_back(status);
  }

  CommandResult out;
  out.csv.header = {"label",
                    "a",
                    "alpha",
                    "beta",
                    "gamma",
                    "ambiguity_free",
                    "u_norm",
                    "q",
                    "g",
                    "ex1_nu_paper_re",
                    "ex1_nu_paper_im",
                    "ex1_class_paper",
                    "ex1_nu_derived_re",
                    "ex1_nu_derived_im",
                    "ex1_class_derived",
                    "ex2_nu_paper_re",
                    "ex2_nu_paper_im",
                    "ex2_class_paper",
                    "ex2_nu_derived_re",
                    "ex2_nu_derived_im",
                    "ex2_class_derived",
                    "ex1_numeric_e0",
                    "ex1_domain_shift",
                    "ex1_domain_stable",
                    "status"};
  int failures = 0;
  for (SweepRow& r : rows) {
    if (r.cells.back() != "ok") ++failures;
    out.csv.rows.push_back(std::move(r.cells));
  }
  out.report = report_header(s);
  out.report["rows"] = static_cast<int>(out.csv.rows.size());
  out.report["rows_not_ok"] = failures;
  out.report["columns"] = out.csv.header;
  return out;
}

} // namespace

json report_header(const Scenario& s) {
  const json scenario = to_json(s);
  return {{"tool", "pdm-spectra"},
          {"version", kToolVersion},
          {"schema", kSchema},
          {"scenario_hash", "fnv1a64:" + fnv1a64(scenario.dump())},
          {"scenario", scenario},
          {"command", to_string(s.command)}};
}

CommandResult execute(const Scenario& s) {
  switch (s.command) {
  case Command::spectrum: return spectrum(s);
  case Command::convergence: return convergence(s);
  case Command::identities: return identities(s);
  case Command::audit: return audit(s);
  case Command::sweep: return sweep(s);
  }
  throw SchemaError("unhandled command");
}

int run_file(const std::filesystem::path& scenario_path,
             const std::filesystem::path* prefix_override, bool quiet, std::ostream& out,
             std::ostream& err) {
  try {
    const Scenario s = load_scenario(scenario_path);
    const CommandResult result = execute(s);
    const std::filesystem::path prefix = prefix_override ? *prefix_override : std::filesystem::path(s.output);
    write_outputs(prefix, result.csv, result.report);
    if (!quiet) {
      out << fmt::format("{}: {} -> {}.csv, {}.json\n", s.name, to_string(s.command),
                         prefix.string(), prefix.string());
      if (result.exit_code == kIdentityFailure)
        err << "pdm-spectra: one or more identities exceeded their threshold\n";
      if (result.report.contains("domain_probe") && !result.report["domain_probe"]["stable"].get<bool>())
        err << "pdm-spectra: warning: the ground state moves with the domain; the spectrum is not "
               "bounded below for this ordering\n";
      if (result.exit_code == kSolverFailure)
        err << "pdm-spectra: refinement flagged a non-converging eigenvalue\n";
    }
    return result.exit_code;
  } catch (const SchemaError& e) {
    err << "pdm-spectra: schema error: " << e.what() << '\n';
    return kSchemaError;
  } catch (const ConvergenceFailure& e) {
    err << "pdm-spectra: solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const NotConverging& e) {
    err << "pdm-spectra: not converging: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const Error& e) {
    err << "pdm-spectra: invalid input: " << e.what() << '\n';
    return kSchemaError;
  }
}

} // namespace pdm::cli
