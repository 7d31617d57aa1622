#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pdm/kernels.hpp"
#include "pdm/ordering.hpp"
#include "pdm/smoothfn.hpp"

/// Operator identities checked by applying ordered words of multiplication
/// and momentum operators to test functions with exact derivatives.
namespace pdm::opcheck {

using complex = std::complex<double>;

/// Multiplication by fn. `label` identifies the factor when checking that a
/// word list is closed under reversal (e.g. "m^-0.5").
struct MultiplyBy {
  SmoothFn fn;
  std::string label;
};
/// p = -i hbar d/dx.
struct Momentum {};

using Token = std::variant<MultiplyBy, Momentum>;

/// weight * (t_0 t_1 ... t_k), applied right to left. At most two momenta.
class OperatorWord {
public:
  /// Throws TooDeep with more than two Momentum tokens.
  explicit OperatorWord(std::vector<Token> tokens, complex weight = 1.0);

  [[nodiscard]] const std::vector<Token>& tokens() const { return tokens_; }
  [[nodiscard]] complex weight() const { return weight_; }
  [[nodiscard]] int momenta() const { return momenta_; }
  /// Tokens reversed, weight conjugated: the formal adjoint.
  [[nodiscard]] OperatorWord adjoint() const;
  /// Token labels joined with spaces, e.g. "m^0 p m^-1 p m^0".
  [[nodiscard]] std::string signature() const;

private:
  std::vector<Token> tokens_;
  complex weight_;
  int momenta_ = 0;
};

/// Complex test function re + i im; im defaults to zero.
struct TestFunction {
  std::string name;
  SmoothFn re;
  SmoothFn im;
};

complex apply_word(const OperatorWord& w, const SmoothFn& psi, double x, double hbar);
complex apply_word(const OperatorWord& w, const TestFunction& psi, double x, double hbar);

struct OrderedHamiltonian {
  std::vector<OperatorWord> words;
  double hbar = 1.0;

  [[nodiscard]] complex apply(const TestFunction& psi, double x) const;
  /// Sum of |word psi| over words: the scale residuals are measured against.
  [[nodiscard]] double magnitude(const TestFunction& psi, double x) const;
  /// Every word's adjoint occurs in the list with the same weight.
  [[nodiscard]] bool closed_under_adjoint() const;
};

/// m^s as a multiplication token, with label "m^s"; s = 0 gives the constant 1.
MultiplyBy mass_power(const SmoothFn& mass, double exponent);

/// 1/(4(a+1)) { a [m^-1 p^2 + p^2 m^-1] + m^alpha p m^beta p m^gamma + m^gamma p m^beta p m^alpha }.
OrderedHamiltonian build_four_term(const OrderingParams& ord, const SmoothFn& mass, double hbar);
/// (1/8) [m^-1 p^2 + p^2 m^-1 + 2 p m^-1 p].
OrderedHamiltonian build_weyl(const SmoothFn& mass, double hbar);
/// (1/4) [m^-1/2 p m^-1/2 p + p m^-1/2 p m^-1/2].
OrderedHamiltonian build_li_kuhn(const SmoothFn& mass, double hbar);

/// -(hbar^2/2m) psi'' + (hbar^2/2)(m'/m^2) psi' + U psi, with U from
/// ambiguity_potential.
complex canonical_form(const OrderingParams& ord, const SmoothFn& mass, const TestFunction& psi,
                       double x, double hbar);

/// The four-term Hamiltonian applied to the constant function 1: its
/// zeroth-order term, extracted without using the closed-form U.
double extracted_zeroth_order(const OrderingParams& ord, const SmoothFn& mass, double x,
                              double hbar);

/// max over (psi, x) of |H psi - canonical form| / local scale.
double canonical_form_residual(const OrderingParams& ord, const SmoothFn& mass,
                               std::span<const TestFunction> testfns,
                               std::span<const double> points, double hbar);

/// max over (psi, x) of |H_weyl psi - H_li_kuhn psi| / local scale.
double residual_weyl_lk(const SmoothFn& mass, std::span<const TestFunction> testfns,
                        std::span<const double> points, double hbar);

/// f^alpha p f^(1-alpha) psi at x, or its average with f^(1-alpha) p f^alpha.
/// Throws DomainError if f(x) <= 0.
complex linear_quantization(const SmoothFn& f, double alpha, const TestFunction& psi, double x,
                            double hbar, bool symmetrized);

/// kappa in  sym(alpha) psi = f p psi - i hbar kappa f' psi, measured at one
/// point from the alpha = 0 symmetrized action.
double measure_kappa(const SmoothFn& f, const TestFunction& psi, double x, double hbar);

/// The fixed, versioned test suite.
struct Suite {
  std::string version;
  std::vector<TestFunction> functions;
  std::vector<double> points;
};

/// "opcheck-suite/v1": three Gaussians, two polynomials, one damped cosine,
/// 20 evenly spaced points on [-1.5, 1.5].
const Suite& default_suite();

/// Named masses used by the identity checks.
struct NamedMass {
  std::string name;
  SmoothFn fn;
};
/// e^x, 1 + x^2, 2 + x + x^2/2.
std::vector<NamedMass> default_masses();

/// `count` ordering triples drawn uniformly from [lo, hi]^3 with a fixed
/// generator (mt19937_64 bits mapped directly, so draws match across
/// standard libraries). Triples with |a + 1| < 0.05 are redrawn.
std::vector<OrderingParams> random_orderings(int count, std::uint64_t seed, double lo = -1.5,
                                             double hi = 1.5);

/// Draws from the two ambiguity-free families, alternating (alpha = 0, a = gamma)
/// and (a = alpha, gamma = 0), with the free parameter uniform in [lo, hi].
std::vector<OrderingParams> ambiguity_free_orderings(int count, std::uint64_t seed,
                                                     double lo = -0.9, double hi = 3.0);

/// Largest canonical-form residual over orderings x masses x suite.
double canonical_sweep_serial(std::span<const OrderingParams> orderings,
                              std::span<const NamedMass> masses, const Suite& suite, double hbar);
double canonical_sweep_parallel(std::span<const OrderingParams> orderings,
                                std::span<const NamedMass> masses, const Suite& suite,
                                double hbar);
inline double canonical_sweep(std::span<const OrderingParams> orderings,
                              std::span<const NamedMass> masses, const Suite& suite, double hbar,
                              kernels::Execution exec) {
  return exec == kernels::Execution::parallel
             ? canonical_sweep_parallel(orderings, masses, suite, hbar)
             : canonical_sweep_serial(orderings, masses, suite, hbar);
}

/// Sesquilinear Hermiticity defect |<phi, H psi> - <H phi, psi>| / (|<phi, H psi>| + tiny)
/// by composite Simpson quadrature on [lo, hi] with `intervals` (even) panels.
double hermiticity_defect(const OrderedHamiltonian& h, const TestFunction& phi,
                          const TestFunction& psi, double lo, double hi, int intervals);

} // namespace pdm::opcheck
