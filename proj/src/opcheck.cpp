#include "pdm/opcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <utility>

#include "pdm/errors.hpp"

namespace pdm::opcheck {

namespace {

const complex kI{0.0, 1.0};

std::string power_label(const char* base, double exponent) {
  std::ostringstream os;
  os << base << '^' << exponent;
  return os.str();
}

ComplexJet3 jet_of(const TestFunction& psi, double x) {
  const Jet3 re = psi.re.eval_jet(x);
  const Jet3 im = psi.im.eval_jet(x);
  return {complex(re.v0, im.v0), complex(re.v1, im.v1), complex(re.v2, im.v2),
          complex(re.v3, im.v3)};
}

complex apply_to_jet(const OperatorWord& w, ComplexJet3 acc, double x, double hbar) {
  const auto& tokens = w.tokens();
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    if (const auto* m = std::get_if<MultiplyBy>(&*it))
      acc = to_complex(m->fn.eval_jet(x)) * acc;
    else
      acc = (-kI * hbar) * acc.differentiated();
  }
  return w.weight() * acc.v0;
}

TestFunction real_function(std::string name, SmoothFn fn) {
  return {std::move(name), std::move(fn), SmoothFn()};
}

} // namespace

OperatorWord::OperatorWord(std::vector<Token> tokens, complex weight)
    : tokens_(std::move(tokens)), weight_(weight) {
  momenta_ = static_cast<int>(std::count_if(tokens_.begin(), tokens_.end(), [](const Token& t) {
    return std::holds_alternative<Momentum>(t);
  }));
  if (momenta_ > 2)
    throw TooDeep("operator word has " + std::to_string(momenta_) +
                  " momentum factors; third-order jets resolve at most 2");
}

OperatorWord OperatorWord::adjoint() const {
  return OperatorWord({tokens_.rbegin(), tokens_.rend()}, std::conj(weight_));
}

std::string OperatorWord::signature() const {
  std::string out;
  for (const Token& t : tokens_) {
    if (!out.empty()) out += ' ';
    if (const auto* m = std::get_if<MultiplyBy>(&t))
      out += m->label;
    else
      out += 'p';
  }
  return out;
}

complex apply_word(const OperatorWord& w, const SmoothFn& psi, double x, double hbar) {
  return apply_to_jet(w, to_complex(psi.eval_jet(x)), x, hbar);
}

complex apply_word(const OperatorWord& w, const TestFunction& psi, double x, double hbar) {
  return apply_to_jet(w, jet_of(psi, x), x, hbar);
}

complex OrderedHamiltonian::apply(const TestFunction& psi, double x) const {
  const ComplexJet3 j = jet_of(psi, x);
  complex sum = 0.0;
  for (const OperatorWord& w : words) sum += apply_to_jet(w, j, x, hbar);
  return sum;
}

double OrderedHamiltonian::magnitude(const TestFunction& psi, double x) const {
  const ComplexJet3 j = jet_of(psi, x);
  double sum = 0.0;
  for (const OperatorWord& w : words) sum += std::abs(apply_to_jet(w, j, x, hbar));
  return sum;
}

bool OrderedHamiltonian::closed_under_adjoint() const {
  for (const OperatorWord& w : words) {
    const OperatorWord adj = w.adjoint();
    const std::string sig = adj.signature();
    const bool found = std::any_of(words.begin(), words.end(), [&](const OperatorWord& o) {
      return o.signature() == sig && std::abs(o.weight() - adj.weight()) <= 1e-15 * std::abs(adj.weight());
    });
    if (!found) return false;
  }
  return true;
}

MultiplyBy mass_power(const SmoothFn& mass, double exponent) {
  if (exponent == 0.0) return {SmoothFn::constant(1.0), "m^0"};
  if (exponent == 1.0) return {mass, "m^1"};
  if (exponent == -1.0) return {mass.recip(), "m^-1"};
  return {mass.pow(exponent), power_label("m", exponent)};
}

OrderedHamiltonian build_four_term(const OrderingParams& ord, const SmoothFn& mass, double hbar) {
  const double norm = 1.0 / (4.0 * (ord.a() + 1.0));
  const MultiplyBy inv = mass_power(mass, -1.0);
  const MultiplyBy ma = mass_power(mass, ord.alpha());
  const MultiplyBy mb = mass_power(mass, ord.beta());
  const MultiplyBy mg = mass_power(mass, ord.gamma());
  OrderedHamiltonian h{{}, hbar};
  if (ord.a() != 0.0) {
    h.words.emplace_back(std::vector<Token>{inv, Momentum{}, Momentum{}}, ord.a() * norm);
    h.words.emplace_back(std::vector<Token>{Momentum{}, Momentum{}, inv}, ord.a() * norm);
  }
  h.words.emplace_back(std::vector<Token>{ma, Momentum{}, mb, Momentum{}, mg}, norm);
  h.words.emplace_back(std::vector<Token>{mg, Momentum{}, mb, Momentum{}, ma}, norm);
  return h;
}

OrderedHamiltonian build_weyl(const SmoothFn& mass, double hbar) {
  const MultiplyBy inv = mass_power(mass, -1.0);
  OrderedHamiltonian h{{}, hbar};
  h.words.emplace_back(std::vector<Token>{inv, Momentum{}, Momentum{}}, 0.125);
  h.words.emplace_back(std::vector<Token>{Momentum{}, Momentum{}, inv}, 0.125);
  h.words.emplace_back(std::vector<Token>{Momentum{}, inv, Momentum{}}, 0.25);
  return h;
}

OrderedHamiltonian build_li_kuhn(const SmoothFn& mass, double hbar) {
  const MultiplyBy half = mass_power(mass, -0.5);
  OrderedHamiltonian h{{}, hbar};
  h.words.emplace_back(std::vector<Token>{half, Momentum{}, half, Momentum{}}, 0.25);
  h.words.emplace_back(std::vector<Token>{Momentum{}, half, Momentum{}, half}, 0.25);
  return h;
}

namespace {

struct CanonicalTerms {
  complex value;
  double scale;
};

CanonicalTerms canonical_terms(const SmoothFn& mass, const SmoothFn& potential,
                               const TestFunction& psi, double x,
                               double hbar) {
  const Jet3 m = mass.eval_jet(x);
  const ComplexJet3 j = jet_of(psi, x);
  const complex t2 = -(hbar * hbar / (2.0 * m.v0)) * j.v2;
  const complex t1 = (hbar * hbar / 2.0) * (m.v1 / (m.v0 * m.v0)) * j.v1;
  const complex t0 = potential(x) * j.v0;
  return {t2 + t1 + t0, std::abs(t2) + std::abs(t1) + std::abs(t0)};
}

} // namespace

complex canonical_form(const OrderingParams& ord, const SmoothFn& mass, const TestFunction& psi,
                       double x, double hbar) {
  return canonical_terms(mass, ambiguity_potential(ord, mass, hbar), psi, x, hbar).value;
}

double extracted_zeroth_order(const OrderingParams& ord, const SmoothFn& mass, double x,
                              double hbar) {
  const OrderedHamiltonian h = build_four_term(ord, mass, hbar);
  return h.apply(real_function("one", SmoothFn::constant(1.0)), x).real();
}

double canonical_form_residual(const OrderingParams& ord, const SmoothFn& mass,
                               std::span<const TestFunction> testfns,
                               std::span<const double> points, double hbar) {
  const OrderedHamiltonian h = build_four_term(ord, mass, hbar);
  const SmoothFn U = ambiguity_potential(ord, mass, hbar);
  double worst = 0.0;
  for (const TestFunction& psi : testfns)
    for (double x : points) {
      const CanonicalTerms c = canonical_terms(mass, U, psi, x, hbar);
      const double scale = std::max(h.magnitude(psi, x), c.scale);
      if (scale == 0.0) continue;
      worst = std::max(worst, std::abs(h.apply(psi, x) - c.value) / scale);
    }
  return worst;
}

double residual_weyl_lk(const SmoothFn& mass, std::span<const TestFunction> testfns,
                        std::span<const double> points, double hbar) {
  const OrderedHamiltonian weyl = build_weyl(mass, hbar);
  const OrderedHamiltonian lk = build_li_kuhn(mass, hbar);
  double worst = 0.0;
  for (const TestFunction& psi : testfns)
    for (double x : points) {
      const double scale = std::max(weyl.magnitude(psi, x), lk.magnitude(psi, x));
      if (scale == 0.0) continue;
      worst = std::max(worst, std::abs(weyl.apply(psi, x) - lk.apply(psi, x)) / scale);
    }
  return worst;
}

complex linear_quantization(const SmoothFn& f, double alpha, const TestFunction& psi, double x,
                            double hbar, bool symmetrized) {
  if (!(f(x) > 0.0))
    throw DomainError("linear quantization needs f(x) > 0 at x = " + std::to_string(x));
  const double beta = 1.0 - alpha;
  auto power = [&](double s) -> MultiplyBy {
    return {s == 0.0 ? SmoothFn::constant(1.0) : f.pow(s), power_label("f", s)};
  };
  const OperatorWord forward({power(alpha), Momentum{}, power(beta)});
  if (!symmetrized) return apply_word(forward, psi, x, hbar);
  const OperatorWord backward({power(beta), Momentum{}, power(alpha)});
  return 0.5 * (apply_word(forward, psi, x, hbar) + apply_word(backward, psi, x, hbar));
}

double measure_kappa(const SmoothFn& f, const TestFunction& psi, double x, double hbar) {
  const ComplexJet3 j = jet_of(psi, x);
  const Jet3 fj = f.eval_jet(x);
  const complex p_psi = -kI * hbar * j.v1;
  const complex sym = linear_quantization(f, 0.0, psi, x, hbar, true);
  const complex denominator = kI * hbar * fj.v1 * j.v0;
  if (std::abs(denominator) == 0.0)
    throw InvalidParam("kappa is unmeasurable where f' psi vanishes");
  return ((fj.v0 * p_psi - sym) / denominator).real();
}

const Suite& default_suite() {
  static const Suite suite = [] {
    Suite s;
    s.version = "opcheck-suite/v1";
    s.functions.push_back(real_function("gauss(0,1)", SmoothFn::gaussian(0.0, 1.0)));
    s.functions.push_back(real_function("gauss(0.5,0.7)", SmoothFn::gaussian(0.5, 0.7)));
    s.functions.push_back(real_function("gauss(-0.8,1.3)", SmoothFn::gaussian(-0.8, 1.3)));
    s.functions.push_back(
        real_function("poly(1,1,-0.5,0.2)", SmoothFn::polynomial({1.0, 1.0, -0.5, 0.2})));
    s.functions.push_back(real_function("poly(0,-2,0,1)", SmoothFn::polynomial({0.0, -2.0, 0.0, 1.0})));
    s.functions.push_back(real_function("gauss(0,2)*cos(3x+0.4)",
                                        SmoothFn::gaussian(0.0, 2.0) * SmoothFn::cosine(3.0, 0.4)));
    for (int i = 0; i < 20; ++i) s.points.push_back(-1.5 + 3.0 * (i + 0.5) / 20.0);
    return s;
  }();
  return suite;
}

std::vector<NamedMass> default_masses() {
  return {{"exp(x)", SmoothFn::exponential(1.0)},
          {"1+x^2", SmoothFn::polynomial({1.0, 0.0, 1.0})},
          {"2+x+x^2/2", SmoothFn::polynomial({2.0, 1.0, 0.5})}};
}

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

std::vector<OrderingParams> random_orderings(int count, std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 rng(seed);
  std::vector<OrderingParams> out;
  while (static_cast<int>(out.size()) < count) {
    const double a = uniform(rng, lo, hi);
    const double alpha = uniform(rng, lo, hi);
    const double gamma = uniform(rng, lo, hi);
    if (std::abs(a + 1.0) < 0.05) continue;
    out.emplace_back(a, alpha, gamma);
  }
  return out;
}

std::vector<OrderingParams> ambiguity_free_orderings(int count, std::uint64_t seed, double lo,
                                                     double hi) {
  std::mt19937_64 rng(seed);
  std::vector<OrderingParams> out;
  while (static_cast<int>(out.size()) < count) {
    const double t = uniform(rng, lo, hi);
    if (std::abs(t + 1.0) < 0.05) continue;
    if (out.size() % 2 == 0)
      out.emplace_back(t, 0.0, t);
    else
      out.emplace_back(t, t, 0.0);
  }
  return out;
}

double canonical_sweep_serial(std::span<const OrderingParams> orderings,
                              std::span<const NamedMass> masses, const Suite& suite, double hbar) {
  double worst = 0.0;
  for (const OrderingParams& ord : orderings)
    for (const NamedMass& m : masses)
      worst = std::max(worst,
                       canonical_form_residual(ord, m.fn, suite.functions, suite.points, hbar));
  return worst;
}

double canonical_sweep_parallel(std::span<const OrderingParams> orderings,
                                std::span<const NamedMass> masses, const Suite& suite,
                                double hbar) {
  const long cells = static_cast<long>(orderings.size() * masses.size());
  double worst = 0.0;
  bool failed = false;
  std::string message;
#pragma omp parallel for schedule(dynamic) reduction(max : worst)
  for (long c = 0; c < cells; ++c) {
    const auto& ord = orderings[c / masses.size()];
    const auto& m = masses[c % masses.size()];
    try {
      worst = std::max(worst,
                       canonical_form_residual(ord, m.fn, suite.functions, suite.points, hbar));
    } catch (const std::exception& e) {
#pragma omp critical
      {
        failed = true;
        message = e.what();
      }
    }
  }
  if (failed) throw Error(message);
  return worst;
}

double hermiticity_defect(const OrderedHamiltonian& h, const TestFunction& phi,
                          const TestFunction& psi, double lo, double hi, int intervals) {
  if (intervals < 2 || intervals % 2 != 0) throw InvalidParam("Simpson needs an even panel count");
  const double step = (hi - lo) / intervals;
  complex left = 0.0;
  complex right = 0.0;
  for (int i = 0; i <= intervals; ++i) {
    const double x = lo + i * step;
    const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const complex phi_x(phi.re(x), phi.im(x));
    const complex psi_x(psi.re(x), psi.im(x));
    left += w * std::conj(phi_x) * h.apply(psi, x);
    right += w * std::conj(h.apply(phi, x)) * psi_x;
  }
  left *= step / 3.0;
  right *= step / 3.0;
  return std::abs(left - right) / (std::abs(left) + 1e-300);
}

} // namespace pdm::opcheck
