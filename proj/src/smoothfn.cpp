#include "pdm/smoothfn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>
#include <variant>

#include "pdm/errors.hpp"

namespace pdm {

namespace {

constexpr int kOrder = 6;

/// Truncated Taylor series: c[k] = f^(k)(x)/k!. Coefficients above `valid`
/// are unreliable (lost to derivative nodes).
struct Series {
  std::array<double, kOrder + 1> c{};
  int valid = kOrder;
};

Series constant_series(double v) {
  Series s;
  s.c[0] = v;
  return s;
}

Series add(const Series& a, const Series& b) {
  Series r;
  for (int k = 0; k <= kOrder; ++k) r.c[k] = a.c[k] + b.c[k];
  r.valid = std::min(a.valid, b.valid);
  return r;
}

Series mul(const Series& a, const Series& b) {
  Series r;
  for (int k = 0; k <= kOrder; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += a.c[j] * b.c[k - j];
    r.c[k] = acc;
  }
  r.valid = std::min(a.valid, b.valid);
  return r;
}

Series scale(const Series& a, double s) {
  Series r = a;
  for (auto& v : r.c) v *= s;
  return r;
}

Series reciprocal(const Series& a) {
  Series r;
  r.c[0] = 1.0 / a.c[0];
  for (int k = 1; k <= kOrder; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += a.c[j] * r.c[k - j];
    r.c[k] = -r.c[0] * acc;
  }
  r.valid = a.valid;
  return r;
}

Series exp_of(const Series& t) {
  Series r;
  r.c[0] = std::exp(t.c[0]);
  for (int k = 1; k <= kOrder; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += j * t.c[j] * r.c[k - j];
    r.c[k] = acc / k;
  }
  r.valid = t.valid;
  return r;
}

/// outer evaluated (as a series) at inner.c[0], composed with inner.
Series compose_series(const Series& outer, const Series& inner) {
  Series delta = inner;
  delta.c[0] = 0.0;
  Series r = constant_series(outer.c[kOrder]);
  r.valid = kOrder;
  for (int k = kOrder - 1; k >= 0; --k) {
    r = mul(r, delta);
    r.c[0] += outer.c[k];
  }
  r.valid = std::min(outer.valid, inner.valid);
  return r;
}

Series differentiate(const Series& a) {
  Series r;
  for (int k = 0; k < kOrder; ++k) r.c[k] = (k + 1) * a.c[k + 1];
  r.c[kOrder] = 0.0;
  r.valid = a.valid - 1;
  return r;
}

bool is_integer(double s) { return std::floor(s) == s; }

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

} // namespace

namespace detail {

struct ConstLeaf {
  double value;
};
struct IdentityLeaf {};
struct PowerLeaf {
  double exponent;
};
struct ExpLeaf {
  double rate;
};
struct LogLeaf {};
struct PolyLeaf {
  std::vector<double> coeffs;
};
struct GaussianLeaf {
  double center;
  double width;
};
struct CosineLeaf {
  double wavenumber;
  double phase;
};
struct SumNode {
  std::vector<SmoothFn> terms;
};
struct ProductNode {
  std::vector<SmoothFn> factors;
};
struct ScaleNode {
  double factor;
  SmoothFn child;
};
struct RecipNode {
  SmoothFn child;
};
struct ComposeNode {
  SmoothFn outer;
  SmoothFn inner;
};
struct DerivativeNode {
  SmoothFn child;
  int order;
};

struct Node {
  std::variant<ConstLeaf, IdentityLeaf, PowerLeaf, ExpLeaf, LogLeaf, PolyLeaf, GaussianLeaf,
               CosineLeaf, SumNode, ProductNode, ScaleNode, RecipNode, ComposeNode,
               DerivativeNode>
      kind;

  [[nodiscard]] Series eval(double x) const;
  [[nodiscard]] std::string describe() const;
};

} // namespace detail

const detail::Node& node_of(const SmoothFn& f) { return *f.node_; }

namespace detail {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Series power_series(double s, double x) {
  if (is_integer(s)) {
    if (s < 0 && x == 0.0)
      throw DomainError("x^" + fmt_num(s) + " is singular at x = 0");
  } else if (!(x > 0.0)) {
    throw DomainError("x^" + fmt_num(s) + " requires x > 0, got x = " + fmt_num(x));
  }
  Series r;
  double binom = 1.0;
  double factorial = 1.0;
  for (int k = 0; k <= kOrder; ++k) {
    if (k > 0) {
      binom *= (s - (k - 1));
      factorial *= k;
    }
    if (is_integer(s) && s >= 0 && k > s) {
      r.c[k] = 0.0;
      continue;
    }
    r.c[k] = binom / factorial * std::pow(x, s - k);
  }
  return r;
}

} // namespace

Series Node::eval(double x) const {
  return std::visit(
      overloaded{
          [](const ConstLeaf& l) { return constant_series(l.value); },
          [x](const IdentityLeaf&) {
            Series s;
            s.c[0] = x;
            s.c[1] = 1.0;
            return s;
          },
          [x](const PowerLeaf& l) { return power_series(l.exponent, x); },
          [x](const ExpLeaf& l) {
            Series s;
            double term = std::exp(l.rate * x);
            for (int k = 0; k <= kOrder; ++k) {
              s.c[k] = term;
              term *= l.rate / (k + 1);
            }
            return s;
          },
          [x](const LogLeaf&) {
            if (!(x > 0.0)) throw DomainError("log requires x > 0, got x = " + fmt_num(x));
            Series s;
            s.c[0] = std::log(x);
            double inv_pow = 1.0;
            for (int k = 1; k <= kOrder; ++k) {
              inv_pow /= x;
              s.c[k] = ((k % 2 == 1) ? 1.0 : -1.0) * inv_pow / k;
            }
            return s;
          },
          [x](const PolyLeaf& l) {
            // Repeated synthetic division gives the coefficients of p(x + d) in d.
            std::vector<double> a = l.coeffs;
            const int deg = static_cast<int>(a.size()) - 1;
            Series s;
            for (int k = 0; k <= deg && k <= kOrder; ++k) {
              for (int j = deg - 1; j >= k; --j) a[j] += x * a[j + 1];
              s.c[k] = a[k];
            }
            return s;
          },
          [x](const GaussianLeaf& l) {
            const double w2 = l.width * l.width;
            const double d = x - l.center;
            Series t;
            t.c[0] = -d * d / w2;
            t.c[1] = -2.0 * d / w2;
            t.c[2] = -1.0 / w2;
            return exp_of(t);
          },
          [x](const CosineLeaf& l) {
            Series s;
            const double theta = l.wavenumber * x + l.phase;
            double kpow = 1.0;
            double factorial = 1.0;
            for (int j = 0; j <= kOrder; ++j) {
              if (j > 0) {
                kpow *= l.wavenumber;
                factorial *= j;
              }
              s.c[j] = kpow * std::cos(theta + j * std::numbers::pi / 2) / factorial;
            }
            return s;
          },
          [x](const SumNode& n) {
            Series r = constant_series(0.0);
            for (const auto& t : n.terms) r = add(r, node_of(t).eval(x));
            return r;
          },
          [x](const ProductNode& n) {
            Series r = constant_series(1.0);
            for (const auto& f : n.factors) r = mul(r, node_of(f).eval(x));
            return r;
          },
          [x](const ScaleNode& n) { return scale(node_of(n.child).eval(x), n.factor); },
          [x](const RecipNode& n) {
            Series a = node_of(n.child).eval(x);
            if (!(a.c[0] > 0.0))
              throw DomainError("reciprocal requires a strictly positive base, got " +
                                fmt_num(a.c[0]) + " at x = " + fmt_num(x));
            return reciprocal(a);
          },
          [x](const ComposeNode& n) {
            Series inner = node_of(n.inner).eval(x);
            Series outer = node_of(n.outer).eval(inner.c[0]);
            return compose_series(outer, inner);
          },
          [x](const DerivativeNode& n) {
            Series s = node_of(n.child).eval(x);
            for (int i = 0; i < n.order; ++i) s = differentiate(s);
            return s;
          },
      },
      kind);
}

std::string Node::describe() const {
  return std::visit(
      overloaded{
          [](const ConstLeaf& l) { return fmt_num(l.value); },
          [](const IdentityLeaf&) { return std::string("x"); },
          [](const PowerLeaf& l) { return "x^" + fmt_num(l.exponent); },
          [](const ExpLeaf& l) { return "exp(" + fmt_num(l.rate) + "*x)"; },
          [](const LogLeaf&) { return std::string("log(x)"); },
          [](const PolyLeaf& l) {
            std::string s = "poly(";
            for (std::size_t i = 0; i < l.coeffs.size(); ++i)
              s += (i ? "," : "") + fmt_num(l.coeffs[i]);
            return s + ")";
          },
          [](const GaussianLeaf& l) {
            return "gauss(" + fmt_num(l.center) + "," + fmt_num(l.width) + ")";
          },
          [](const CosineLeaf& l) {
            return "cos(" + fmt_num(l.wavenumber) + "*x+" + fmt_num(l.phase) + ")";
          },
          [](const SumNode& n) {
            std::string s = "(";
            for (std::size_t i = 0; i < n.terms.size(); ++i)
              s += (i ? " + " : "") + n.terms[i].describe();
            return s + ")";
          },
          [](const ProductNode& n) {
            std::string s = "(";
            for (std::size_t i = 0; i < n.factors.size(); ++i)
              s += (i ? " * " : "") + n.factors[i].describe();
            return s + ")";
          },
          [](const ScaleNode& n) { return fmt_num(n.factor) + "*" + n.child.describe(); },
          [](const RecipNode& n) { return "1/" + n.child.describe(); },
          [](const ComposeNode& n) {
            return n.outer.describe() + "@(" + n.inner.describe() + ")";
          },
          [](const DerivativeNode& n) {
            return "d" + std::to_string(n.order) + "[" + n.child.describe() + "]";
          },
      },
      kind);
}

} // namespace detail

namespace {
std::shared_ptr<const detail::Node> make(auto kind) {
  return std::make_shared<const detail::Node>(detail::Node{std::move(kind)});
}
} // namespace

SmoothFn::SmoothFn() : node_(make(detail::ConstLeaf{0.0})) {}
SmoothFn::SmoothFn(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}

SmoothFn SmoothFn::constant(double value) { return SmoothFn(make(detail::ConstLeaf{value})); }
SmoothFn SmoothFn::identity() { return SmoothFn(make(detail::IdentityLeaf{})); }
SmoothFn SmoothFn::power(double exponent) { return SmoothFn(make(detail::PowerLeaf{exponent})); }
SmoothFn SmoothFn::exponential(double rate) { return SmoothFn(make(detail::ExpLeaf{rate})); }
SmoothFn SmoothFn::log() { return SmoothFn(make(detail::LogLeaf{})); }

SmoothFn SmoothFn::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  return SmoothFn(make(detail::PolyLeaf{std::move(coeffs)}));
}

SmoothFn SmoothFn::gaussian(double center, double width) {
  if (!(width > 0.0)) throw InvalidParam("gaussian width must be positive");
  return SmoothFn(make(detail::GaussianLeaf{center, width}));
}

SmoothFn SmoothFn::cosine(double wavenumber, double phase) {
  return SmoothFn(make(detail::CosineLeaf{wavenumber, phase}));
}

SmoothFn operator+(const SmoothFn& a, const SmoothFn& b) {
  std::vector<SmoothFn> terms;
  for (const SmoothFn* f : {&a, &b}) {
    if (const auto* s = std::get_if<detail::SumNode>(&f->node_->kind))
      terms.insert(terms.end(), s->terms.begin(), s->terms.end());
    else
      terms.push_back(*f);
  }
  return SmoothFn(make(detail::SumNode{std::move(terms)}));
}

SmoothFn operator-(const SmoothFn& a, const SmoothFn& b) { return a + (-1.0) * b; }

SmoothFn operator*(const SmoothFn& a, const SmoothFn& b) {
  std::vector<SmoothFn> factors;
  for (const SmoothFn* f : {&a, &b}) {
    if (const auto* p = std::get_if<detail::ProductNode>(&f->node_->kind))
      factors.insert(factors.end(), p->factors.begin(), p->factors.end());
    else
      factors.push_back(*f);
  }
  return SmoothFn(make(detail::ProductNode{std::move(factors)}));
}

SmoothFn operator*(double s, const SmoothFn& a) {
  return SmoothFn(make(detail::ScaleNode{s, a}));
}

SmoothFn SmoothFn::recip() const { return SmoothFn(make(detail::RecipNode{*this})); }

SmoothFn SmoothFn::pow(double exponent) const { return power(exponent).compose(*this); }

SmoothFn SmoothFn::derivative(int order) const {
  if (order < 0) throw InvalidParam("derivative order must be non-negative");
  if (order == 0) return *this;
  return SmoothFn(make(detail::DerivativeNode{*this, order}));
}

SmoothFn SmoothFn::compose(const SmoothFn& inner) const {
  return SmoothFn(make(detail::ComposeNode{*this, inner}));
}

double SmoothFn::operator()(double x) const { return node_->eval(x).c[0]; }

Jet3 SmoothFn::eval_jet(double x) const {
  const Series s = node_->eval(x);
  if (s.valid < 3)
    throw Error("derivative nesting too deep for a third-order jet: " + describe());
  return {s.c[0], s.c[1], 2.0 * s.c[2], 6.0 * s.c[3]};
}

bool SmoothFn::is_constant() const {
  return std::holds_alternative<detail::ConstLeaf>(node_->kind);
}

std::string SmoothFn::describe() const { return node_->describe(); }

} // namespace pdm
