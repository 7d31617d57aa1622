#pragma once

#include <complex>
#include <limits>

namespace pdm {

/// Value and first three derivatives of a scalar function at one point.
///
/// Arithmetic follows the Leibniz rule exactly, so a product of two jets is
/// the jet of the product. `differentiated()` shifts the components down by
/// one; the third derivative of the result is unknown and set to NaN, which
/// never leaks into lower components under +, - and *.
template <class T>
struct BasicJet3 {
  T v0{};
  T v1{};
  T v2{};
  T v3{};

  static constexpr BasicJet3 constant(T c) { return {c, T{}, T{}, T{}}; }

  [[nodiscard]] BasicJet3 differentiated() const {
    return {v1, v2, v3, T(std::numeric_limits<double>::quiet_NaN())};
  }

  BasicJet3& operator+=(const BasicJet3& o) {
    v0 += o.v0;
    v1 += o.v1;
    v2 += o.v2;
    v3 += o.v3;
    return *this;
  }
  BasicJet3& operator-=(const BasicJet3& o) {
    v0 -= o.v0;
    v1 -= o.v1;
    v2 -= o.v2;
    v3 -= o.v3;
    return *this;
  }
  BasicJet3& operator*=(T s) {
    v0 *= s;
    v1 *= s;
    v2 *= s;
    v3 *= s;
    return *this;
  }

  friend BasicJet3 operator+(BasicJet3 a, const BasicJet3& b) { return a += b; }
  friend BasicJet3 operator-(BasicJet3 a, const BasicJet3& b) { return a -= b; }
  friend BasicJet3 operator-(const BasicJet3& a) { return {-a.v0, -a.v1, -a.v2, -a.v3}; }
  friend BasicJet3 operator*(BasicJet3 a, T s) { return a *= s; }
  friend BasicJet3 operator*(T s, BasicJet3 a) { return a *= s; }

  friend BasicJet3 operator*(const BasicJet3& f, const BasicJet3& g) {
    return {f.v0 * g.v0,
            f.v1 * g.v0 + f.v0 * g.v1,
            f.v2 * g.v0 + T(2) * f.v1 * g.v1 + f.v0 * g.v2,
            f.v3 * g.v0 + T(3) * f.v2 * g.v1 + T(3) * f.v1 * g.v2 + f.v0 * g.v3};
  }

  friend bool operator==(const BasicJet3&, const BasicJet3&) = default;
};

using Jet3 = BasicJet3<double>;
using ComplexJet3 = BasicJet3<std::complex<double>>;

inline ComplexJet3 to_complex(const Jet3& j) { return {j.v0, j.v1, j.v2, j.v3}; }

/// Chain rule: jet of outer(inner(x)), given the outer jet evaluated at inner.v0.
template <class T>
BasicJet3<T> chain(const BasicJet3<T>& outer, const BasicJet3<T>& inner) {
  const T f1 = inner.v1;
  return {outer.v0,
          outer.v1 * f1,
          outer.v2 * f1 * f1 + outer.v1 * inner.v2,
          outer.v3 * f1 * f1 * f1 + T(3) * outer.v2 * f1 * inner.v2 + outer.v1 * inner.v3};
}

} // namespace pdm
