#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "pdm/smoothfn.hpp"

namespace pdm {

/// Closed interval [lo, hi].
struct Interval {
  double lo;
  double hi;

  [[nodiscard]] bool contains(double x) const { return lo <= x && x <= hi; }
  [[nodiscard]] double length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class ProfileKind {
  constant,     ///< (value)
  exponential,  ///< (scale, rate): scale * exp(rate x)
  quadratic,    ///< (c): c x^2
  power,        ///< (scale, exponent): scale * x^exponent
  polynomial,   ///< (c0, c1, ...)
  gaussian,     ///< (amplitude, center, width)
};

std::optional<ProfileKind> parse_profile_kind(std::string_view name);
std::string_view to_string(ProfileKind kind);

/// Builds a profile. When `mass_domain` is given the result is meant to be a
/// mass and must be strictly positive on that closed interval; violations
/// throw InvalidProfile.
SmoothFn make_profile(ProfileKind kind, std::span<const double> params,
                      std::optional<Interval> mass_domain = std::nullopt);

/// Sampled positivity check (endpoints plus `samples` interior points).
bool positive_on(const SmoothFn& fn, Interval domain, int samples = 1000);

} // namespace pdm
