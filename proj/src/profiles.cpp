#include "pdm/profiles.hpp"

#include <cmath>
#include <string>

#include "pdm/errors.hpp"

namespace pdm {

namespace {

void expect_params(ProfileKind kind, std::span<const double> params, std::size_t n) {
  if (params.size() != n)
    throw InvalidProfile(std::string(to_string(kind)) + " profile takes " + std::to_string(n) +
                         " parameters, got " + std::to_string(params.size()));
}

} // namespace

std::optional<ProfileKind> parse_profile_kind(std::string_view name) {
  if (name == "constant") return ProfileKind::constant;
  if (name == "exponential") return ProfileKind::exponential;
  if (name == "quadratic") return ProfileKind::quadratic;
  if (name == "power") return ProfileKind::power;
  if (name == "polynomial") return ProfileKind::polynomial;
  if (name == "gaussian") return ProfileKind::gaussian;
  return std::nullopt;
}

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
  case ProfileKind::constant: return "constant";
  case ProfileKind::exponential: return "exponential";
  case ProfileKind::quadratic: return "quadratic";
  case ProfileKind::power: return "power";
  case ProfileKind::polynomial: return "polynomial";
  case ProfileKind::gaussian: return "gaussian";
  }
  return "?";
}

bool positive_on(const SmoothFn& fn, Interval domain, int samples) {
  for (int i = 0; i <= samples + 1; ++i) {
    const double x = domain.lo + domain.length() * i / (samples + 1);
    double v = 0.0;
    try {
      v = fn(x);
    } catch (const DomainError&) {
      return false;
    }
    if (!(v > 0.0) || !std::isfinite(v)) return false;
  }
  return true;
}

SmoothFn make_profile(ProfileKind kind, std::span<const double> params,
                      std::optional<Interval> mass_domain) {
  const bool mass = mass_domain.has_value();
  if (mass && !(mass_domain->lo < mass_domain->hi))
    throw InvalidProfile("mass domain must satisfy lo < hi");

  SmoothFn fn;
  switch (kind) {
  case ProfileKind::constant:
    expect_params(kind, params, 1);
    if (mass && !(params[0] > 0.0)) throw InvalidProfile("constant mass must be positive");
    fn = SmoothFn::constant(params[0]);
    break;
  case ProfileKind::exponential:
    expect_params(kind, params, 2);
    if (mass && !(params[0] > 0.0)) throw InvalidProfile("exponential mass needs m0 > 0");
    if (mass && params[1] == 0.0) throw InvalidProfile("exponential mass needs c != 0");
    fn = params[0] * SmoothFn::exponential(params[1]);
    break;
  case ProfileKind::quadratic:
    expect_params(kind, params, 1);
    if (mass && !(params[0] > 0.0)) throw InvalidProfile("quadratic mass needs c > 0");
    if (mass && mass_domain->contains(0.0))
      throw InvalidProfile("quadratic mass vanishes at x = 0, which lies in the domain");
    fn = SmoothFn::polynomial({0.0, 0.0, params[0]});
    break;
  case ProfileKind::power: {
    expect_params(kind, params, 2);
    const double s = params[1];
    if (mass && !(params[0] > 0.0)) throw InvalidProfile("power mass needs a positive scale");
    if (mass && std::floor(s) != s && mass_domain->lo <= 0.0)
      throw InvalidProfile("non-integer power needs a domain inside x > 0");
    fn = params[0] * SmoothFn::power(s);
    break;
  }
  case ProfileKind::polynomial:
    if (params.empty()) throw InvalidProfile("polynomial profile needs coefficients");
    fn = SmoothFn::polynomial({params.begin(), params.end()});
    break;
  case ProfileKind::gaussian:
    expect_params(kind, params, 3);
    if (!(params[2] > 0.0)) throw InvalidProfile("gaussian width must be positive");
    if (mass && !(params[0] > 0.0)) throw InvalidProfile("gaussian mass needs amplitude > 0");
    fn = params[0] * SmoothFn::gaussian(params[1], params[2]);
    break;
  }
  if (mass && !positive_on(fn, *mass_domain))
    throw InvalidProfile(std::string(to_string(kind)) + " mass is not strictly positive on [" +
                         std::to_string(mass_domain->lo) + ", " +
                         std::to_string(mass_domain->hi) + "]");
  return fn;
}

} // namespace pdm
