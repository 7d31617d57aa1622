#include "pdm/cli/scenario.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "pdm/errors.hpp"

namespace pdm::cli {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 5> kCommands = {{
    {Command::spectrum, "spectrum"},
    {Command::audit, "audit"},
    {Command::identities, "identities"},
    {Command::sweep, "sweep"},
    {Command::convergence, "convergence"},
}};

constexpr std::array<std::pair<ProblemKind, std::string_view>, 3> kProblems = {{
    {ProblemKind::example1, "example1"},
    {ProblemKind::example2, "example2"},
    {ProblemKind::custom, "custom"},
}};

std::string join(std::initializer_list<std::string_view> names) {
  std::string out;
  for (auto n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok)
      throw SchemaError("unknown key '" + key + "' in " + where + "; valid keys: " + join(allowed));
  }
}

double number(const json& obj, const char* key, const std::string& where,
              std::optional<double> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw SchemaError(where + " is missing required key '" + key + "'");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) throw SchemaError(where + "." + key + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SchemaError(where + "." + key + " must be finite");
  return d;
}

int integer(const json& obj, const char* key, const std::string& where, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw SchemaError(where + "." + key + " must be an integer");
  return v.get<int>();
}

std::string text(const json& obj, const char* key, const std::string& where,
                 std::optional<std::string> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw SchemaError(where + " is missing required key '" + key + "'");
  }
  if (!obj.at(key).is_string()) throw SchemaError(where + "." + key + " must be a string");
  return obj.at(key).get<std::string>();
}

bool flag(const json& obj, const char* key, const std::string& where, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) throw SchemaError(where + "." + key + " must be true or false");
  return obj.at(key).get<bool>();
}

template <class E, std::size_t N>
E lookup(const std::array<std::pair<E, std::string_view>, N>& table, const std::string& name,
         const std::string& what) {
  std::string valid;
  for (const auto& [value, label] : table) {
    if (label == name) return value;
    if (!valid.empty()) valid += ", ";
    valid += label;
  }
  throw SchemaError("unknown " + what + " '" + name + "'; valid names: " + valid);
}

template <class E, std::size_t N>
std::string_view label_of(const std::array<std::pair<E, std::string_view>, N>& table, E value) {
  for (const auto& [v, label] : table)
    if (v == value) return label;
  return "?";
}

Range parse_range(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
      !v[2].is_number_integer())
    throw SchemaError(where + " must be [lo, hi, count]");
  Range r{v[0].get<double>(), v[1].get<double>(), v[2].get<int>()};
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi)) throw SchemaError(where + " bounds must be finite");
  if (r.count < 1) throw SchemaError(where + " count must be >= 1");
  if (r.count > 1 && !(r.lo < r.hi)) throw SchemaError(where + " needs lo < hi");
  return r;
}

json range_json(const Range& r) { return json::array({r.lo, r.hi, r.count}); }

} // namespace

std::string_view to_string(Command c) { return label_of(kCommands, c); }
std::string_view to_string(ProblemKind k) { return label_of(kProblems, k); }

OrderingParams OrderingSpec::params() const {
  return name ? catalog(*name) : OrderingParams(a, alpha, gamma);
}

std::string OrderingSpec::label() const {
  if (name) return std::string(to_string(*name));
  std::ostringstream os;
  os << "(a=" << a << ", alpha=" << alpha << ", gamma=" << gamma << ")";
  return os.str();
}

double Range::at(int i) const {
  if (count == 1) return lo;
  return lo + (hi - lo) * i / (count - 1);
}

SmoothFn build_profile(const json& node) {
  const std::string where = "profile";
  if (!node.is_object()) throw SchemaError("profile must be an object with a 'kind'");
  const std::string kind = text(node, "kind", where);
  const std::string at = "profile '" + kind + "'";
  auto children = [&](const char* key) {
    if (!node.contains(key) || !node.at(key).is_array() || node.at(key).empty())
      throw SchemaError(at + " needs a nonempty array '" + key + "'");
    std::vector<SmoothFn> out;
    for (const json& c : node.at(key)) out.push_back(build_profile(c));
    return out;
  };
  auto child = [&](const char* key) {
    if (!node.contains(key)) throw SchemaError(at + " needs '" + key + "'");
    return build_profile(node.at(key));
  };

  if (kind == "const") {
    check_keys(node, {"kind", "value"}, at);
    return SmoothFn::constant(number(node, "value", at));
  }
  if (kind == "identity") {
    check_keys(node, {"kind"}, at);
    return SmoothFn::identity();
  }
  if (kind == "exp") {
    check_keys(node, {"kind", "scale", "rate"}, at);
    return number(node, "scale", at, 1.0) * SmoothFn::exponential(number(node, "rate", at));
  }
  if (kind == "power") {
    check_keys(node, {"kind", "scale", "exponent"}, at);
    return number(node, "scale", at, 1.0) * SmoothFn::power(number(node, "exponent", at));
  }
  if (kind == "poly") {
    check_keys(node, {"kind", "coeffs"}, at);
    if (!node.contains("coeffs") || !node.at("coeffs").is_array() || node.at("coeffs").empty())
      throw SchemaError(at + " needs a nonempty array 'coeffs'");
    std::vector<double> coeffs;
    for (const json& c : node.at("coeffs")) {
      if (!c.is_number() || !std::isfinite(c.get<double>()))
        throw SchemaError(at + " coefficients must be finite numbers");
      coeffs.push_back(c.get<double>());
    }
    return SmoothFn::polynomial(std::move(coeffs));
  }
  if (kind == "gaussian") {
    check_keys(node, {"kind", "amplitude", "center", "width"}, at);
    const double width = number(node, "width", at);
    if (!(width > 0.0)) throw SchemaError(at + " width must be positive");
    return number(node, "amplitude", at, 1.0) *
           SmoothFn::gaussian(number(node, "center", at, 0.0), width);
  }
  if (kind == "log") {
    check_keys(node, {"kind"}, at);
    return SmoothFn::log();
  }
  if (kind == "cos") {
    check_keys(node, {"kind", "amplitude", "wavenumber", "phase"}, at);
    return number(node, "amplitude", at, 1.0) *
           SmoothFn::cosine(number(node, "wavenumber", at), number(node, "phase", at, 0.0));
  }
  if (kind == "sum") {
    check_keys(node, {"kind", "terms"}, at);
    auto terms = children("terms");
    SmoothFn out = terms[0];
    for (std::size_t i = 1; i < terms.size(); ++i) out = out + terms[i];
    return out;
  }
  if (kind == "product") {
    check_keys(node, {"kind", "factors"}, at);
    auto factors = children("factors");
    SmoothFn out = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) out = out * factors[i];
    return out;
  }
  if (kind == "scale") {
    check_keys(node, {"kind", "factor", "of"}, at);
    return number(node, "factor", at) * child("of");
  }
  if (kind == "recip") {
    check_keys(node, {"kind", "of"}, at);
    return child("of").recip();
  }
  if (kind == "compose") {
    check_keys(node, {"kind", "outer", "inner"}, at);
    return child("outer").compose(child("inner"));
  }
  throw SchemaError("unknown profile kind '" + kind +
                    "'; valid kinds: const, identity, exp, power, poly, gaussian, log, cos, sum, "
                    "product, scale, recip, compose");
}

Scenario parse_scenario(const json& doc) {
  check_keys(doc, {"schema", "name", "command", "problem", "ordering", "hbar", "domain", "grid", "k",
                   "output", "sweep"},
             "scenario");
  const std::string schema = text(doc, "schema", "scenario");
  if (schema != kSchema)
    throw SchemaError("unsupported schema '" + schema + "'; expected '" + std::string(kSchema) + "'");

  Scenario s;
  s.name = text(doc, "name", "scenario");
  s.command = lookup(kCommands, text(doc, "command", "scenario"), "command");
  s.hbar = number(doc, "hbar", "scenario", 1.0);
  if (!(s.hbar > 0.0)) throw SchemaError("scenario.hbar must be positive");
  s.k = integer(doc, "k", "scenario", 5);
  if (s.k < 1) throw SchemaError("scenario.k must be >= 1");
  s.output = text(doc, "output", "scenario", s.name);

  if (doc.contains("problem")) {
    const json& p = doc.at("problem");
    const std::string where = "problem";
    if (!p.is_object()) throw SchemaError("problem must be an object");
    s.problem.kind = lookup(kProblems, text(p, "kind", where), "problem kind");
    switch (s.problem.kind) {
    case ProblemKind::example1:
      check_keys(p, {"kind", "m0", "c", "V0"}, where);
      s.problem.ex1 = {number(p, "m0", where, 1.0), number(p, "c", where, 1.0),
                       number(p, "V0", where, 1.0)};
      break;
    case ProblemKind::example2:
      check_keys(p, {"kind", "c", "A", "B"}, where);
      s.problem.ex2 = {number(p, "c", where, 1.0), number(p, "A", where, 1.0 / 32.0),
                       number(p, "B", where, -5.0)};
      break;
    case ProblemKind::custom:
      check_keys(p, {"kind", "mass", "potential"}, where);
      if (!p.contains("mass") || !p.contains("potential"))
        throw SchemaError("custom problem needs 'mass' and 'potential' profiles");
      s.problem.mass = p.at("mass");
      s.problem.potential = p.at("potential");
      build_profile(s.problem.mass);
      build_profile(s.problem.potential);
      break;
    }
  }

  if (doc.contains("ordering")) {
    const json& o = doc.at("ordering");
    if (o.is_string()) {
      const auto name = parse_ordering_name(o.get<std::string>());
      if (!name)
        throw SchemaError("unknown ordering '" + o.get<std::string>() +
                          "'; valid names: " + catalog_names());
      s.ordering = {*name, 0.0, 0.0, 0.0};
      const OrderingParams p = catalog(*name);
      s.ordering.a = p.a();
      s.ordering.alpha = p.alpha();
      s.ordering.gamma = p.gamma();
    } else {
      check_keys(o, {"a", "alpha", "gamma"}, "ordering");
      s.ordering = {std::nullopt, number(o, "a", "ordering", 0.0), number(o, "alpha", "ordering", 0.0),
                    number(o, "gamma", "ordering", 0.0)};
      if (std::abs(s.ordering.a + 1.0) < 1e-12)
        throw SchemaError("ordering.a = -1 makes the Hamiltonian normalization singular");
    }
  }

  if (doc.contains("domain") && !doc.at("domain").is_null()) {
    const json& d = doc.at("domain");
    if (!d.is_array() || d.size() != 2 || !d[0].is_number() || !d[1].is_number())
      throw SchemaError("domain must be [lo, hi] or null");
    Interval dom{d[0].get<double>(), d[1].get<double>()};
    if (!std::isfinite(dom.lo) || !std::isfinite(dom.hi) || !(dom.lo < dom.hi))
      throw SchemaError("domain needs finite lo < hi");
    s.domain = dom;
  }
  if (s.problem.kind == ProblemKind::custom && !s.domain)
    throw SchemaError("custom problems need an explicit domain");

  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    check_keys(g, {"points", "levels"}, "grid");
    s.grid = {integer(g, "points", "grid", 400), integer(g, "levels", "grid", 3)};
    if (s.grid.points < 16) throw SchemaError("grid.points must be >= 16");
    if (s.grid.levels < 2) throw SchemaError("grid.levels must be >= 2");
  }
  if (s.k > s.grid.points / 4) throw SchemaError("k must not exceed grid.points / 4");

  if (doc.contains("sweep")) {
    const json& w = doc.at("sweep");
    check_keys(w, {"a", "alpha", "gamma", "include_catalog", "numeric"}, "sweep");
    if (w.contains("a")) s.sweep.a = parse_range(w.at("a"), "sweep.a");
    if (w.contains("alpha")) s.sweep.alpha = parse_range(w.at("alpha"), "sweep.alpha");
    if (w.contains("gamma")) s.sweep.gamma = parse_range(w.at("gamma"), "sweep.gamma");
    s.sweep.include_catalog = flag(w, "include_catalog", "sweep", false);
    s.sweep.numeric = flag(w, "numeric", "sweep", false);
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open scenario file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("scenario file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_scenario(doc);
}

json to_json(const Scenario& s) {
  json doc;
  doc["schema"] = kSchema;
  doc["name"] = s.name;
  doc["command"] = to_string(s.command);
  json p;
  p["kind"] = to_string(s.problem.kind);
  switch (s.problem.kind) {
  case ProblemKind::example1:
    p["m0"] = s.problem.ex1.m0;
    p["c"] = s.problem.ex1.c;
    p["V0"] = s.problem.ex1.V0;
    break;
  case ProblemKind::example2:
    p["c"] = s.problem.ex2.cmass;
    p["A"] = s.problem.ex2.A;
    p["B"] = s.problem.ex2.B;
    break;
  case ProblemKind::custom:
    p["mass"] = s.problem.mass;
    p["potential"] = s.problem.potential;
    break;
  }
  doc["problem"] = p;
  if (s.ordering.name)
    doc["ordering"] = to_string(*s.ordering.name);
  else
    doc["ordering"] = {{"a", s.ordering.a}, {"alpha", s.ordering.alpha}, {"gamma", s.ordering.gamma}};
  doc["hbar"] = s.hbar;
  doc["domain"] = s.domain ? json::array({s.domain->lo, s.domain->hi}) : json(nullptr);
  doc["grid"] = {{"points", s.grid.points}, {"levels", s.grid.levels}};
  doc["k"] = s.k;
  doc["output"] = s.output;
  doc["sweep"] = {{"a", range_json(s.sweep.a)},
                  {"alpha", range_json(s.sweep.alpha)},
                  {"gamma", range_json(s.sweep.gamma)},
                  {"include_catalog", s.sweep.include_catalog},
                  {"numeric", s.sweep.numeric}};
  return doc;
}

Scenario default_scenario() { return Scenario{}; }

SpectralProblem build_problem(const Scenario& s) {
  const OrderingParams ord = s.ordering.params();
  switch (s.problem.kind) {
  case ProblemKind::example1:
    return example1_problem(s.problem.ex1, ord, s.hbar, s.k, s.domain);
  case ProblemKind::example2:
    return example2_problem(s.problem.ex2, ord, s.hbar, s.k, s.domain);
  case ProblemKind::custom:
    break;
  }
  return custom_problem(build_profile(s.problem.mass), build_profile(s.problem.potential), ord,
                        s.hbar, *s.domain);
}

} // namespace pdm::cli
