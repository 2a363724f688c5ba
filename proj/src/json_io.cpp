#include "ppd/json_io.hpp"

#include <set>
#include <vector>

#include "ppd/measure.hpp"

namespace ppd {

namespace {

using nlohmann::json;

constexpr double kPi = 3.141592653589793238462643383279502884;

void require_keys(const json& j, const std::string& kind, const std::set<std::string>& allowed) {
  for (const auto& [key, _] : j.items()) {
    if (key != "kind" && key != "dim" && !allowed.count(key))
      throw DescriptorError("unknown key '" + key + "' for kind '" + kind + "'");
  }
}

double number(const json& j, const std::string& key) {
  if (!j.contains(key)) throw DescriptorError("missing key '" + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number()) throw DescriptorError("key '" + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

const json& child(const json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_object()) throw DescriptorError("key '" + key + "' must be a descriptor object");
  return j.at(key);
}

std::vector<double> numbers(const json& j, const std::string& key) {
  if (!j.is_array()) throw DescriptorError("'" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw DescriptorError("'" + key + "' must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

ScaleMeasure parse_measure(const json& j) {
  std::vector<Atom> atoms;
  if (j.contains("atoms")) {
    if (!j.at("atoms").is_array()) throw DescriptorError("'atoms' must be an array of [t, mass] pairs");
    for (const auto& a : j.at("atoms")) {
      const auto p = numbers(a, "atoms");
      if (p.size() != 2) throw DescriptorError("'atoms' entries are [t, mass] pairs");
      atoms.push_back({p[0], p[1]});
    }
  }
  std::vector<double> grid;
  std::vector<double> density;
  if (j.contains("grid") || j.contains("density")) {
    if (!j.contains("grid") || !j.contains("density")) throw DescriptorError("'grid' and 'density' go together");
    grid = numbers(j.at("grid"), "grid");
    density = numbers(j.at("density"), "density");
  }
  if (atoms.empty() && grid.empty()) throw DescriptorError("mixture needs 'atoms' or 'grid'/'density'");
  try {
    return ScaleMeasure(std::move(atoms), std::move(grid), std::move(density));
  } catch (const std::exception& e) {
    throw DescriptorError(std::string("invalid mixing measure: ") + e.what());
  }
}

RadialFunction build(const json& j, int default_dim) {
  if (!j.is_object()) throw DescriptorError("descriptor must be a JSON object");
  if (!j.contains("kind") || !j.at("kind").is_string()) throw DescriptorError("descriptor needs a string 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  int dim = default_dim;
  if (j.contains("dim")) {
    if (!j.at("dim").is_number_integer() || j.at("dim").get<int>() < 1)
      throw DescriptorError("'dim' must be a positive integer");
    dim = j.at("dim").get<int>();
  }
  auto line_only = [&] {
    if (dim != 1) throw DescriptorError("kind '" + kind + "' is defined on the line only");
  };

  if (kind == "triangle") {
    require_keys(j, kind, {"r"});
    return make_indicator_conv(number_or(j, "r", 2.0), dim);
  }
  if (kind == "m_alpha") {
    require_keys(j, kind, {"alpha"});
    return make_m_alpha(number(j, "alpha"), dim);
  }
  if (kind == "m_alpha_sq") {
    require_keys(j, kind, {"alpha"});
    return make_m_alpha_sq(number(j, "alpha"), dim);
  }
  if (kind == "wu") {
    require_keys(j, kind, {});
    return make_wu(dim);
  }
  if (kind == "phi") {
    require_keys(j, kind, {});
    return make_phi(dim);
  }
  if (kind == "hermite4") {
    require_keys(j, kind, {"a", "b"});
    line_only();
    return make_hermite_quartic(number(j, "a"), number(j, "b"));
  }
  if (kind == "gaussian") {
    require_keys(j, kind, {"rate"});
    return make_gaussian(number_or(j, "rate", kPi), dim);
  }
  if (kind == "f_zeta") {
    require_keys(j, kind, {"r", "theta"});
    line_only();
    return make_f_zeta(number(j, "r"), number(j, "theta"));
  }
  if (kind == "linnik") {
    require_keys(j, kind, {"beta"});
    return make_linnik(number(j, "beta"), dim);
  }
  if (kind == "exp_pow") {
    require_keys(j, kind, {"beta"});
    return make_exp_pow(number(j, "beta"), dim);
  }
  if (kind == "inverse_multiquadric") {
    require_keys(j, kind, {"alpha", "beta"});
    return make_inverse_multiquadric(number(j, "alpha"), number(j, "beta"), dim);
  }
  if (kind == "wendland33") {
    require_keys(j, kind, {});
    return make_wendland33(dim);
  }
  if (kind == "scale") {
    require_keys(j, kind, {"inner", "lambda"});
    return scale(build(child(j, "inner"), dim), number(j, "lambda"));
  }
  if (kind == "mixture") {
    require_keys(j, kind, {"inner", "atoms", "grid", "density"});
    return mixture(build(child(j, "inner"), dim), parse_measure(j));
  }
  if (kind == "product" || kind == "convolve") {
    require_keys(j, kind, {"left", "right"});
    const auto l = build(child(j, "left"), dim);
    const auto r = build(child(j, "right"), dim);
    return kind == "product" ? product(l, r) : convolve(l, r);
  }
  throw DescriptorError("unknown kind '" + kind + "'");
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

RadialFunction parse_descriptor(const nlohmann::json& j, int default_dim) {
  try {
    return build(j, default_dim);
  } catch (const DescriptorError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw DescriptorError(e.what());
  } catch (const std::domain_error& e) {
    throw DescriptorError(e.what());
  } catch (const std::invalid_argument& e) {
    throw DescriptorError(e.what());
  }
}

RadialFunction parse_descriptor(const std::string& text, int default_dim) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DescriptorError(std::string("descriptor is not valid JSON: ") + e.what());
  }
  return parse_descriptor(j, default_dim);
}

nlohmann::json to_json(const Verdict& v) {
  return {{"passed", v.passed},
          {"witness_x", optional_number(v.witness ? std::optional<double>(v.witness->x) : std::nullopt)},
          {"witness_value", optional_number(v.witness ? std::optional<double>(v.witness->value) : std::nullopt)},
          {"margin", v.margin},
          {"notes", v.notes}};
}

nlohmann::json to_json(const Rect& r) { return json::array({r.re0, r.re1, r.im0, r.im1}); }

nlohmann::json to_json(const ZeroReport& r) {
  json zeros = json::array();
  for (const auto& z : r.zeros)
    zeros.push_back(json::array({z.location.real(), z.location.imag(), z.multiplicity, to_string(z.cls)}));
  return {{"region", to_json(r.region)}, {"total_count", r.total_count}, {"zeros", zeros}};
}

nlohmann::json to_json(const Certificate& c) {
  json witness = nullptr;
  if (c.zeros) {
    witness = {{"zero_report", to_json(*c.zeros)}};
  } else if (!c.scales.empty()) {
    witness = {{"scales", c.scales}};
  }
  return {{"status", to_string(c.status)},
          {"reason", to_string(c.reason)},
          {"text", c.text},
          {"witness", witness},
          {"searched_region", c.searched_region ? to_json(*c.searched_region) : json(nullptr)}};
}

}  // namespace ppd
