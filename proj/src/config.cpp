#include "orfd/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "orfd/errors.hpp"

namespace orfd {

using nlohmann::json;

namespace {

const std::set<std::string> kTopKeys = {
    "layers", "coefficients", "time_scale", "N",      "schemes",         "xi",     "T",
    "dt",     "initial",      "seed",       "draws",  "snapshot_stride", "output", "workers",
    "physical_time"};

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ValidationError(key + ": " + what);
}

double get_number(const json& j, const std::string& key) {
  if (!j.is_number()) fail(key, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(key, "must be finite");
  return v;
}

long long get_integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) fail(key, "expected an integer");
  return j.get<long long>();
}

template <typename F>
auto as_list(const json& j, const std::string& key, F&& item) {
  using T = decltype(item(j, key));
  std::vector<T> out;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(item(j[i], key + "[" + std::to_string(i) + "]"));
  } else {
    out.push_back(item(j, key));
  }
  return out;
}

LayerSpec parse_layer(const json& j, const std::string& key) {
  if (!j.is_object()) fail(key, "expected an object");
  static const std::set<std::string> fields = {"rho", "thickness", "youngs_gpa", "shear_gpa",
                                               "poisson"};
  for (const auto& [k, v] : j.items()) {
    if (!fields.count(k)) fail(key + "." + k, "unknown key");
  }
  for (const auto& f : fields) {
    if (!j.contains(f)) fail(key + "." + f, "missing");
  }
  LayerSpec l;
  l.rho = get_number(j["rho"], key + ".rho");
  l.thickness = get_number(j["thickness"], key + ".thickness");
  l.youngs_gpa = get_number(j["youngs_gpa"], key + ".youngs_gpa");
  l.shear_gpa = get_number(j["shear_gpa"], key + ".shear_gpa");
  l.poisson = get_number(j["poisson"], key + ".poisson");
  validate(l, key);
  return l;
}

json layer_to_json(const LayerSpec& l) {
  return {{"rho", l.rho},
          {"thickness", l.thickness},
          {"youngs_gpa", l.youngs_gpa},
          {"shear_gpa", l.shear_gpa},
          {"poisson", l.poisson}};
}

InitialSpec parse_initial(const json& j) {
  if (!j.is_object()) fail("initial", "expected an object");
  InitialSpec s;
  const std::string type = j.value("type", std::string("box"));
  std::set<std::string> allowed{"type"};
  if (type == "box") {
    s.kind = InitialSpec::Kind::Box;
    allowed.insert({"amplitude", "a", "b"});
    if (j.contains("amplitude")) s.amplitude = get_number(j["amplitude"], "initial.amplitude");
    if (j.contains("a")) s.a = get_number(j["a"], "initial.a");
    if (j.contains("b")) s.b = get_number(j["b"], "initial.b");
    if (!(0.0 <= s.a && s.a < s.b && s.b <= 1.0)) fail("initial", "box support needs 0 <= a < b <= 1");
  } else if (type == "random") {
    s.kind = InitialSpec::Kind::Random;
    s.amplitude = 1.0;
    allowed.insert("amplitude");
    if (j.contains("amplitude")) s.amplitude = get_number(j["amplitude"], "initial.amplitude");
  } else if (type == "snapshot") {
    s.kind = InitialSpec::Kind::Snapshot;
    allowed.insert("path");
    if (!j.contains("path") || !j["path"].is_string()) fail("initial.path", "expected a string");
    s.path = j["path"].get<std::string>();
  } else {
    fail("initial.type", "expected box, random or snapshot");
  }
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) fail("initial." + k, "unknown key for type " + type);
  }
  return s;
}

json initial_to_json(const InitialSpec& s) {
  switch (s.kind) {
    case InitialSpec::Kind::Box:
      return {{"type", "box"}, {"amplitude", s.amplitude}, {"a", s.a}, {"b", s.b}};
    case InitialSpec::Kind::Random:
      return {{"type", "random"}, {"amplitude", s.amplitude}};
    case InitialSpec::Kind::Snapshot:
      break;
  }
  return {{"type", "snapshot"}, {"path", s.path}};
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("config: expected a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!kTopKeys.count(k)) fail(k, "unknown key");
  }
  ExperimentConfig c;

  if (j.contains("time_scale")) c.time_scale = get_number(j["time_scale"], "time_scale");
  if (!(c.time_scale > 0.0)) fail("time_scale", "must be positive");

  const bool has_layers = j.contains("layers");
  const bool has_coeffs = j.contains("coefficients");
  if (has_layers == has_coeffs) {
    throw ValidationError("config: exactly one of 'layers' or 'coefficients' is required");
  }
  if (has_layers) {
    const json& L = j["layers"];
    if (!L.is_object()) fail("layers", "expected an object with top, core, bottom");
    for (const auto& [k, v] : L.items()) {
      if (k != "top" && k != "core" && k != "bottom") fail("layers." + k, "unknown key");
    }
    for (const char* k : {"top", "core", "bottom"}) {
      if (!L.contains(k)) fail(std::string("layers.") + k, "missing");
    }
    c.layers = LayerSet{parse_layer(L["top"], "layers.top"), parse_layer(L["core"], "layers.core"),
                        parse_layer(L["bottom"], "layers.bottom")};
  } else {
    const json& C = j["coefficients"];
    if (!C.is_object()) fail("coefficients", "expected an object with B, C, P");
    for (const auto& [k, v] : C.items()) {
      if (k != "B" && k != "C" && k != "P") fail("coefficients." + k, "unknown key");
    }
    BeamCoefficients bc;
    for (const char* k : {"B", "C", "P"}) {
      if (!C.contains(k)) fail(std::string("coefficients.") + k, "missing");
    }
    bc.B = get_number(C["B"], "coefficients.B");
    bc.C = get_number(C["C"], "coefficients.C");
    bc.P = get_number(C["P"], "coefficients.P");
    bc.time_scale = c.time_scale;
    validate(bc);
    c.coefficients = bc;
  }

  if (j.contains("N")) {
    const auto Ns = as_list(j["N"], "N", [](const json& v, const std::string& k) {
      const long long n = get_integer(v, k);
      if (n < 3 || n > 100000) fail(k, "N must lie in [3, 100000]");
      return static_cast<int>(n);
    });
    c.N = Ns;
  }
  if (c.N.empty()) fail("N", "at least one grid size is required");

  if (j.contains("schemes")) {
    c.schemes = as_list(j["schemes"], "schemes", [](const json& v, const std::string& k) {
      if (!v.is_string()) fail(k, "expected \"ORFD\" or \"FD\"");
      try {
        return parse_scheme(v.get<std::string>());
      } catch (const ValidationError& e) {
        fail(k, e.what());
      }
    });
  }
  if (c.schemes.empty()) fail("schemes", "at least one scheme is required");

  if (j.contains("xi")) {
    c.xi = as_list(j["xi"], "xi", [](const json& v, const std::string& k) {
      const double x = get_number(v, k);
      if (x < 0.0) fail(k, "feedback gain must be non-negative");
      return x;
    });
  }
  if (c.xi.empty()) fail("xi", "at least one gain is required");

  if (j.contains("T")) c.T = get_number(j["T"], "T");
  if (!(c.T > 0.0)) fail("T", "must be positive");
  if (j.contains("dt")) {
    c.dt = get_number(j["dt"], "dt");
    if (!(*c.dt > 0.0) || *c.dt > c.T) fail("dt", "must satisfy 0 < dt <= T");
  }
  if (j.contains("initial")) c.initial = parse_initial(j["initial"]);

  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0)) {
      fail("seed", "expected a non-negative integer");
    }
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("draws")) {
    const long long d = get_integer(j["draws"], "draws");
    if (d < 1 || d > 1000000) fail("draws", "must lie in [1, 1000000]");
    c.draws = static_cast<int>(d);
  }
  if (j.contains("snapshot_stride")) {
    c.snapshot_stride = static_cast<long>(get_integer(j["snapshot_stride"], "snapshot_stride"));
    if (c.snapshot_stride < 0) fail("snapshot_stride", "must be non-negative");
  }
  if (j.contains("output")) {
    if (!j["output"].is_string() || j["output"].get<std::string>().empty()) {
      fail("output", "expected a non-empty directory path");
    }
    c.output = j["output"].get<std::string>();
  }
  if (j.contains("workers")) {
    const long long w = get_integer(j["workers"], "workers");
    if (w < 1 || w > 1024) fail("workers", "must lie in [1, 1024]");
    c.workers = static_cast<int>(w);
  }
  if (j.contains("physical_time")) {
    if (!j["physical_time"].is_boolean()) fail("physical_time", "expected a boolean");
    c.physical_time = j["physical_time"].get<bool>();
  }
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  if (c.layers) {
    j["layers"] = {{"top", layer_to_json(c.layers->top)},
                   {"core", layer_to_json(c.layers->core)},
                   {"bottom", layer_to_json(c.layers->bottom)}};
  }
  if (c.coefficients) {
    j["coefficients"] = {{"B", c.coefficients->B}, {"C", c.coefficients->C}, {"P", c.coefficients->P}};
  }
  j["time_scale"] = c.time_scale;
  j["N"] = c.N;
  json schemes = json::array();
  for (Scheme s : c.schemes) schemes.push_back(to_string(s));
  j["schemes"] = schemes;
  j["xi"] = c.xi;
  j["T"] = c.T;
  if (c.dt) j["dt"] = *c.dt;
  j["initial"] = initial_to_json(c.initial);
  j["seed"] = c.seed;
  j["draws"] = c.draws;
  j["snapshot_stride"] = c.snapshot_stride;
  j["output"] = c.output;
  j["workers"] = c.workers;
  j["physical_time"] = c.physical_time;
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

void apply_override(json& j, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ValidationError("override '" + assignment + "' must have the form key=value");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  std::string pointer = "/" + key;
  for (char& ch : pointer) {
    if (ch == '.') ch = '/';
  }
  try {
    j[json::json_pointer(pointer)] = value;
  } catch (const json::exception& e) {
    throw ValidationError("override '" + key + "': " + e.what());
  }
}

BeamCoefficients resolve_coefficients(const ExperimentConfig& c) {
  if (c.coefficients) {
    BeamCoefficients b = *c.coefficients;
    b.time_scale = c.time_scale;
    return b;
  }
  if (!c.layers) throw ValidationError("config: no layers or coefficients");
  return derive_coefficients(c.layers->top, c.layers->core, c.layers->bottom, c.time_scale);
}

}  // namespace orfd
