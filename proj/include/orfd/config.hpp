#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orfd/beam_model.hpp"
#include "orfd/operators.hpp"

namespace orfd {

struct InitialSpec {
  enum class Kind { Box, Random, Snapshot };
  Kind kind = Kind::Box;
  double amplitude = 1e-3;
  double a = 0.25;
  double b = 0.75;
  /// CSV with columns x,z,zdot (snapshot kind only).
  std::string path;

  bool operator==(const InitialSpec&) const = default;
};

struct LayerSet {
  LayerSpec top, core, bottom;
  bool operator==(const LayerSet&) const = default;
};

/// One experiment file.  Exactly one of layers / coefficients is present.
struct ExperimentConfig {
  std::optional<LayerSet> layers;
  std::optional<BeamCoefficients> coefficients;
  double time_scale = kDefaultTimeScale;
  std::vector<int> N{20};
  std::vector<Scheme> schemes{Scheme::ORFD};
  std::vector<double> xi{0.0};
  double T = 10.0;
  /// Defaults to T / 4096.
  std::optional<double> dt;
  InitialSpec initial;
  std::uint64_t seed = 1;
  int draws = 1;
  long snapshot_stride = 0;
  std::string output = "out";
  int workers = 1;
  bool physical_time = false;

  bool operator==(const ExperimentConfig&) const = default;

  double effective_dt() const { return dt ? *dt : T / 4096.0; }
};

/// Parses and validates; throws ValidationError naming the offending key.
/// Scalars are accepted where lists are expected (N, schemes, xi).
ExperimentConfig config_from_json(const nlohmann::json& j);
/// Normalized form; config_from_json(config_to_json(c)) == c.
nlohmann::json config_to_json(const ExperimentConfig& c);

ExperimentConfig load_config(const std::string& path);

/// Applies "key=value" where key may be dotted (initial.amplitude) and value
/// is parsed as JSON, falling back to a plain string.
void apply_override(nlohmann::json& j, const std::string& assignment);

/// Coefficients from layers (with time_scale) or the direct override.
BeamCoefficients resolve_coefficients(const ExperimentConfig& c);

}  // namespace orfd
