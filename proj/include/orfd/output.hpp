#pragma once

#include <string>

#include <json.hpp>

#include "orfd/dynamics.hpp"
#include "orfd/spectral.hpp"

namespace orfd {

/// printf "%.17g": round-trips every double and is locale independent.
std::string format_double(double v);
/// Shortest round-trip text for file names ("0", "5", "0.25").
std::string format_tag(double v);

/// Columns re,im.
void write_spectrum_csv(const std::string& path, const SpectrumReport& report);
/// Columns t,energy,sensor.  Times are divided by time_factor.
void write_trajectory_csv(const std::string& path, const TrajectoryRecord& rec,
                          double time_factor = 1.0);
/// Columns t,z0..z{N+1}.
void write_snapshots_csv(const std::string& path, const TrajectoryRecord& rec,
                         double time_factor = 1.0);
/// Columns x,z,zdot, one row per node.
void write_state_csv(const std::string& path, const Grid& grid, const BeamState& state);
/// Reads the write_state_csv format; throws ValidationError on malformed input.
BeamState read_state_csv(const std::string& path, const Grid& grid);

/// Pretty-printed with a trailing newline.
void write_json(const std::string& path, const nlohmann::json& j);

nlohmann::json to_json(const SpectrumReport& r);
nlohmann::json to_json(const ObservabilityCertificate& c);

}  // namespace orfd
