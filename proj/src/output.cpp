#include "orfd/output.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "orfd/errors.hpp"

namespace orfd {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_tag(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  return out;
}

}  // namespace

void write_spectrum_csv(const std::string& path, const SpectrumReport& report) {
  auto out = open_out(path);
  out << "re,im\n";
  for (const auto& v : report.eigenvalues) {
    out << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
  }
}

void write_trajectory_csv(const std::string& path, const TrajectoryRecord& rec, double time_factor) {
  auto out = open_out(path);
  out << "t,energy,sensor\n";
  for (std::size_t k = 0; k < rec.times.size(); ++k) {
    out << format_double(rec.times[k] / time_factor) << ',' << format_double(rec.energies[k]) << ','
        << format_double(rec.sensor[k]) << '\n';
  }
}

void write_snapshots_csv(const std::string& path, const TrajectoryRecord& rec, double time_factor) {
  auto out = open_out(path);
  out << 't';
  for (int i = 0; i <= rec.N + 1; ++i) out << ",z" << i;
  out << '\n';
  for (const auto& s : rec.snapshots) {
    out << format_double(s.t / time_factor);
    for (Eigen::Index i = 0; i < s.z.size(); ++i) out << ',' << format_double(s.z(i));
    out << '\n';
  }
}

void write_state_csv(const std::string& path, const Grid& grid, const BeamState& state) {
  validate_state(state, grid);
  auto out = open_out(path);
  out << "x,z,zdot\n";
  for (int i = 0; i <= grid.N() + 1; ++i) {
    out << format_double(grid.x(i)) << ',' << format_double(state.z(i)) << ','
        << format_double(state.zdot(i)) << '\n';
  }
}

BeamState read_state_csv(const std::string& path, const Grid& grid) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open snapshot '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,z,zdot", 0) != 0) {
    throw ValidationError("snapshot '" + path + "' must start with the header x,z,zdot");
  }
  std::vector<double> z, zd;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw ValidationError("snapshot '" + path + "' row " + std::to_string(row) + ": bad number");
      }
    }
    if (vals.size() != 3) {
      throw ValidationError("snapshot '" + path + "' row " + std::to_string(row) + ": expected 3 columns");
    }
    z.push_back(vals[1]);
    zd.push_back(vals[2]);
  }
  const std::size_t n = static_cast<std::size_t>(grid.N()) + 2;
  if (z.size() != n) {
    throw ValidationError("snapshot '" + path + "' has " + std::to_string(z.size()) +
                          " nodes, grid needs " + std::to_string(n));
  }
  BeamState s = zero_state(grid);
  for (std::size_t i = 0; i < n; ++i) {
    s.z(static_cast<Eigen::Index>(i)) = z[i];
    s.zdot(static_cast<Eigen::Index>(i)) = zd[i];
  }
  validate_state(s, grid);
  return s;
}

void write_json(const std::string& path, const nlohmann::json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

nlohmann::json to_json(const SpectrumReport& r) {
  return {{"scheme", to_string(r.scheme)}, {"N", r.N},
          {"xi", r.xi},                    {"eigenvalue_count", r.eigenvalues.size()},
          {"min_gap", r.min_gap},          {"top_gap", r.top_gap},
          {"max_real", r.max_real},        {"spectral_radius", r.spectral_radius},
          {"qr_sweeps", r.iterations}};
}

nlohmann::json to_json(const ObservabilityCertificate& c) {
  return {{"N", c.N},
          {"T", c.T},
          {"dt", c.dt},
          {"integral", c.integral},
          {"integral_half_step", c.integral_half},
          {"quadrature_error", c.quadrature_error},
          {"E0", c.E0},
          {"theorem_bound", c.theorem_bound},
          {"condition_margin", c.condition_margin},
          {"condition_holds", c.condition_holds},
          {"satisfied", c.satisfied}};
}

}  // namespace orfd
