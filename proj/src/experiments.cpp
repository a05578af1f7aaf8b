#include "orfd/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <thread>
#include <vector>

#include "orfd/dynamics.hpp"
#include "orfd/errors.hpp"
#include "orfd/output.hpp"
#include "orfd/spectral.hpp"

namespace orfd {

using nlohmann::json;
namespace fs = std::filesystem;

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& task) {
  const std::size_t nthreads = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(workers, 1)));
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) task(i);
    });
  }
  for (auto& th : pool) th.join();
}

namespace {

struct SweepItem {
  Scheme scheme;
  int N;
  double xi;
};

std::vector<SweepItem> sweep(const ExperimentConfig& c) {
  std::vector<SweepItem> items;
  for (Scheme s : c.schemes) {
    for (int N : c.N) {
      for (double xi : c.xi) items.push_back({s, N, xi});
    }
  }
  return items;
}

std::string item_tag(const SweepItem& it) {
  return to_string(it.scheme) + "-" + std::to_string(it.N) + "-" + format_tag(it.xi);
}

void prepare_output(const ExperimentConfig& c) {
  std::error_code ec;
  fs::create_directories(c.output, ec);
  if (ec || !fs::is_directory(c.output)) {
    throw ValidationError("output: cannot create directory '" + c.output + "'");
  }
}

json header(const std::string& command, const ExperimentConfig& c, const BeamCoefficients& bc) {
  return {{"command", command},
          {"seed", c.seed},
          {"config", config_to_json(c)},
          {"coefficients", {{"B", bc.B}, {"C", bc.C}, {"P", bc.P}, {"time_scale", bc.time_scale}}}};
}

// Runs one item, turning library errors into a JSON error record.
template <typename F>
json guarded(const F& body, int& code) {
  try {
    return body();
  } catch (const ValidationError& e) {
    code = kExitValidation;
    return {{"error", e.what()}, {"error_kind", "validation"}};
  } catch (const std::exception& e) {
    code = kExitNumerical;
    return {{"error", e.what()}, {"error_kind", "numerical"}};
  }
}

CommandResult finish(const std::string& command, const ExperimentConfig& c, json summary,
                     const std::vector<int>& codes) {
  int exit_code = kExitOk;
  for (int code : codes) exit_code = std::max(exit_code, code);
  if (exit_code == kExitValidation) {
    for (int code : codes) {
      if (code == kExitNumerical) exit_code = kExitNumerical;
    }
  }
  summary["ok"] = exit_code == kExitOk;
  write_json((fs::path(c.output) / (command + "-summary.json")).string(), summary);
  return {summary, exit_code};
}

BeamState initial_state(const ExperimentConfig& c, const Grid& grid, std::uint64_t seed) {
  switch (c.initial.kind) {
    case InitialSpec::Kind::Box:
      return make_box_initial(grid, c.initial.amplitude, c.initial.a, c.initial.b);
    case InitialSpec::Kind::Random:
      return make_random_initial(grid, seed, c.initial.amplitude);
    case InitialSpec::Kind::Snapshot:
      break;
  }
  return read_state_csv(c.initial.path, grid);
}

void check_snapshot_grids(const ExperimentConfig& c) {
  if (c.initial.kind != InitialSpec::Kind::Snapshot) return;
  for (int N : c.N) read_state_csv(c.initial.path, Grid(N));
}

}  // namespace

CommandResult cmd_derive_params(const ExperimentConfig& c) {
  const BeamCoefficients bc = resolve_coefficients(c);
  prepare_output(c);
  json summary = header("derive-params", c, bc);
  summary["source"] = c.layers ? "layers" : "coefficients";
  json shear = json::array();
  for (int N : c.N) {
    const Grid g(N);
    const ShearCondition sc = large_shear_condition(bc, g.h());
    shear.push_back({{"N", N}, {"h", g.h()}, {"margin", sc.margin}, {"holds", sc.holds}});
  }
  summary["large_shear"] = shear;
  summary["pde_observability_bound"] = {{"T", c.T}, {"L", 1.0}, {"bound", pde_observability_bound(c.T, 1.0)}};
  return finish("derive-params", c, summary, {});
}

CommandResult cmd_spectrum(const ExperimentConfig& c) {
  const BeamCoefficients bc = resolve_coefficients(c);
  for (int N : c.N) require_assembly_size(Grid(N));
  prepare_output(c);
  const auto items = sweep(c);
  std::vector<json> results(items.size());
  std::vector<int> codes(items.size(), kExitOk);

  parallel_for(items.size(), c.workers, [&](std::size_t i) {
    const SweepItem& it = items[i];
    results[i] = guarded(
        [&] {
          const OperatorBundle b = assemble(it.scheme, bc, Grid(it.N), it.xi);
          const SpectrumReport r = spectrum_report(b);
          const std::string file = "spectrum-" + item_tag(it) + ".csv";
          write_spectrum_csv((fs::path(c.output) / file).string(), r);
          json j = to_json(r);
          j["file"] = file;
          return j;
        },
        codes[i]);
    results[i]["scheme"] = to_string(it.scheme);
    results[i]["N"] = it.N;
    results[i]["xi"] = it.xi;
  });

  json summary = header("spectrum", c, bc);
  summary["results"] = results;
  // min_gap trend over the configured N order, per (scheme, xi).
  json trends = json::array();
  for (Scheme s : c.schemes) {
    for (double xi : c.xi) {
      std::vector<double> gaps;
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].scheme == s && items[i].xi == xi && results[i].contains("min_gap")) {
          gaps.push_back(results[i]["min_gap"].get<double>());
        }
      }
      bool decreasing = gaps.size() >= 2;
      for (std::size_t k = 1; k < gaps.size(); ++k) decreasing = decreasing && gaps[k] < gaps[k - 1];
      trends.push_back({{"scheme", to_string(s)}, {"xi", xi}, {"min_gap", gaps},
                        {"min_gap_strictly_decreasing", decreasing}});
    }
  }
  summary["trends"] = trends;
  return finish("spectrum", c, summary, codes);
}

CommandResult cmd_simulate(const ExperimentConfig& c) {
  const BeamCoefficients bc = resolve_coefficients(c);
  for (int N : c.N) require_assembly_size(Grid(N));
  step_count(c.T, c.effective_dt());
  check_snapshot_grids(c);
  prepare_output(c);
  const auto items = sweep(c);
  std::vector<json> results(items.size());
  std::vector<int> codes(items.size(), kExitOk);
  const double time_factor = c.physical_time ? c.time_scale : 1.0;

  parallel_for(items.size(), c.workers, [&](std::size_t i) {
    const SweepItem& it = items[i];
    results[i] = guarded(
        [&] {
          const Grid grid(it.N);
          const OperatorBundle b = assemble(it.scheme, bc, grid, it.xi);
          const BeamState s0 = initial_state(c, grid, c.seed);
          const TrajectoryRecord rec = simulate(b, s0, c.T, c.effective_dt(), c.snapshot_stride);
          const std::string tag = item_tag(it);
          const std::string traj = "trajectory-" + tag + ".csv";
          const std::string init = "initial-" + tag + ".csv";
          write_trajectory_csv((fs::path(c.output) / traj).string(), rec, time_factor);
          write_state_csv((fs::path(c.output) / init).string(), grid, s0);
          json j;
          j["file"] = traj;
          j["initial_file"] = init;
          if (c.snapshot_stride > 0) {
            const std::string snap = "snapshots-" + tag + ".csv";
            write_snapshots_csv((fs::path(c.output) / snap).string(), rec, time_factor);
            j["snapshot_file"] = snap;
          }
          double max_sensor = 0.0;
          for (double v : rec.sensor) max_sensor = std::max(max_sensor, std::abs(v));
          const double e0 = rec.energies.front();
          const double eT = rec.energies.back();
          j["dt"] = rec.dt;
          j["steps"] = rec.steps;
          j["E0"] = e0;
          j["ET"] = eT;
          j["energy_ratio"] = e0 > 0.0 ? json(eT / e0) : json(nullptr);
          j["max_abs_sensor"] = max_sensor;
          j["large_shear_margin"] = large_shear_condition(bc, grid.h()).margin;
          return j;
        },
        codes[i]);
    results[i]["scheme"] = to_string(it.scheme);
    results[i]["N"] = it.N;
    results[i]["xi"] = it.xi;
  });

  json summary = header("simulate", c, bc);
  summary["time_unit"] = c.physical_time ? "physical" : "rescaled";
  summary["results"] = results;
  return finish("simulate", c, summary, codes);
}

CommandResult cmd_observability(const ExperimentConfig& c) {
  const BeamCoefficients bc = resolve_coefficients(c);
  for (double xi : c.xi) {
    if (xi != 0.0) throw ValidationError("xi: the observability certificate requires xi = 0");
  }
  if (!(c.T > 6.0)) throw ValidationError("T: the observability certificate requires T > 6");
  for (int N : c.N) require_assembly_size(Grid(N));
  step_count(c.T, c.effective_dt());
  check_snapshot_grids(c);
  prepare_output(c);

  struct Item {
    Scheme scheme;
    int N;
    std::uint64_t seed;
  };
  const int draws = c.initial.kind == InitialSpec::Kind::Random ? c.draws : 1;
  std::vector<Item> items;
  for (Scheme s : c.schemes) {
    for (int N : c.N) {
      for (int d = 0; d < draws; ++d) items.push_back({s, N, c.seed + static_cast<std::uint64_t>(d)});
    }
  }
  std::vector<json> results(items.size());
  std::vector<int> codes(items.size(), kExitOk);

  parallel_for(items.size(), c.workers, [&](std::size_t i) {
    const Item& it = items[i];
    results[i] = guarded(
        [&] {
          const Grid grid(it.N);
          const OperatorBundle b = assemble(it.scheme, bc, grid, 0.0);
          const BeamState s0 = initial_state(c, grid, it.seed);
          return to_json(observability_certificate(b, s0, c.T, c.effective_dt()));
        },
        codes[i]);
    results[i]["scheme"] = to_string(it.scheme);
    results[i]["N"] = it.N;
    results[i]["seed"] = it.seed;
  });

  bool all = true;
  for (const auto& r : results) all = all && r.value("satisfied", false);
  json summary = header("observability", c, bc);
  summary["certificates"] = results;
  summary["all_satisfied"] = all;
  return finish("observability", c, summary, codes);
}

CommandResult run_command(const std::string& name, const ExperimentConfig& config) {
  if (name == "derive-params") return cmd_derive_params(config);
  if (name == "spectrum") return cmd_spectrum(config);
  if (name == "simulate") return cmd_simulate(config);
  if (name == "observability") return cmd_observability(config);
  throw ValidationError("unknown command '" + name + "'");
}

}  // namespace orfd
