/*
 Copyright 2026 The iterdeconv Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include "iterdeconv/experiment.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include <fmt/format.h>

#include "iterdeconv/analysis.hpp"
#include "iterdeconv/csv.hpp"

namespace iterdeconv {

namespace {

namespace fs = std::filesystem;

ExperimentConfig load_with_overrides(const fs::path& path, const CommandOptions& options) {
  ExperimentConfig c = load_config(path);
  if (options.snapshots) c.calibration.snapshots = *options.snapshots;
  if (options.oversampling) {
    if (*options.oversampling < 1) throw ConfigError("--oversampling must be >= 1");
    c.calibration.oversampling = *options.oversampling;
  }
  try {
    c.calibration.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
  return c;
}

void require_references(const ExperimentConfig& c, const fs::path& path) {
  if (c.references.empty())
    throw ConfigError(fmt::format("{}: at least one [reference] section is required", path.string()));
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

double overshoot_of(const FineTrajectory& traj, const DesiredSignal& desired) {
  return traj.max() - desired.amplitude();
}

}  // namespace

int cmd_calibrate(const fs::path& config_path, const CommandOptions& options, std::ostream& log,
                  std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig c = load_with_overrides(config_path, options);
    require_references(c, config_path);
    const Plant plant = c.build_plant();
    const auto desired = DesiredSignal::step(c.amplitude);

    std::ostringstream summary;
    summary << to_string(c);
    for (const auto& ref : c.references) {
      const fs::path dir = options.out_dir / ref.name;
      const TransferFunction reference = ref.build();
      const auto res = run_calibration(plant, reference, desired, c.calibration,
                                       c.initial_awg(c.tau, c.horizon));
      write_file(dir / "history.csv", [&](std::ostream& os) { write_history_csv(os, res.history); });
      write_file(dir / "final_awg.csv", [&](std::ostream& os) { write_csv(os, res.final_awg); });
      write_file(dir / "final_trajectory.csv",
                 [&](std::ostream& os) { write_csv(os, res.final_trajectory); });
      for (const auto& rec : res.history) {
        if (!rec.awg_snapshot) continue;
        write_file(dir / "snapshots" / fmt::format("awg_iter_{:04d}.csv", rec.index),
                   [&](std::ostream& os) { write_csv(os, *rec.awg_snapshot); });
      }

      summary << "\n[summary " << ref.name << "]\n";
      summary << "status = " << to_string(res.status) << '\n';
      summary << "iterations = " << res.iterations() << '\n';
      summary << "sampled_error = " << format_real(res.last().sampled_error) << '\n';
      summary << "continuous_error = " << format_real(res.last().continuous_error) << '\n';
      summary << "overshoot = " << format_real(overshoot_of(res.final_trajectory, desired)) << '\n';
      summary << "awg_max_abs = " << format_real(res.final_awg.max_abs()) << '\n';

      try {
        const auto base = deconvolution_baseline(plant, reference, desired, c.tau, c.horizon,
                                                 c.calibration.oversampling, c.calibration.inverse);
        write_file(dir / "baseline_trajectory.csv",
                   [&](std::ostream& os) { write_csv(os, base.final_trajectory); });
        summary << "baseline_sampled_error = " << format_real(base.last().sampled_error) << '\n';
        summary << "baseline_continuous_error = " << format_real(base.last().continuous_error)
                << '\n';
        summary << "baseline_overshoot = "
                << format_real(overshoot_of(base.final_trajectory, desired)) << '\n';
      } catch (const InverseGrowthError&) {
        summary << "baseline_status = diverged\n";
      }

      log << fmt::format("{}: {} after {} iterations, sampled error {:.3e}, continuous error {:.3e}\n",
                         ref.name, to_string(res.status), res.iterations(),
                         res.last().sampled_error, res.last().continuous_error);
    }
    write_file(options.out_dir / "summary.ini", [&](std::ostream& os) { os << summary.str(); });
    return kExitOk;
  });
}

int cmd_sweep(const fs::path& config_path, const CommandOptions& options, std::ostream& log,
              std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig c = load_with_overrides(config_path, options);
    if (c.sweep_T1.empty() || c.sweep_T2.empty())
      throw ConfigError(fmt::format("{}: [sweep] needs T1 and T2", config_path.string()));
    const SweepGrid grid = sweep_second_order(c.sweep_T1, c.sweep_T2, c.tau, c.horizon, c.calibration);
    write_file(options.out_dir / "overshoot.csv", [&](std::ostream& os) {
      write_sweep_csv(os, grid.T1_values, grid.T2_values, grid.overshoot);
    });
    write_file(options.out_dir / "decay_time.csv", [&](std::ostream& os) {
      write_sweep_csv(os, grid.T1_values, grid.T2_values, grid.decay_time);
    });
    write_file(options.out_dir / "summary.ini", [&](std::ostream& os) {
      os << to_string(c) << "\n[summary sweep]\nfailed_cells = " << grid.failed_cells << '\n';
    });
    log << fmt::format("sweep: {}x{} cells, {} failed\n", grid.T1_values.size(),
                       grid.T2_values.size(), grid.failed_cells);
    return kExitOk;
  });
}

int cmd_stability(const fs::path& config_path, const CommandOptions& options, std::ostream& log,
                  std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig c = load_with_overrides(config_path, options);
    require_references(c, config_path);
    const TransferFunction plant = c.plant.build();
    std::ostringstream table;
    table << "model,max_abs_difference,stable_prediction,verdict,sampled_contraction_peak\n";
    for (const auto& ref : c.references) {
      const TransferFunction reference = ref.build();
      const auto cmp = phase_stability_check(plant, reference, c.tau, c.horizon);
      const double peak = sampled_contraction_peak(plant, reference, c.tau,
                                                   c.calibration.learning_rate, c.calibration.inverse);
      write_file(options.out_dir / fmt::format("phase_{}.csv", ref.name),
                 [&](std::ostream& os) { write_phase_csv(os, cmp); });
      table << ref.name << ',' << format_real(cmp.max_abs_difference) << ','
            << (cmp.stable_prediction ? "true" : "false") << ',' << to_string(cmp.verdict) << ','
            << format_real(peak) << '\n';
      log << fmt::format("{}: max phase difference {:.2f} deg, {}\n", ref.name,
                         cmp.max_abs_difference, to_string(cmp.verdict));
    }
    write_file(options.out_dir / "verdicts.csv", [&](std::ostream& os) { os << table.str(); });
    return kExitOk;
  });
}

int cmd_ramsey(const fs::path& config_path, const CommandOptions& options, std::ostream& log,
               std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig c = load_with_overrides(config_path, options);
    require_references(c, config_path);
    if (c.ramsey_taus.empty())
      throw ConfigError(fmt::format("{}: [ramsey] needs taus", config_path.string()));
    const Plant plant = c.build_plant();
    const TransferFunction reference = c.references.front().build();
    const auto desired = DesiredSignal::step(c.amplitude);

    std::ostringstream table;
    table << "tau,horizon,iterative_terminal,baseline_terminal\n";
    for (double tau : c.ramsey_taus) {
      const int n = static_cast<int>(std::round(c.ramsey_duration / tau));
      if (n < 1) throw ConfigError(fmt::format("ramsey: tau {} exceeds the duration", tau));
      const auto res =
          run_calibration(plant, reference, desired, c.calibration, c.initial_awg(tau, n));
      const auto base = deconvolution_baseline(plant, reference, desired, tau, n,
                                               c.calibration.oversampling, c.calibration.inverse);
      const auto it_dev = phase_deviation(res.final_trajectory, desired);
      const auto base_dev = phase_deviation(base.final_trajectory, desired);
      write_file(options.out_dir / fmt::format("ramsey_tau_{}.csv", format_real(tau)),
                 [&](std::ostream& os) {
                   os << "t,iterative,baseline\n";
                   for (std::size_t i = 0; i < it_dev.size(); ++i)
                     os << format_real(it_dev.time(i)) << ',' << format_real(it_dev[i]) << ','
                        << format_real(base_dev[i]) << '\n';
                 });
      const double it_end = it_dev.values().back();
      const double base_end = base_dev.values().back();
      table << format_real(tau) << ',' << n << ',' << format_real(it_end) << ','
            << format_real(base_end) << '\n';
      log << fmt::format("tau {}: terminal phase deviation {:.3e} (iterative) vs {:.3e} (baseline)\n",
                         tau, it_end, base_end);
    }
    write_file(options.out_dir / "ramsey_summary.csv", [&](std::ostream& os) { os << table.str(); });
    return kExitOk;
  });
}

int run_command(std::string_view command, const fs::path& config_path,
                const CommandOptions& options, std::ostream& log, std::ostream& err) {
  if (command == "calibrate") return cmd_calibrate(config_path, options, log, err);
  if (command == "sweep") return cmd_sweep(config_path, options, log, err);
  if (command == "stability") return cmd_stability(config_path, options, log, err);
  if (command == "ramsey") return cmd_ramsey(config_path, options, log, err);
  err << "unknown command '" << command << "'\n";
  return kExitConfigError;
}

}  // namespace iterdeconv
