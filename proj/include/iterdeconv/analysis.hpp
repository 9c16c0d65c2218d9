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
#ifndef ITERDECONV_ANALYSIS_HPP
#define ITERDECONV_ANALYSIS_HPP

#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "iterdeconv/ilc.hpp"
#include "iterdeconv/lti.hpp"
#include "iterdeconv/signal.hpp"

namespace iterdeconv {

enum class StabilityVerdict { kStable, kMarginal, kUnstable };

std::string_view to_string(StabilityVerdict verdict);

struct PhaseComparison {
  std::vector<double> frequencies;  // rad / time, ascending
  std::vector<double> phase_true;   // degrees, unwrapped
  std::vector<double> phase_model;  // degrees, unwrapped
  std::vector<double> difference;   // phase_model - phase_true
  double max_abs_difference = 0.0;
  /// max_abs_difference < 90.
  bool stable_prediction = true;
  /// kMarginal when max_abs_difference is within the guard band around 90.
  StabilityVerdict verdict = StabilityVerdict::kStable;
};

/// Compares the continuous-time phases of G(iw) and Gbar(iw) on a log grid over
/// [2 pi / (10 N tau), pi / tau].
PhaseComparison phase_stability_check(const TransferFunction& true_plant,
                                      const TransferFunction& reference, double tau, int horizon,
                                      int points = 200, double guard_band_deg = 10.0);

/// max over theta in [0, pi] of |1 - beta G_d(e^{i theta}) / Gbar_d(e^{i theta})|,
/// with Gbar_d the sampled model actually inverted under `mode`. Values below 1
/// mean every error frequency contracts on long horizons.
double sampled_contraction_peak(const TransferFunction& true_plant,
                                const TransferFunction& reference, double tau, double beta,
                                InverseMode mode = InverseMode::kMinimumPhase, int points = 512);

/// Parameters of f(t) = target + A exp(-t / decay_time) sin(2 pi t / period).
struct OscillationFit {
  double overshoot_amplitude = 0.0;
  double decay_time = 0.0;
  double period = 0.0;
  /// RMS of the fit over the points used.
  double residual = 0.0;
  int extrema = 0;
};

/// Fits the inter-sample oscillation after the first sampling period. Returns
/// nullopt ("no oscillation") when fewer than three extrema of u - target
/// exceed 1e-9 in magnitude, or when they do not decay.
std::optional<OscillationFit> fit_oscillation(const FineTrajectory& traj, double settle_target);

struct SweepGrid {
  std::vector<double> T1_values;
  std::vector<double> T2_values;
  /// Rows follow T1, columns follow T2. max(u) - 1 of the calibrated signal.
  Eigen::MatrixXd overshoot;
  /// Fitted decay time; 0 where no oscillation is detected.
  Eigen::MatrixXd decay_time;
  /// Cells whose calibration diverged or hit the amplitude guard (set to NaN).
  int failed_cells = 0;
};

/// Calibrates 1/((T1 s + 1)(T2 s + 1)) with itself as reference for every grid
/// cell, in parallel. Throws std::invalid_argument for non-positive time
/// constants.
SweepGrid sweep_second_order(std::span<const double> T1_values, std::span<const double> T2_values,
                             double tau, int horizon, const CalibrationConfig& config);

struct FirstOrderExactness {
  /// max |u(t) - 1| over the fine grid for t in (tau, N tau].
  double max_deviation = 0.0;
  /// R_1 of the calibrated signal and the closed-form value 1/h(tau).
  double first_level = 0.0;
  double expected_first_level = 0.0;
  /// max |R_k - R_2| over k >= 2.
  double level_spread = 0.0;
};

/// Calibrates 1/(T s + 1) with itself as reference. T = 0 means the identity system.
FirstOrderExactness first_order_exactness(double T, double tau, int horizon,
                                          const CalibrationConfig& config);

/// Header row `T1\T2,<T2 values>`, then one row per T1.
void write_sweep_csv(std::ostream& os, std::span<const double> T1_values,
                     std::span<const double> T2_values, const Eigen::MatrixXd& grid);

/// Columns `omega,phase_true,phase_model,difference`.
void write_phase_csv(std::ostream& os, const PhaseComparison& cmp);

}  // namespace iterdeconv

#endif  // ITERDECONV_ANALYSIS_HPP
