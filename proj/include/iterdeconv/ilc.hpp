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
#ifndef ITERDECONV_ILC_HPP
#define ITERDECONV_ILC_HPP

#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "iterdeconv/lifted.hpp"
#include "iterdeconv/plant.hpp"
#include "iterdeconv/signal.hpp"

namespace iterdeconv {

enum class SnapshotPolicy {
  /// AWG snapshots for iterations 0, 2 and the last one.
  kSparse,
  kAll,
};

struct CalibrationConfig {
  double learning_rate = 0.5;
  int max_iterations = 100;
  /// Stop once the sampled error drops to or below this value.
  double sample_error_tolerance = 1e-12;
  /// Stop once the sampled error exceeds this multiple of the initial one.
  double divergence_factor = 1e3;
  /// |r| is clipped to this bound; the run stops when the clip binds.
  double amplitude_guard = 1e6;
  int oversampling = 20;
  InverseMode inverse = InverseMode::kMinimumPhase;
  SnapshotPolicy snapshots = SnapshotPolicy::kSparse;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

enum class CalibrationStatus { kConverged, kMaxIterations, kDiverged, kAmplitudeCapped };

std::string_view to_string(CalibrationStatus status);

struct IterationRecord {
  int index = 0;
  double sampled_error = 0.0;
  /// Sum of (u - u_d) at the sample points times tau, no absolute values.
  double signed_sampled_error = 0.0;
  double continuous_error = 0.0;
  std::optional<AwgSignal> awg_snapshot;
};

struct CalibrationResult {
  AwgSignal final_awg;
  FineTrajectory final_trajectory;
  std::vector<IterationRecord> history;
  CalibrationStatus status = CalibrationStatus::kMaxIterations;

  const IterationRecord& last() const { return history.back(); }
  /// Number of learning updates applied.
  int iterations() const { return history.back().index; }
};

/// r' = r + beta * deconvolve(inverse_model, error_samples).
AwgSignal ilc_update(const AwgSignal& r, std::span<const double> error_samples,
                     const LiftedModel& inverse_model, double beta);

/**
 * Iterative deconvolution against a simulated plant.
 *
 * Each iteration simulates the current AWG signal, measures u_d - u at the
 * sample points and applies ilc_update with the (possibly minimum-phase
 * counterpart of the) lifted reference model. Stop conditions are checked in
 * the order tolerance, amplitude guard, divergence factor, max iterations.
 * Throws only for invalid input; a failing run is reported through `status`.
 */
CalibrationResult run_calibration(const Plant& plant, const TransferFunction& reference,
                                  const DesiredSignal& desired, const CalibrationConfig& config,
                                  const AwgSignal& initial_awg);

/// One-shot deconvolution r = Lbar^-1 u_d, simulated once. The single history
/// record has index 0; status is kConverged when its sampled error is <= 1e-10.
CalibrationResult deconvolution_baseline(const Plant& plant, const TransferFunction& reference,
                                         const DesiredSignal& desired, double tau, int horizon,
                                         int oversampling,
                                         InverseMode mode = InverseMode::kMinimumPhase);

/// Spectral radius of the lifted error map I - beta L_G Lbar^-1.
double error_contraction_check(const TransferFunction& plant_model,
                               const TransferFunction& reference, double tau, int horizon,
                               double beta, InverseMode mode = InverseMode::kMinimumPhase);

/// Columns `iteration,sampled_error,continuous_error`.
void write_history_csv(std::ostream& os, std::span<const IterationRecord> history);

}  // namespace iterdeconv

#endif  // ITERDECONV_ILC_HPP
