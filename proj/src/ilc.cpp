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
#include "iterdeconv/ilc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "iterdeconv/csv.hpp"

namespace iterdeconv {

void CalibrationConfig::validate() const {
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string(name) + " must be positive and finite");
    }
  };
  positive(learning_rate, "learning_rate");
  positive(divergence_factor, "divergence_factor");
  positive(amplitude_guard, "amplitude_guard");
  if (!(sample_error_tolerance >= 0.0)) {
    throw std::invalid_argument("sample_error_tolerance must be non-negative");
  }
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (oversampling < 1) throw std::invalid_argument("oversampling must be >= 1");
}

std::string_view to_string(CalibrationStatus status) {
  switch (status) {
    case CalibrationStatus::kConverged: return "converged";
    case CalibrationStatus::kMaxIterations: return "max_iterations";
    case CalibrationStatus::kDiverged: return "diverged";
    case CalibrationStatus::kAmplitudeCapped: return "amplitude_capped";
  }
  return "unknown";
}

AwgSignal ilc_update(const AwgSignal& r, std::span<const double> error_samples,
                     const LiftedModel& inverse_model, double beta) {
  if (static_cast<int>(error_samples.size()) != r.periods()) {
    throw std::invalid_argument("ilc_update: error length does not match the AWG signal");
  }
  const std::vector<double> correction = deconvolve(inverse_model, error_samples);
  std::vector<double> next = r.values();
  for (std::size_t k = 0; k < next.size(); ++k) next[k] += beta * correction[k];
  return AwgSignal(std::move(next), r.period());
}

namespace {

bool finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

struct Measurement {
  FineTrajectory trajectory;
  std::vector<double> samples;
  IterationRecord record;
};

Measurement measure(const PlantSimulator& sim, const AwgSignal& r, const DesiredSignal& desired,
                    std::span<const double> ud, int index) {
  FineTrajectory traj = sim.run(r);
  std::vector<double> us = sample_at_awg_points(traj);
  IterationRecord rec;
  rec.index = index;
  rec.sampled_error = sampled_error(us, ud, r.period());
  rec.signed_sampled_error = signed_sampled_error(us, ud, r.period());
  rec.continuous_error = continuous_error(traj, desired);
  return {std::move(traj), std::move(us), std::move(rec)};
}

}  // namespace

CalibrationResult run_calibration(const Plant& plant, const TransferFunction& reference,
                                  const DesiredSignal& desired, const CalibrationConfig& config,
                                  const AwgSignal& initial_awg) {
  config.validate();
  const int n = initial_awg.periods();
  const double tau = initial_awg.period();
  const PlantSimulator sim(plant, tau, config.oversampling);
  const LiftedModel inverse = inversion_model(build_lifted(reference, tau, n), config.inverse);
  if (!inverse.invertible()) {
    throw SingularModelError("reference model is not invertible on the AWG grid");
  }
  const std::vector<double> ud = desired.samples(tau, n);

  AwgSignal r = initial_awg;
  AwgSignal recorded = initial_awg;
  bool capped = false;
  std::optional<Measurement> current;
  std::vector<IterationRecord> history;
  CalibrationStatus status = CalibrationStatus::kMaxIterations;

  for (int k = 0;; ++k) {
    Measurement m = measure(sim, r, desired, ud, k);
    if (!finite(m.trajectory.values()) || !finite(m.samples) || !std::isfinite(m.record.continuous_error)) {
      status = CalibrationStatus::kDiverged;
      break;
    }
    if (config.snapshots == SnapshotPolicy::kAll || k == 0 || k == 2) m.record.awg_snapshot = r;
    history.push_back(m.record);
    current = std::move(m);
    recorded = r;
    const double err = history.back().sampled_error;

    if (err <= config.sample_error_tolerance) {
      status = CalibrationStatus::kConverged;
      break;
    }
    if (capped) {
      status = CalibrationStatus::kAmplitudeCapped;
      break;
    }
    if (err > config.divergence_factor * history.front().sampled_error) {
      status = CalibrationStatus::kDiverged;
      break;
    }
    if (k >= config.max_iterations) {
      status = CalibrationStatus::kMaxIterations;
      break;
    }

    std::vector<double> error(n);
    for (int i = 0; i < n; ++i) error[i] = ud[i] - current->samples[i];
    AwgSignal next = r;
    try {
      next = ilc_update(r, error, inverse, config.learning_rate);
    } catch (const InverseGrowthError&) {
      status = CalibrationStatus::kDiverged;
      break;
    }
    if (!finite(next.values())) {
      status = CalibrationStatus::kDiverged;
      break;
    }
    if (next.max_abs() > config.amplitude_guard) {
      std::vector<double> clipped = next.values();
      for (double& v : clipped) v = std::clamp(v, -config.amplitude_guard, config.amplitude_guard);
      next = AwgSignal(std::move(clipped), tau);
      capped = true;
    }
    r = std::move(next);
  }

  // A non-finite first measurement leaves nothing to report but the input.
  if (!current) {
    throw std::invalid_argument("initial AWG signal produces a non-finite response");
  }
  if (!history.back().awg_snapshot) history.back().awg_snapshot = recorded;
  return CalibrationResult{std::move(recorded), std::move(current->trajectory), std::move(history),
                           status};
}

CalibrationResult deconvolution_baseline(const Plant& plant, const TransferFunction& reference,
                                         const DesiredSignal& desired, double tau, int horizon,
                                         int oversampling, InverseMode mode) {
  const LiftedModel lifted = build_lifted(reference, tau, horizon);
  const std::vector<double> ud = desired.samples(tau, horizon);
  AwgSignal r(invert(lifted, ud, mode), tau);
  const PlantSimulator sim(plant, tau, oversampling);
  Measurement m = measure(sim, r, desired, ud, 0);
  m.record.awg_snapshot = r;
  const CalibrationStatus status = m.record.sampled_error <= 1e-10
                                       ? CalibrationStatus::kConverged
                                       : CalibrationStatus::kMaxIterations;
  return CalibrationResult{std::move(r), std::move(m.trajectory), {std::move(m.record)}, status};
}

double error_contraction_check(const TransferFunction& plant_model,
                               const TransferFunction& reference, double tau, int horizon,
                               double beta, InverseMode mode) {
  const Eigen::MatrixXd LG = build_lifted(plant_model, tau, horizon).to_matrix();
  const LiftedModel inverse = inversion_model(build_lifted(reference, tau, horizon), mode);
  if (!inverse.invertible()) throw SingularModelError("reference model is singular on the grid");
  const Eigen::MatrixXd Lbar = inverse.to_matrix();
  // L_G Lbar^-1 = (Lbar^-T L_G^T)^T
  const Eigen::MatrixXd LG_Linv =
      Lbar.transpose().triangularView<Eigen::Upper>().solve(LG.transpose()).transpose();
  const Eigen::MatrixXd op = Eigen::MatrixXd::Identity(horizon, horizon) - beta * LG_Linv;
  if (!op.allFinite()) throw NumericalError("lifted error operator is not finite");
  // Lower triangular, so the eigenvalues are the diagonal. A general eigensolver
  // is unreliable here: the Toeplitz operator is a single defective Jordan block.
  return op.diagonal().cwiseAbs().maxCoeff();
}

void write_history_csv(std::ostream& os, std::span<const IterationRecord> history) {
  os << "iteration,sampled_error,continuous_error\n";
  for (const auto& rec : history) {
    os << rec.index << ',' << format_real(rec.sampled_error) << ','
       << format_real(rec.continuous_error) << '\n';
  }
}

}  // namespace iterdeconv
