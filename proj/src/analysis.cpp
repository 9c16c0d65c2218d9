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
#include "iterdeconv/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "iterdeconv/csv.hpp"
#include "iterdeconv/plant.hpp"

namespace iterdeconv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRadToDeg = 180.0 / kPi;

void unwrap_degrees(std::vector<double>& phase) {
  for (std::size_t i = 1; i < phase.size(); ++i) {
    double d = phase[i] - phase[i - 1];
    phase[i] -= 360.0 * std::round(d / 360.0);
  }
}

std::complex<double> eval_poly(const Polynomial& p, std::complex<double> q) {
  // ascending powers
  std::complex<double> acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * q + *it;
  return acc;
}

std::complex<double> pulse_response(const LiftedModel& m, double theta) {
  const std::complex<double> q = std::polar(1.0, -theta);
  return q * eval_poly(m.pulse_numerator(), q) / eval_poly(m.pulse_denominator(), q);
}

struct FitPoint {
  double t;
  double d;
};

double model(const Eigen::Vector3d& p, double t) {
  return p[0] * std::exp(-t / p[1]) * std::sin(2.0 * kPi * t / p[2]);
}

double sum_squares(const std::vector<FitPoint>& pts, const Eigen::Vector3d& p) {
  double s = 0.0;
  for (const auto& pt : pts) {
    double r = pt.d - model(p, pt.t);
    s += r * r;
  }
  return s;
}

Eigen::Vector3d levenberg_marquardt(const std::vector<FitPoint>& pts, Eigen::Vector3d p) {
  double lambda = 1e-3;
  double cost = sum_squares(pts, p);
  for (int it = 0; it < 200; ++it) {
    Eigen::Matrix3d JtJ = Eigen::Matrix3d::Zero();
    Eigen::Vector3d Jtr = Eigen::Vector3d::Zero();
    for (const auto& pt : pts) {
      const double e = std::exp(-pt.t / p[1]);
      const double w = 2.0 * kPi * pt.t / p[2];
      const double s = std::sin(w);
      const double c = std::cos(w);
      Eigen::Vector3d J(e * s, p[0] * e * s * pt.t / (p[1] * p[1]), -p[0] * e * c * w / p[2]);
      const double r = pt.d - p[0] * e * s;
      JtJ += J * J.transpose();
      Jtr += J * r;
    }
    bool improved = false;
    while (lambda < 1e12) {
      Eigen::Matrix3d H = JtJ;
      H.diagonal() += lambda * JtJ.diagonal().cwiseMax(1e-300);
      Eigen::Vector3d step = H.ldlt().solve(Jtr);
      Eigen::Vector3d trial = p + step;
      if (trial[1] > 0.0 && trial[2] > 0.0 && trial.allFinite()) {
        double trial_cost = sum_squares(pts, trial);
        if (trial_cost < cost) {
          const bool tiny = step.cwiseAbs().cwiseQuotient(p.cwiseAbs()).maxCoeff() < 1e-12;
          p = trial;
          cost = trial_cost;
          lambda = std::max(lambda * 0.3, 1e-12);
          improved = true;
          if (tiny) return p;
          break;
        }
      }
      lambda *= 10.0;
    }
    if (!improved) break;
  }
  return p;
}

}  // namespace

std::string_view to_string(StabilityVerdict verdict) {
  switch (verdict) {
    case StabilityVerdict::kStable:
      return "stable";
    case StabilityVerdict::kMarginal:
      return "marginal";
    case StabilityVerdict::kUnstable:
      return "unstable";
  }
  return "unknown";
}

PhaseComparison phase_stability_check(const TransferFunction& true_plant,
                                      const TransferFunction& reference, double tau, int horizon,
                                      int points, double guard_band_deg) {
  if (!(tau > 0.0) || horizon < 1 || points < 2)
    throw std::invalid_argument("phase_stability_check: need tau > 0, horizon >= 1, points >= 2");
  const double lo = 2.0 * kPi / (horizon * tau * 10.0);
  const double hi = kPi / tau;

  PhaseComparison out;
  out.frequencies.resize(points);
  out.phase_true.resize(points);
  out.phase_model.resize(points);
  for (int i = 0; i < points; ++i) {
    const double w = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
    out.frequencies[i] = w;
    out.phase_true[i] = std::arg(frequency_response(true_plant, w)) * kRadToDeg;
    out.phase_model[i] = std::arg(frequency_response(reference, w)) * kRadToDeg;
  }
  unwrap_degrees(out.phase_true);
  unwrap_degrees(out.phase_model);

  out.difference.resize(points);
  for (int i = 0; i < points; ++i) out.difference[i] = out.phase_model[i] - out.phase_true[i];
  // a whole-turn offset at the low end is not a phase gap
  const double offset = 360.0 * std::round(out.difference.front() / 360.0);
  for (auto& d : out.difference) d -= offset;

  for (double d : out.difference) out.max_abs_difference = std::max(out.max_abs_difference, std::abs(d));
  out.stable_prediction = out.max_abs_difference < 90.0;
  if (std::abs(out.max_abs_difference - 90.0) < guard_band_deg)
    out.verdict = StabilityVerdict::kMarginal;
  else
    out.verdict = out.stable_prediction ? StabilityVerdict::kStable : StabilityVerdict::kUnstable;
  return out;
}

double sampled_contraction_peak(const TransferFunction& true_plant,
                                const TransferFunction& reference, double tau, double beta,
                                InverseMode mode, int points) {
  if (points < 2) throw std::invalid_argument("sampled_contraction_peak: points must be >= 2");
  const int n = static_cast<int>(std::max(true_plant.order(), reference.order())) + 2;
  const LiftedModel g = build_lifted(true_plant, tau, n);
  const LiftedModel gbar = inversion_model(build_lifted(reference, tau, n), mode);
  double peak = 0.0;
  for (int i = 0; i < points; ++i) {
    const double theta = kPi * i / (points - 1);
    const auto ratio = pulse_response(g, theta) / pulse_response(gbar, theta);
    peak = std::max(peak, std::abs(1.0 - beta * ratio));
  }
  return peak;
}

std::optional<OscillationFit> fit_oscillation(const FineTrajectory& traj, double settle_target) {
  const auto M = static_cast<std::size_t>(traj.oversampling());
  const auto& u = traj.values();
  if (u.size() < M + 3) return std::nullopt;

  std::vector<FitPoint> pts;
  for (std::size_t i = M + 1; i < u.size(); ++i) pts.push_back({traj.time(i), u[i] - settle_target});

  std::vector<FitPoint> peaks;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const double a = pts[i].d - pts[i - 1].d;
    const double b = pts[i + 1].d - pts[i].d;
    if (a * b < 0.0 && std::abs(pts[i].d) > 1e-9) peaks.push_back(pts[i]);
  }
  if (peaks.size() < 3) return std::nullopt;

  double spacing = (peaks.back().t - peaks.front().t) / static_cast<double>(peaks.size() - 1);
  const double period = 2.0 * spacing;

  // log|peak| against t
  double st = 0, sy = 0, stt = 0, sty = 0;
  const double n = static_cast<double>(peaks.size());
  for (const auto& pk : peaks) {
    const double y = std::log(std::abs(pk.d));
    st += pk.t;
    sy += y;
    stt += pk.t * pk.t;
    sty += pk.t * y;
  }
  const double slope = (n * sty - st * sy) / (n * stt - st * st);
  if (!(slope < 0.0)) return std::nullopt;
  const double intercept = (sy - slope * st) / n;

  // sign so that the first extremum matches
  const double s0 = std::sin(2.0 * kPi * peaks.front().t / period);
  const double sign = (peaks.front().d >= 0.0) == (s0 >= 0.0) ? 1.0 : -1.0;

  Eigen::Vector3d p(sign * std::exp(intercept), -1.0 / slope, period);
  p = levenberg_marquardt(pts, p);

  OscillationFit fit;
  fit.overshoot_amplitude = p[0];
  fit.decay_time = p[1];
  fit.period = p[2];
  fit.residual = std::sqrt(sum_squares(pts, p) / static_cast<double>(pts.size()));
  fit.extrema = static_cast<int>(peaks.size());
  return fit;
}

SweepGrid sweep_second_order(std::span<const double> T1_values, std::span<const double> T2_values,
                             double tau, int horizon, const CalibrationConfig& config) {
  for (double v : T1_values)
    if (!(v > 0.0)) throw std::invalid_argument(fmt::format("sweep: T1 value {} must be > 0", v));
  for (double v : T2_values)
    if (!(v > 0.0)) throw std::invalid_argument(fmt::format("sweep: T2 value {} must be > 0", v));
  config.validate();

  SweepGrid grid;
  grid.T1_values.assign(T1_values.begin(), T1_values.end());
  grid.T2_values.assign(T2_values.begin(), T2_values.end());
  const auto rows = static_cast<Eigen::Index>(T1_values.size());
  const auto cols = static_cast<Eigen::Index>(T2_values.size());
  grid.overshoot.setZero(rows, cols);
  grid.decay_time.setZero(rows, cols);

  const auto desired = DesiredSignal::step(1.0);
  const Eigen::Index cells = rows * cols;
  std::atomic<Eigen::Index> next{0};
  std::atomic<int> failed{0};

  auto worker = [&] {
    for (Eigen::Index c = next++; c < cells; c = next++) {
      const Eigen::Index i = c / cols;
      const Eigen::Index j = c % cols;
      const std::vector<double> poles{grid.T1_values[i], grid.T2_values[j]};
      const auto tf = TransferFunction::from_time_constants({}, poles);
      const auto res = run_calibration(Plant::linear_only(tf), tf, desired, config,
                                       desired.staircase(tau, horizon));
      if (res.status == CalibrationStatus::kDiverged ||
          res.status == CalibrationStatus::kAmplitudeCapped) {
        grid.overshoot(i, j) = std::numeric_limits<double>::quiet_NaN();
        grid.decay_time(i, j) = std::numeric_limits<double>::quiet_NaN();
        ++failed;
        continue;
      }
      grid.overshoot(i, j) = res.final_trajectory.max() - desired.amplitude();
      const auto fit = fit_oscillation(res.final_trajectory, desired.amplitude());
      grid.decay_time(i, j) = fit ? fit->decay_time : 0.0;
    }
  };

  const auto hw = std::max(1u, std::thread::hardware_concurrency());
  const auto n_threads = static_cast<unsigned>(std::min<Eigen::Index>(hw, std::max<Eigen::Index>(cells, 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }
  grid.failed_cells = failed.load();
  return grid;
}

FirstOrderExactness first_order_exactness(double T, double tau, int horizon,
                                          const CalibrationConfig& config) {
  if (!(T >= 0.0)) throw std::invalid_argument("first_order_exactness: T must be >= 0");
  const std::vector<double> poles{T};
  const auto tf =
      T == 0.0 ? TransferFunction::identity() : TransferFunction::from_time_constants({}, poles);
  const auto desired = DesiredSignal::step(1.0);
  const auto res = run_calibration(Plant::linear_only(tf), tf, desired, config,
                                   desired.staircase(tau, horizon));

  FirstOrderExactness out;
  const auto& traj = res.final_trajectory;
  for (std::size_t i = static_cast<std::size_t>(traj.oversampling()) + 1; i < traj.size(); ++i)
    out.max_deviation = std::max(out.max_deviation, std::abs(traj[i] - 1.0));

  const auto& r = res.final_awg.values();
  out.first_level = r.front();
  const double times[] = {tau};
  out.expected_first_level = 1.0 / step_response(tf, times).front();
  for (std::size_t k = 1; k < r.size(); ++k)
    out.level_spread = std::max(out.level_spread, std::abs(r[k] - r[1]));
  return out;
}

void write_sweep_csv(std::ostream& os, std::span<const double> T1_values,
                     std::span<const double> T2_values, const Eigen::MatrixXd& grid) {
  if (grid.rows() != static_cast<Eigen::Index>(T1_values.size()) ||
      grid.cols() != static_cast<Eigen::Index>(T2_values.size()))
    throw std::invalid_argument("write_sweep_csv: grid shape does not match the axes");
  os << "T1\\T2";
  for (double v : T2_values) os << ',' << format_real(v);
  os << '\n';
  for (Eigen::Index i = 0; i < grid.rows(); ++i) {
    os << format_real(T1_values[i]);
    for (Eigen::Index j = 0; j < grid.cols(); ++j) os << ',' << format_real(grid(i, j));
    os << '\n';
  }
}

void write_phase_csv(std::ostream& os, const PhaseComparison& cmp) {
  os << "omega,phase_true,phase_model,difference\n";
  for (std::size_t i = 0; i < cmp.frequencies.size(); ++i)
    os << format_real(cmp.frequencies[i]) << ',' << format_real(cmp.phase_true[i]) << ','
       << format_real(cmp.phase_model[i]) << ',' << format_real(cmp.difference[i]) << '\n';
}

}  // namespace iterdeconv
