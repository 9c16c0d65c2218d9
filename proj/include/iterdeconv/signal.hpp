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
#ifndef ITERDECONV_SIGNAL_HPP
#define ITERDECONV_SIGNAL_HPP

#include <span>
#include <vector>

namespace iterdeconv {

/// Piecewise-constant AWG waveform: values[k] is held on [k*period, (k+1)*period).
class AwgSignal {
 public:
  AwgSignal(std::vector<double> values, double period);

  static AwgSignal constant(double value, int periods, double period) {
    return AwgSignal(std::vector<double>(periods, value), period);
  }

  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  int periods() const { return static_cast<int>(values_.size()); }
  double period() const { return period_; }
  double duration() const { return period_ * static_cast<double>(values_.size()); }
  double max_abs() const;

 private:
  std::vector<double> values_;
  double period_;
};

/// Signal recorded on the uniform fine grid t_i = i * fine_step, i = 0..N*M.
class FineTrajectory {
 public:
  FineTrajectory(std::vector<double> values, double period, int oversampling);

  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }
  int oversampling() const { return oversampling_; }
  int periods() const { return static_cast<int>((values_.size() - 1) / oversampling_); }
  double period() const { return period_; }
  double fine_step() const { return period_ / oversampling_; }
  double time(std::size_t i) const { return static_cast<double>(i) * fine_step(); }
  double duration() const { return period_ * periods(); }
  double max() const;

 private:
  std::vector<double> values_;
  double period_;
  int oversampling_;
};

/// Target in situ signal u_d(t). The unit step (scaled by `amplitude`) is the
/// only built-in shape; u_d(t) = amplitude for all t >= 0.
class DesiredSignal {
 public:
  enum class Shape { kStep };

  static DesiredSignal step(double amplitude = 1.0) { return DesiredSignal(Shape::kStep, amplitude); }

  Shape shape() const { return shape_; }
  double amplitude() const { return amplitude_; }

  double operator()(double t) const;
  /// theta_d(t) = integral of u_d over [0, t].
  double integral(double t) const;

  /// u_d(k*tau) for k = 1..n.
  std::vector<double> samples(double tau, int n) const;
  /// AWG signal holding u_d(k*tau) on period k; the default initialization.
  AwgSignal staircase(double tau, int n) const;

 private:
  DesiredSignal(Shape shape, double amplitude) : shape_(shape), amplitude_(amplitude) {}

  Shape shape_;
  double amplitude_;
};

/// u(k*tau) for k = 1..N (t = 0 excluded).
std::vector<double> sample_at_awg_points(const FineTrajectory& traj);

/// sum_k |u_k - ud_k| * tau.
double sampled_error(std::span<const double> u_samples, std::span<const double> ud_samples,
                     double tau);
/// sum_k (u_k - ud_k) * tau, without absolute values.
double signed_sampled_error(std::span<const double> u_samples,
                            std::span<const double> ud_samples, double tau);

/// Trapezoid rule for the integral of |u(t) - u_d(t)| over [0, T].
double continuous_error(const FineTrajectory& traj, const DesiredSignal& desired);

/// theta(t) = integral of u over [0, t] by cumulative trapezoid.
FineTrajectory accumulated_phase(const FineTrajectory& traj);

/// theta(t) - theta_d(t).
FineTrajectory phase_deviation(const FineTrajectory& traj, const DesiredSignal& desired);

/// y(t) = cos(theta(t)).
std::vector<double> ramsey_readout(const FineTrajectory& phase);

/// Last grid time at which theta stays within [0, pi]; the window in which u is
/// recoverable from a Ramsey readout.
double unambiguous_phase_window(const FineTrajectory& phase);

}  // namespace iterdeconv

#endif  // ITERDECONV_SIGNAL_HPP
