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
#include "iterdeconv/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace iterdeconv {
namespace {

void check_lengths(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("sample length mismatch: " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
}

}  // namespace

AwgSignal::AwgSignal(std::vector<double> values, double period)
    : values_(std::move(values)), period_(period) {
  if (values_.empty()) throw std::invalid_argument("AWG signal needs at least one period");
  if (!(period_ > 0.0) || !std::isfinite(period_)) {
    throw std::invalid_argument("AWG period must be positive and finite");
  }
}

double AwgSignal::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

FineTrajectory::FineTrajectory(std::vector<double> values, double period, int oversampling)
    : values_(std::move(values)), period_(period), oversampling_(oversampling) {
  if (oversampling_ < 1) throw std::invalid_argument("oversampling must be >= 1");
  if (!(period_ > 0.0) || !std::isfinite(period_)) {
    throw std::invalid_argument("trajectory period must be positive and finite");
  }
  if (values_.size() < static_cast<std::size_t>(oversampling_) + 1 ||
      (values_.size() - 1) % static_cast<std::size_t>(oversampling_) != 0) {
    throw std::invalid_argument("trajectory length must be N*M + 1 with N >= 1");
  }
}

double FineTrajectory::max() const { return *std::max_element(values_.begin(), values_.end()); }

double DesiredSignal::operator()(double t) const { return t >= 0.0 ? amplitude_ : 0.0; }

double DesiredSignal::integral(double t) const { return t > 0.0 ? amplitude_ * t : 0.0; }

std::vector<double> DesiredSignal::samples(double tau, int n) const {
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = (*this)(tau * (k + 1));
  return out;
}

AwgSignal DesiredSignal::staircase(double tau, int n) const { return AwgSignal(samples(tau, n), tau); }

std::vector<double> sample_at_awg_points(const FineTrajectory& traj) {
  const int n = traj.periods();
  const int m = traj.oversampling();
  std::vector<double> out(n);
  for (int k = 1; k <= n; ++k) out[k - 1] = traj[static_cast<std::size_t>(k) * m];
  return out;
}

double sampled_error(std::span<const double> u_samples, std::span<const double> ud_samples,
                     double tau) {
  check_lengths(u_samples, ud_samples);
  double sum = 0.0;
  for (std::size_t k = 0; k < u_samples.size(); ++k) sum += std::abs(u_samples[k] - ud_samples[k]);
  return sum * tau;
}

double signed_sampled_error(std::span<const double> u_samples,
                            std::span<const double> ud_samples, double tau) {
  check_lengths(u_samples, ud_samples);
  double sum = 0.0;
  for (std::size_t k = 0; k < u_samples.size(); ++k) sum += u_samples[k] - ud_samples[k];
  return sum * tau;
}

double continuous_error(const FineTrajectory& traj, const DesiredSignal& desired) {
  const double h = traj.fine_step();
  double sum = 0.0;
  double prev = std::abs(traj[0] - desired(0.0));
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const double cur = std::abs(traj[i] - desired(traj.time(i)));
    sum += 0.5 * (prev + cur) * h;
    prev = cur;
  }
  return sum;
}

FineTrajectory accumulated_phase(const FineTrajectory& traj) {
  const double h = traj.fine_step();
  std::vector<double> theta(traj.size(), 0.0);
  for (std::size_t i = 1; i < traj.size(); ++i) {
    theta[i] = theta[i - 1] + 0.5 * (traj[i - 1] + traj[i]) * h;
  }
  return FineTrajectory(std::move(theta), traj.period(), traj.oversampling());
}

FineTrajectory phase_deviation(const FineTrajectory& traj, const DesiredSignal& desired) {
  // Integrate u - u_d directly; subtracting two accumulated phases loses digits.
  // Exact for the step target, whose integral is linear.
  const double h = traj.fine_step();
  std::vector<double> dev(traj.size(), 0.0);
  double prev = traj[0] - desired(0.0);
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const double cur = traj[i] - desired(traj.time(i));
    dev[i] = dev[i - 1] + 0.5 * (prev + cur) * h;
    prev = cur;
  }
  return FineTrajectory(std::move(dev), traj.period(), traj.oversampling());
}

std::vector<double> ramsey_readout(const FineTrajectory& phase) {
  std::vector<double> y(phase.size());
  std::transform(phase.values().begin(), phase.values().end(), y.begin(),
                 [](double theta) { return std::cos(theta); });
  return y;
}

double unambiguous_phase_window(const FineTrajectory& phase) {
  std::size_t last = 0;
  for (std::size_t i = 0; i < phase.size(); ++i) {
    if (phase[i] < 0.0 || phase[i] > std::numbers::pi) break;
    last = i;
  }
  return phase.time(last);
}

}  // namespace iterdeconv
