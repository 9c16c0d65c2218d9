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
#include "iterdeconv/lifted.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace iterdeconv {
namespace {

constexpr double kSingularTolerance = 1e-12;
constexpr double kUnitCircleTolerance = 1e-12;

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Power-series coefficients of b(q) / a(q), a(0) = 1.
std::vector<double> series_quotient(const Polynomial& b, const Polynomial& a, int count) {
  std::vector<double> c(count, 0.0);
  for (int k = 0; k < count; ++k) {
    double v = k < static_cast<int>(b.size()) ? b[k] : 0.0;
    const int top = std::min<int>(k, static_cast<int>(a.size()) - 1);
    for (int i = 1; i <= top; ++i) v -= a[i] * c[k - i];
    c[k] = v / a[0];
  }
  return c;
}

}  // namespace

LiftedModel::LiftedModel(std::vector<double> markov, double period)
    : LiftedModel(markov, period, markov, Polynomial{1.0}) {}

LiftedModel::LiftedModel(std::vector<double> markov, double period, Polynomial pulse_numerator,
                         Polynomial pulse_denominator)
    : markov_(std::move(markov)),
      period_(period),
      pulse_num_(std::move(pulse_numerator)),
      pulse_den_(std::move(pulse_denominator)) {
  if (markov_.empty()) throw std::invalid_argument("lifted model horizon must be >= 1");
  if (!(period_ > 0.0)) throw std::invalid_argument("lifted model period must be positive");
  if (pulse_den_.empty() || pulse_den_[0] != 1.0) {
    throw std::invalid_argument("pulse denominator must be monic in the shift operator");
  }
  if (pulse_num_.empty()) pulse_num_ = {0.0};
  pulse_num_ = poly::trim(std::move(pulse_num_), kSingularTolerance * max_abs(pulse_num_));
}

bool LiftedModel::invertible() const { return std::abs(markov_[0]) >= kSingularTolerance; }

std::vector<std::complex<double>> LiftedModel::pulse_zeros() const {
  std::vector<std::complex<double>> zetas;
  for (const auto& q : poly::roots(pulse_num_)) {
    if (std::abs(q) == 0.0) continue;
    zetas.push_back(1.0 / q);
  }
  return zetas;
}

bool LiftedModel::minimum_phase() const {
  const auto zetas = pulse_zeros();
  return std::all_of(zetas.begin(), zetas.end(),
                     [](const auto& z) { return std::abs(z) <= 1.0 + kUnitCircleTolerance; });
}

LiftedModel LiftedModel::minimum_phase_counterpart() const {
  if (!invertible()) throw SingularModelError("model has no response over the first period");
  if (minimum_phase()) return *this;

  // b(q) = lead * prod (q - q_j). A zero zeta = 1/q_j outside the unit circle
  // becomes 1/zeta; the factor (q - q_j) is replaced by (q - 1/q_j).
  std::vector<std::complex<double>> reflected;
  for (const auto& q : poly::roots(pulse_num_)) {
    reflected.push_back(std::abs(q) < 1.0 - kUnitCircleTolerance ? 1.0 / q : q);
  }
  Polynomial num = poly::from_roots(reflected);
  const double dc = poly::evaluate(std::span<const double>(pulse_num_), 1.0);
  const double dc_new = poly::evaluate(std::span<const double>(num), 1.0);
  if (std::abs(dc) < kSingularTolerance * max_abs(pulse_num_) || dc_new == 0.0) {
    throw SingularModelError("non-minimum-phase model with zero DC gain has no stable inverse");
  }
  for (double& c : num) c *= dc / dc_new;

  std::vector<double> markov = series_quotient(num, pulse_den_, horizon());
  return LiftedModel(std::move(markov), period_, std::move(num), pulse_den_);
}

Eigen::MatrixXd LiftedModel::to_matrix() const {
  const int n = horizon();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j <= k; ++j) L(k, j) = markov_[k - j];
  }
  return L;
}

LiftedModel build_lifted(const TransferFunction& model, double tau, int horizon) {
  if (horizon < 1) throw std::invalid_argument("lifted horizon must be >= 1");
  const DiscreteStateSpace d = zoh_discretize(to_state_space(model), tau);
  const int n = d.order();

  // m_1 = C Bd + D, m_{i+1} = C Ad^i Bd: increments of the exact ZOH step response.
  const int count = std::max(horizon, n + 1);
  std::vector<double> markov(count);
  Eigen::VectorXd x = d.Bd;
  for (int i = 0; i < count; ++i) {
    markov[i] = (n > 0 ? d.C.dot(x) : 0.0) + (i == 0 ? d.D : 0.0);
    if (n > 0) x = d.Ad * x;
  }

  const Polynomial chi = characteristic_polynomial(d.Ad);
  Polynomial a(n + 1);
  for (int i = 0; i <= n; ++i) a[i] = chi[n - i];
  Polynomial b = poly::multiply(a, std::span<const double>(markov.data(), n + 1));
  b.resize(n + 1);

  markov.resize(horizon);
  return LiftedModel(std::move(markov), tau, std::move(b), std::move(a));
}

std::vector<double> apply(const LiftedModel& lifted, std::span<const double> r) {
  const int n = lifted.horizon();
  if (static_cast<int>(r.size()) != n) {
    throw std::invalid_argument("apply: input length " + std::to_string(r.size()) +
                                " does not match horizon " + std::to_string(n));
  }
  const auto& m = lifted.markov();
  std::vector<double> u(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += m[k - j] * r[j];
    u[k] = acc;
  }
  return u;
}

std::vector<double> deconvolve(const LiftedModel& lifted, std::span<const double> target,
                               double growth_guard) {
  const int n = lifted.horizon();
  if (static_cast<int>(target.size()) != n) {
    throw std::invalid_argument("deconvolve: target length " + std::to_string(target.size()) +
                                " does not match horizon " + std::to_string(n));
  }
  if (!lifted.invertible()) {
    throw SingularModelError("lifted model is singular: |m_1| < 1e-12");
  }
  const auto& m = lifted.markov();
  const double limit = growth_guard * max_abs(target);
  std::vector<double> r(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double acc = target[k];
    for (int j = 0; j < k; ++j) acc -= m[k - j] * r[j];
    r[k] = acc / m[0];
    if (!(std::abs(r[k]) <= limit) && max_abs(target) > 0.0) {
      throw InverseGrowthError("deconvolved input grows beyond the guard at sample " +
                                   std::to_string(k) + " (|r| = " + std::to_string(std::abs(r[k])) +
                                   ")",
                               k, std::abs(r[k]));
    }
  }
  return r;
}

LiftedModel inversion_model(const LiftedModel& lifted, InverseMode mode) {
  return mode == InverseMode::kExact ? lifted : lifted.minimum_phase_counterpart();
}

std::vector<double> invert(const LiftedModel& lifted, std::span<const double> target,
                           InverseMode mode, double growth_guard) {
  return deconvolve(inversion_model(lifted, mode), target, growth_guard);
}

}  // namespace iterdeconv
