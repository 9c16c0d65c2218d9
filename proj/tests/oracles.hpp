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
// Test-side reference computations. Nothing here calls into the library's
// numerical kernels; models are integrated directly from their coefficients.
#ifndef ITERDECONV_TESTS_ORACLES_HPP
#define ITERDECONV_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

// Observer-canonical ODE for num(s)/den(s), ascending coefficients,
// deg num <= deg den. Deliberately a different realization from the library's.
class ObserverOde {
 public:
  ObserverOde(std::vector<double> num, std::vector<double> den) {
    while (den.size() > 1 && den.back() == 0.0) den.pop_back();
    n_ = den.size() - 1;
    const double lead = den.back();
    for (auto& c : den) c /= lead;
    for (auto& c : num) c /= lead;
    num.resize(n_ + 1, 0.0);
    d_ = num[n_];
    a_.assign(den.begin(), den.end() - 1);
    b_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) b_[i] = num[i] - d_ * den[i];
    x_.assign(n_, 0.0);
  }

  std::size_t order() const { return n_; }
  double output(double u) const { return (n_ ? x_[0] : 0.0) + d_ * u; }

  // One classical Runge-Kutta step with the input held at u.
  void step(double u, double h) {
    if (n_ == 0) return;
    auto f = [&](const std::vector<double>& x) {
      std::vector<double> dx(n_);
      // x_i' = -a_{n-1-i} x_0 + x_{i+1} + b_{n-1-i} u
      for (std::size_t i = 0; i < n_; ++i) {
        dx[i] = -a_[n_ - 1 - i] * x[0] + b_[n_ - 1 - i] * u;
        if (i + 1 < n_) dx[i] += x[i + 1];
      }
      return dx;
    };
    auto axpy = [&](const std::vector<double>& x, const std::vector<double>& k, double s) {
      std::vector<double> y(n_);
      for (std::size_t i = 0; i < n_; ++i) y[i] = x[i] + s * k[i];
      return y;
    };
    const auto k1 = f(x_);
    const auto k2 = f(axpy(x_, k1, h / 2));
    const auto k3 = f(axpy(x_, k2, h / 2));
    const auto k4 = f(axpy(x_, k3, h));
    for (std::size_t i = 0; i < n_; ++i) x_[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }

 private:
  std::size_t n_ = 0;
  double d_ = 0.0;
  std::vector<double> a_, b_, x_;
};

// Unit-step response at the given times, RK4 with `steps` per unit of the
// largest time.
inline std::vector<double> step_response(const std::vector<double>& num,
                                         const std::vector<double>& den,
                                         const std::vector<double>& times, int steps_per_sample) {
  ObserverOde ode(num, den);
  std::vector<double> out;
  double t = 0.0;
  for (double target : times) {
    const double h = (target - t) / steps_per_sample;
    if (target > t)
      for (int i = 0; i < steps_per_sample; ++i) ode.step(1.0, h);
    t = target;
    out.push_back(ode.output(1.0));
  }
  return out;
}

// Outputs at t = k tau (left limits), k = 1..N, for the held input r.
inline std::vector<double> sample_points(const std::vector<double>& num,
                                         const std::vector<double>& den,
                                         const std::vector<double>& r, double tau, int substeps) {
  ObserverOde ode(num, den);
  std::vector<double> out;
  for (double rk : r) {
    for (int i = 0; i < substeps; ++i) ode.step(rk, tau / substeps);
    out.push_back(ode.output(rk));
  }
  return out;
}

// Phase in degrees of gain * prod(z s + 1) / prod(p s + 1) at s = i w, summed
// factor by factor.
inline double factor_phase_deg(const std::vector<double>& zero_tcs,
                               const std::vector<double>& pole_tcs, double w) {
  double ph = 0.0;
  for (double z : zero_tcs) ph += std::atan2(z * w, 1.0);
  for (double p : pole_tcs) ph -= std::atan2(p * w, 1.0);
  return ph * 180.0 / M_PI;
}

// Roots of a x^2 + b x + c by the quadratic formula.
inline std::pair<std::complex<double>, std::complex<double>> quadratic_roots(double a, double b,
                                                                             double c) {
  const std::complex<double> disc = std::sqrt(std::complex<double>(b * b - 4 * a * c));
  return {(-b + disc) / (2 * a), (-b - disc) / (2 * a)};
}

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0,
                                         double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

// Plain lower-triangular Toeplitz product, u_k = sum_j m_{k-j} r_j.
inline std::vector<double> toeplitz_product(const std::vector<double>& m,
                                            const std::vector<double>& r) {
  std::vector<double> u(r.size(), 0.0);
  for (std::size_t k = 0; k < r.size(); ++k)
    for (std::size_t j = 0; j <= k; ++j) u[k] += m[k - j] * r[j];
  return u;
}

}  // namespace oracle

#endif  // ITERDECONV_TESTS_ORACLES_HPP
