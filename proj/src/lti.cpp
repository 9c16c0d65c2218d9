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
#include "iterdeconv/lti.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace iterdeconv {
namespace {

bool all_finite(std::span<const double> p) {
  return std::all_of(p.begin(), p.end(), [](double c) { return std::isfinite(c); });
}

}  // namespace

TransferFunction::TransferFunction(Polynomial numerator, Polynomial denominator) {
  if (numerator.empty() || denominator.empty()) {
    throw std::invalid_argument("transfer function coefficients must be nonempty");
  }
  if (!all_finite(numerator) || !all_finite(denominator)) {
    throw std::invalid_argument("transfer function coefficients must be finite");
  }
  num_ = poly::trim(std::move(numerator));
  den_ = poly::trim(std::move(denominator));
  if (den_.size() == 1 && den_[0] == 0.0) {
    throw std::invalid_argument("transfer function denominator is zero");
  }
  if (poly::degree(num_) > poly::degree(den_)) {
    throw std::invalid_argument("improper transfer function: numerator degree " +
                                std::to_string(poly::degree(num_)) + " exceeds denominator degree " +
                                std::to_string(poly::degree(den_)));
  }
  const double scale = den_.front() != 0.0 ? den_.front() : den_.back();
  for (double& c : num_) c /= scale;
  for (double& c : den_) c /= scale;
}

TransferFunction TransferFunction::from_time_constants(std::span<const double> zero_time_constants,
                                                       std::span<const double> pole_time_constants,
                                                       double gain) {
  Polynomial num = poly::from_time_constants(zero_time_constants);
  for (double& c : num) c *= gain;
  return TransferFunction(std::move(num), poly::from_time_constants(pole_time_constants));
}

std::complex<double> TransferFunction::evaluate(std::complex<double> s) const {
  return poly::evaluate(num_, s) / poly::evaluate(den_, s);
}

double TransferFunction::dc_gain() const {
  if (den_.front() == 0.0) return std::numeric_limits<double>::infinity();
  return num_.front() / den_.front();
}

TransferFunction make_transfer_function(Polynomial numerator, Polynomial denominator) {
  return TransferFunction(std::move(numerator), std::move(denominator));
}

StateSpace to_state_space(const TransferFunction& tf) {
  const Polynomial& den = tf.denominator();
  const int n = tf.order();
  Polynomial num = tf.numerator();
  num.resize(n + 1, 0.0);

  const double lead = den[n];
  StateSpace ss;
  ss.D = num[n] / lead;
  ss.A = Eigen::MatrixXd::Zero(n, n);
  ss.B = Eigen::VectorXd::Zero(n);
  ss.C = Eigen::RowVectorXd::Zero(n);
  if (n == 0) return ss;

  // x_i' = x_{i+1}; lead * x_n' = u - sum_i den[i] x_{i+1}
  for (int i = 0; i + 1 < n; ++i) ss.A(i, i + 1) = 1.0;
  for (int i = 0; i < n; ++i) {
    ss.A(n - 1, i) = -den[i] / lead;
    ss.C(i) = num[i] - ss.D * den[i];
  }
  ss.B(n - 1) = 1.0 / lead;
  return ss;
}

Polynomial characteristic_polynomial(const Eigen::MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  Polynomial c(n + 1, 0.0);
  c[n] = 1.0;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    M = A * M + c[n - k + 1] * Eigen::MatrixXd::Identity(n, n);
    c[n - k] = -(A * M).trace() / k;
  }
  return c;
}

TransferFunction to_transfer_function(const StateSpace& ss) {
  const int n = ss.order();
  Polynomial den(n + 1, 0.0);
  den[n] = 1.0;
  Polynomial num(n + 1, 0.0);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  // adj(sI - A) = sum_{k=1..n} M_k s^{n-k}
  for (int k = 1; k <= n; ++k) {
    M = ss.A * M + den[n - k + 1] * Eigen::MatrixXd::Identity(n, n);
    den[n - k] = -(ss.A * M).trace() / k;
    num[n - k] = ss.C.dot(M * ss.B);
  }
  for (int i = 0; i <= n; ++i) num[i] += ss.D * den[i];
  return TransferFunction(std::move(num), std::move(den));
}

DiscreteStateSpace zoh_discretize(const StateSpace& ss, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw std::invalid_argument("discretization step must be positive and finite");
  }
  const int n = ss.order();
  DiscreteStateSpace out;
  out.C = ss.C;
  out.D = ss.D;
  out.step = step;
  if (n == 0) {
    out.Ad = Eigen::MatrixXd(0, 0);
    out.Bd = Eigen::VectorXd(0);
    return out;
  }

  // M = [A  B]    exp(M h) = [Ad  Bd]
  //     [0  0]               [ 0   1]
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + 1, n + 1);
  M.topLeftCorner(n, n) = ss.A * step;
  M.topRightCorner(n, 1) = ss.B * step;
  const Eigen::MatrixXd phi = M.exp();
  if (!phi.allFinite()) {
    throw NumericalError("matrix exponential did not produce a finite result");
  }
  out.Ad = phi.topLeftCorner(n, n);
  out.Bd = phi.topRightCorner(n, 1);
  return out;
}

std::vector<double> step_response(const StateSpace& ss, std::span<const double> times) {
  std::vector<double> out;
  out.reserve(times.size());
  Eigen::VectorXd x = Eigen::VectorXd::Zero(ss.order());
  std::map<double, DiscreteStateSpace> cache;
  double previous = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    if (!(t >= 0.0) || !std::isfinite(t)) {
      throw std::invalid_argument("step_response times must be finite and non-negative");
    }
    if (t < previous) {
      throw std::invalid_argument("step_response times must be ascending");
    }
    const double dt = t - previous;
    if (dt > 0.0 && ss.order() > 0) {
      auto it = cache.find(dt);
      if (it == cache.end()) it = cache.emplace(dt, zoh_discretize(ss, dt)).first;
      x = it->second.Ad * x + it->second.Bd;
    }
    out.push_back(ss.C.dot(x) + ss.D);
    previous = t;
  }
  return out;
}

std::vector<double> step_response(const TransferFunction& tf, std::span<const double> times) {
  return step_response(to_state_space(tf), times);
}

std::complex<double> frequency_response(const TransferFunction& tf, double omega) {
  if (!(omega >= 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("frequency must be finite and non-negative");
  }
  const std::complex<double> s{0.0, omega};
  const std::complex<double> den = poly::evaluate(tf.denominator(), s);
  double scale = 0.0;
  double power = 1.0;
  for (double c : tf.denominator()) {
    scale += std::abs(c) * power;
    power *= omega;
  }
  if (std::abs(den) <= 1e-14 * scale) {
    throw SingularityError("transfer function has a pole at s = i*" + std::to_string(omega));
  }
  return poly::evaluate(tf.numerator(), s) / den;
}

std::complex<double> frequency_response(const StateSpace& ss, double omega) {
  if (!(omega >= 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("frequency must be finite and non-negative");
  }
  const int n = ss.order();
  if (n == 0) return {ss.D, 0.0};
  const Eigen::MatrixXcd sI_A = std::complex<double>(0.0, omega) * Eigen::MatrixXcd::Identity(n, n) -
                                ss.A.cast<std::complex<double>>();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sI_A);
  const Eigen::VectorXcd eig = Eigen::EigenSolver<Eigen::MatrixXd>(ss.A, false).eigenvalues();
  const double scale = 1.0 + omega + eig.cwiseAbs().maxCoeff();
  const double gap = (eig.array() - std::complex<double>(0.0, omega)).abs().minCoeff();
  if (gap <= 1e-12 * scale || lu.rcond() < 1e-14) {
    throw SingularityError("state matrix has an eigenvalue at s = i*" + std::to_string(omega));
  }
  const Eigen::VectorXcd x = lu.solve(ss.B.cast<std::complex<double>>());
  return ss.C.cast<std::complex<double>>().dot(x) + ss.D;
}

}  // namespace iterdeconv
