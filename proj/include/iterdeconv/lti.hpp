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
#ifndef ITERDECONV_LTI_HPP
#define ITERDECONV_LTI_HPP

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "iterdeconv/polynomial.hpp"

namespace iterdeconv {

/// Raised when a numerical kernel (matrix exponential, eigen-solver) fails to
/// produce a finite answer.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a response is evaluated exactly on a pole.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/**
 * Proper rational SISO transfer function num(s)/den(s).
 *
 * Coefficients are stored in ascending powers of s. After construction the
 * denominator's constant term is 1 whenever it is nonzero (time-constant
 * form); otherwise the leading coefficient is scaled to 1. Highest-power zero
 * coefficients are stripped.
 */
class TransferFunction {
 public:
  /// Validates and normalizes. Throws std::invalid_argument on empty or
  /// non-finite input, an all-zero denominator, or an improper fraction.
  TransferFunction(Polynomial numerator, Polynomial denominator);

  static TransferFunction identity() { return TransferFunction({1.0}, {1.0}); }

  /// gain * prod(zero_tc[i] s + 1) / prod(pole_tc[j] s + 1). Negative zero
  /// time constants give right-half-plane zeros.
  static TransferFunction from_time_constants(std::span<const double> zero_time_constants,
                                              std::span<const double> pole_time_constants,
                                              double gain = 1.0);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  /// Number of states of a minimal-order realization of the denominator.
  int order() const { return poly::degree(den_); }
  bool strictly_proper() const { return poly::degree(num_) < order(); }

  std::complex<double> evaluate(std::complex<double> s) const;

  std::vector<std::complex<double>> poles() const { return poly::roots(den_); }
  std::vector<std::complex<double>> zeros() const { return poly::roots(num_); }

  /// Steady-state gain num(0)/den(0); infinite for an integrator.
  double dc_gain() const;

 private:
  Polynomial num_;
  Polynomial den_;
};

TransferFunction make_transfer_function(Polynomial numerator, Polynomial denominator);

/// Continuous-time realization x' = A x + B u, y = C x + D u.
struct StateSpace {
  Eigen::MatrixXd A;
  Eigen::VectorXd B;
  Eigen::RowVectorXd C;
  double D = 0.0;

  int order() const { return static_cast<int>(A.rows()); }
};

/// Exact zero-order-hold image: x[k+1] = Ad x[k] + Bd u[k], y = C x + D u.
struct DiscreteStateSpace {
  Eigen::MatrixXd Ad;
  Eigen::VectorXd Bd;
  Eigen::RowVectorXd C;
  double D = 0.0;
  double step = 0.0;

  int order() const { return static_cast<int>(Ad.rows()); }
};

/// Controllable-canonical realization with the gain carried in B, so that
/// 1/(Ts+1) maps to A=[-1/T], B=[1/T], C=[1], D=0.
StateSpace to_state_space(const TransferFunction& tf);

/// Transfer function of a realization (Faddeev-LeVerrier), normalized like
/// the TransferFunction constructor.
TransferFunction to_transfer_function(const StateSpace& ss);

/// Ascending coefficients of det(sI - A).
Polynomial characteristic_polynomial(const Eigen::MatrixXd& A);

/// Exponential of the augmented block matrix [[A, B], [0, 0]] * step.
DiscreteStateSpace zoh_discretize(const StateSpace& ss, double step);

/// Unit-step response from rest at the given non-negative, non-decreasing
/// times. h(0) = D.
std::vector<double> step_response(const StateSpace& ss, std::span<const double> times);
std::vector<double> step_response(const TransferFunction& tf, std::span<const double> times);

std::complex<double> frequency_response(const TransferFunction& tf, double omega);
std::complex<double> frequency_response(const StateSpace& ss, double omega);

}  // namespace iterdeconv

#endif  // ITERDECONV_LTI_HPP
