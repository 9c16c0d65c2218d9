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
#ifndef ITERDECONV_LIFTED_HPP
#define ITERDECONV_LIFTED_HPP

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "iterdeconv/lti.hpp"

namespace iterdeconv {

/// The lifted model cannot be inverted (first Markov coefficient ~ 0).
class SingularModelError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Forward substitution produced values beyond the growth guard, the signature
/// of an unstable (non-minimum-phase) inverse.
class InverseGrowthError : public std::overflow_error {
 public:
  InverseGrowthError(const std::string& what, int index, double magnitude)
      : std::overflow_error(what), index_(index), magnitude_(magnitude) {}
  int index() const { return index_; }
  double magnitude() const { return magnitude_; }

 private:
  int index_;
  double magnitude_;
};

/// How the learning update inverts the reference model.
enum class InverseMode {
  /// Forward substitution on the lifted model itself.
  kExact,
  /// Forward substitution on the minimum-phase counterpart: pulse-transfer
  /// zeros outside the unit circle are reflected to 1/zeta with the DC gain
  /// kept. Identical to kExact for minimum-phase models.
  kMinimumPhase,
};

/**
 * Finite-horizon lifted form of a sampled SISO model.
 *
 * Maps AWG values r_0..r_{N-1} to sample-point outputs u(tau)..u(N tau) through
 * the lower-triangular Toeplitz matrix L[k][j] = m_{k-j+1}, where
 * m_1 = h(tau) and m_i = h(i tau) - h((i-1) tau) are the step-response
 * increments of the model under zero-order hold.
 *
 * Alongside the Markov sequence the model keeps its pulse-transfer form
 * M(q) = q b(q) / a(q) in the backward shift q, with a(0) = 1 and
 * b(0) = m_1. Models built from a raw Markov sequence are treated as FIR
 * (a = 1, b = markov).
 */
class LiftedModel {
 public:
  LiftedModel(std::vector<double> markov, double period);
  LiftedModel(std::vector<double> markov, double period, Polynomial pulse_numerator,
              Polynomial pulse_denominator);

  const std::vector<double>& markov() const { return markov_; }
  int horizon() const { return static_cast<int>(markov_.size()); }
  double period() const { return period_; }
  const Polynomial& pulse_numerator() const { return pulse_num_; }
  const Polynomial& pulse_denominator() const { return pulse_den_; }

  bool invertible() const;

  /// Zeros of the pulse transfer function in z (zeta with b(1/zeta) = 0).
  std::vector<std::complex<double>> pulse_zeros() const;
  bool minimum_phase() const;

  /// Same magnitude response and DC gain, all pulse-transfer zeros inside the
  /// unit circle. Returns *this when already minimum phase.
  LiftedModel minimum_phase_counterpart() const;

  Eigen::MatrixXd to_matrix() const;

 private:
  std::vector<double> markov_;
  double period_;
  Polynomial pulse_num_;
  Polynomial pulse_den_;
};

/// Lifted model of `model` at sampling period `tau` over `horizon` periods.
LiftedModel build_lifted(const TransferFunction& model, double tau, int horizon);

/// u_k = sum_{j<=k} m_{k-j+1} r_j.
std::vector<double> apply(const LiftedModel& lifted, std::span<const double> r);

/// Solves L r = target by forward substitution. Throws SingularModelError when
/// |m_1| < 1e-12 and InverseGrowthError when some |r_k| exceeds
/// growth_guard * max|target|.
std::vector<double> deconvolve(const LiftedModel& lifted, std::span<const double> target,
                               double growth_guard = 1e6);

/// The lifted model actually inverted under `mode`.
LiftedModel inversion_model(const LiftedModel& lifted, InverseMode mode);

/// deconvolve(inversion_model(lifted, mode), target, growth_guard).
std::vector<double> invert(const LiftedModel& lifted, std::span<const double> target,
                           InverseMode mode, double growth_guard = 1e6);

}  // namespace iterdeconv

#endif  // ITERDECONV_LIFTED_HPP
