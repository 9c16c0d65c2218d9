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
#ifndef ITERDECONV_PLANT_HPP
#define ITERDECONV_PLANT_HPP

#include "iterdeconv/lti.hpp"
#include "iterdeconv/signal.hpp"

namespace iterdeconv {

/// S_A(x) = A tanh(x / A).
double saturate(double x, double bound);

struct Nonlinearity {
  enum class Kind { kIdentity, kSaturation };

  Kind kind = Kind::kIdentity;
  double bound = 0.0;

  static Nonlinearity identity() { return {}; }
  /// Throws std::invalid_argument unless bound > 0.
  static Nonlinearity saturation(double bound);

  double operator()(double x) const { return kind == Kind::kIdentity ? x : saturate(x, bound); }
};

/// Where the static nonlinearity sits relative to G(s): after it (Wiener) or
/// before it (Hammerstein).
enum class Placement { kPostLinear, kPreLinear };

struct Plant {
  TransferFunction linear = TransferFunction::identity();
  Nonlinearity nonlinearity = Nonlinearity::identity();
  Placement placement = Placement::kPostLinear;

  static Plant linear_only(TransferFunction tf) { return Plant{std::move(tf), {}, Placement::kPostLinear}; }
  bool is_linear() const { return nonlinearity.kind == Nonlinearity::Kind::kIdentity; }
};

/**
 * Fine-grid simulator for one (plant, period, oversampling) combination.
 *
 * The linear part is discretized once at period / oversampling. Each AWG value
 * is held for `oversampling` fine steps starting from rest. The value reported
 * at a period boundary t = k*period is the left limit, i.e. it still uses the
 * input of period k-1; only t = 0 uses the first AWG value.
 */
class PlantSimulator {
 public:
  PlantSimulator(Plant plant, double period, int oversampling);

  FineTrajectory run(const AwgSignal& r) const;

  const Plant& plant() const { return plant_; }
  double period() const { return period_; }
  int oversampling() const { return oversampling_; }

 private:
  Plant plant_;
  double period_;
  int oversampling_;
  DiscreteStateSpace fine_;
};

FineTrajectory simulate(const Plant& plant, const AwgSignal& r, int oversampling);

}  // namespace iterdeconv

#endif  // ITERDECONV_PLANT_HPP
