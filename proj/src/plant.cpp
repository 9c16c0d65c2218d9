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
#include "iterdeconv/plant.hpp"

#include <cmath>
#include <stdexcept>

namespace iterdeconv {

double saturate(double x, double bound) { return bound * std::tanh(x / bound); }

Nonlinearity Nonlinearity::saturation(double bound) {
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw std::invalid_argument("saturation bound must be positive and finite");
  }
  return Nonlinearity{Kind::kSaturation, bound};
}

PlantSimulator::PlantSimulator(Plant plant, double period, int oversampling)
    : plant_(std::move(plant)), period_(period), oversampling_(oversampling) {
  if (oversampling_ < 1) throw std::invalid_argument("oversampling must be >= 1");
  if (!(period_ > 0.0)) throw std::invalid_argument("period must be positive");
  fine_ = zoh_discretize(to_state_space(plant_.linear), period_ / oversampling_);
}

FineTrajectory PlantSimulator::run(const AwgSignal& r) const {
  if (std::abs(r.period() - period_) > 1e-12 * period_) {
    throw std::invalid_argument("AWG period does not match the simulator period");
  }
  const bool pre = plant_.placement == Placement::kPreLinear;
  const Nonlinearity& f = plant_.nonlinearity;
  const auto drive = [&](double v) { return pre ? f(v) : v; };
  const auto output = [&](double y) { return pre ? y : f(y); };

  std::vector<double> u;
  u.reserve(static_cast<std::size_t>(r.periods()) * oversampling_ + 1);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(fine_.order());
  u.push_back(output(fine_.D * drive(r[0])));
  for (int k = 0; k < r.periods(); ++k) {
    const double v = drive(r[k]);
    for (int j = 0; j < oversampling_; ++j) {
      if (fine_.order() > 0) x = fine_.Ad * x + fine_.Bd * v;
      u.push_back(output(fine_.C.dot(x) + fine_.D * v));
    }
  }
  return FineTrajectory(std::move(u), period_, oversampling_);
}

FineTrajectory simulate(const Plant& plant, const AwgSignal& r, int oversampling) {
  return PlantSimulator(plant, r.period(), oversampling).run(r);
}

}  // namespace iterdeconv
