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
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "iterdeconv/plant.hpp"
#include "iterdeconv/signal.hpp"
#include "models.hpp"
#include "oracles.hpp"

using namespace iterdeconv;

TEST(Saturate, Examples) {
  for (double A : {0.5, 1.0, 2.0}) EXPECT_EQ(saturate(0.0, A), 0.0);
  EXPECT_NEAR(saturate(100.0, 2.0), 2.0, 1e-12);
  // tanh(3.8) to 30 digits
  EXPECT_NEAR(saturate(3.8, 1.0), 0.998999597785840871350319791549, 1e-15);
}

TEST(Saturate, OddAndBounded) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-50, 50);
  for (int i = 0; i < 1000; ++i) {
    const double x = dist(rng);
    EXPECT_DOUBLE_EQ(saturate(-x, 1.5), -saturate(x, 1.5));
    EXPECT_LE(std::abs(saturate(x, 1.5)), 1.5);
    EXPECT_LE(std::abs(saturate(x, 1.5)), std::abs(x));
  }
  EXPECT_LT(std::abs(saturate(3.0, 1.5)), 1.5);
  EXPECT_THROW(Nonlinearity::saturation(0.0), std::invalid_argument);
  EXPECT_THROW(Nonlinearity::saturation(-1.0), std::invalid_argument);
}

TEST(Simulate, IdentityPlantGivesStaircase) {
  const AwgSignal r({0.5, -1.0, 2.0, 0.25}, 0.1);
  const auto u = simulate(Plant{}, r, 5);
  ASSERT_EQ(u.size(), 21u);
  EXPECT_DOUBLE_EQ(u[0], 0.5);
  for (std::size_t i = 1; i < u.size(); ++i) {
    // left limit at each period boundary
    const std::size_t k = (i - 1) / 5;
    EXPECT_DOUBLE_EQ(u[i], r[k]) << i;
  }
}

TEST(Simulate, StepMatchesStepResponse) {
  const auto G = models::kPlant.tf();
  const auto u = simulate(Plant::linear_only(G), AwgSignal::constant(1.0, 50, 0.002), 20);
  std::vector<double> t;
  for (std::size_t i = 0; i < u.size(); ++i) t.push_back(u.time(i));
  const auto h = step_response(G, t);
  EXPECT_NEAR(u[20], h[20], 1e-10);
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(u[i], h[i], 1e-10);
}

TEST(Simulate, MatchesIntegrationOracle) {
  std::mt19937_64 rng(21);
  for (const auto& m : models::all_models()) {
    const auto r = oracle::random_vector(rng, 30);
    const auto u = sample_at_awg_points(simulate(Plant::linear_only(m.tf()), AwgSignal(r, 0.002), 20));
    const auto ref = oracle::sample_points(m.num(), m.den(), r, 0.002, 4000);
    for (std::size_t k = 0; k < r.size(); ++k) EXPECT_NEAR(u[k], ref[k], 1e-9);
  }
}

TEST(Simulate, SaturationBound) {
  Plant p = Plant::linear_only(models::kPlant.tf());
  p.nonlinearity = Nonlinearity::saturation(1.0);
  const auto u = simulate(p, AwgSignal::constant(10.0, 50, 0.002), 20);
  for (double v : u.values()) EXPECT_LT(v, 1.0);
}

TEST(Simulate, Linearity) {
  std::mt19937_64 rng(1);
  const auto plant = Plant::linear_only(models::kG4.tf());
  const auto r1 = oracle::random_vector(rng, 25);
  const auto r2 = oracle::random_vector(rng, 25);
  const double a = 1.7, b = -0.3;
  std::vector<double> mix(25);
  for (int i = 0; i < 25; ++i) mix[i] = a * r1[i] + b * r2[i];
  const auto u1 = simulate(plant, AwgSignal(r1, 0.002), 10);
  const auto u2 = simulate(plant, AwgSignal(r2, 0.002), 10);
  const auto um = simulate(plant, AwgSignal(mix, 0.002), 10);
  for (std::size_t i = 0; i < um.size(); ++i) EXPECT_NEAR(um[i], a * u1[i] + b * u2[i], 1e-9);
}

TEST(Simulate, TimeInvariance) {
  std::mt19937_64 rng(2);
  const auto plant = Plant::linear_only(models::kPlant.tf());
  auto r = oracle::random_vector(rng, 20);
  std::vector<double> shifted{0.0};
  shifted.insert(shifted.end(), r.begin(), r.end() - 1);
  const int M = 8;
  const auto u = simulate(plant, AwgSignal(r, 0.002), M);
  const auto us = simulate(plant, AwgSignal(shifted, 0.002), M);
  for (int i = 1; i <= M; ++i) EXPECT_EQ(us[i], 0.0);
  for (std::size_t i = M + 1; i < us.size(); ++i) EXPECT_NEAR(us[i], u[i - M], 1e-12);
}

TEST(Simulate, RefinementConsistency) {
  std::mt19937_64 rng(4);
  for (const auto& m : models::all_models()) {
    const auto plant = Plant::linear_only(m.tf());
    const AwgSignal r(oracle::random_vector(rng, 20), 0.002);
    const auto coarse = simulate(plant, r, 10);
    const auto fine = simulate(plant, r, 20);
    for (std::size_t i = 0; i < coarse.size(); ++i) EXPECT_NEAR(coarse[i], fine[2 * i], 1e-9);
    // ZOH exactness down to M = 1
    const auto one = simulate(plant, r, 1);
    for (std::size_t i = 0; i < one.size(); ++i) EXPECT_NEAR(one[i], fine[20 * i], 1e-9);
  }
}

TEST(Simulate, SaturationOrdering) {
  std::mt19937_64 rng(9);
  const auto lin = Plant::linear_only(models::kPlant.tf());
  Plant sat = lin;
  sat.nonlinearity = Nonlinearity::saturation(0.8);
  const AwgSignal r(oracle::random_vector(rng, 30, -3.0, 3.0), 0.002);
  const auto ul = simulate(lin, r, 20);
  const auto us = simulate(sat, r, 20);
  for (std::size_t i = 0; i < ul.size(); ++i)
    EXPECT_LE(std::abs(us[i]), std::min(std::abs(ul[i]), 0.8) + 1e-15);
}

TEST(Simulate, PreLinearPlacement) {
  std::mt19937_64 rng(10);
  Plant pre = Plant::linear_only(models::kPlant.tf());
  pre.nonlinearity = Nonlinearity::saturation(1.0);
  pre.placement = Placement::kPreLinear;
  auto r = oracle::random_vector(rng, 20, -3.0, 3.0);
  std::vector<double> squashed;
  for (double x : r) squashed.push_back(std::tanh(x));
  const auto a = simulate(pre, AwgSignal(r, 0.002), 10);
  const auto b = simulate(Plant::linear_only(models::kPlant.tf()), AwgSignal(squashed, 0.002), 10);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-14);
}

TEST(Simulate, PeriodMismatchRejected) {
  const PlantSimulator sim(Plant{}, 0.002, 4);
  EXPECT_THROW(sim.run(AwgSignal::constant(1.0, 3, 0.001)), std::invalid_argument);
  EXPECT_THROW(PlantSimulator(Plant{}, 0.002, 0), std::invalid_argument);
}
