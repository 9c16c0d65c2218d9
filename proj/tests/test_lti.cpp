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
#include <numbers>

#include <Eigen/Eigenvalues>

#include "iterdeconv/lti.hpp"
#include "models.hpp"
#include "oracles.hpp"

using namespace iterdeconv;

namespace {

std::vector<double> tcs(std::initializer_list<double> v) { return v; }

}  // namespace

TEST(TransferFunction, PlantFromExpandedDenominator) {
  const auto den = poly::multiply(tcs({1.0, 0.008}), tcs({1.0, 0.001}));
  const auto G = make_transfer_function({1.0}, den);
  EXPECT_EQ(G.order(), 2);
  EXPECT_DOUBLE_EQ(G.denominator()[0], 1.0);
  EXPECT_NEAR(G.denominator()[1], 0.009, 1e-15);
  EXPECT_NEAR(G.denominator()[2], 8e-6, 1e-18);
  EXPECT_DOUBLE_EQ(G.dc_gain(), 1.0);
}

TEST(TransferFunction, IdentityAndNormalization) {
  const auto I = make_transfer_function({1.0}, {1.0});
  EXPECT_EQ(I.order(), 0);
  EXPECT_DOUBLE_EQ(I.evaluate({0.0, 3.0}).real(), 1.0);

  const auto scaled = make_transfer_function({4.0}, {2.0, 0.016});
  EXPECT_DOUBLE_EQ(scaled.numerator()[0], 2.0);
  EXPECT_DOUBLE_EQ(scaled.denominator()[0], 1.0);
  EXPECT_DOUBLE_EQ(scaled.denominator()[1], 0.008);
}

TEST(TransferFunction, RightHalfPlaneZero) {
  const auto den = models::Factored::expand({0.006, 0.001});
  const auto G4 = make_transfer_function({1.0, -0.006}, den);
  const auto z = G4.zeros();
  ASSERT_EQ(z.size(), 1u);
  EXPECT_NEAR(z[0].real(), 1.0 / 0.006, 1e-9);
  EXPECT_GT(z[0].real(), 0.0);

  const auto via_factors = models::kG4.tf();
  for (std::size_t i = 0; i < den.size(); ++i)
    EXPECT_NEAR(via_factors.denominator()[i], G4.denominator()[i], 1e-15);
}

TEST(TransferFunction, RejectsInvalid) {
  EXPECT_THROW(make_transfer_function({1.0, 1.0}, {1.0}), std::invalid_argument);
  EXPECT_THROW(make_transfer_function({1.0}, {0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(make_transfer_function({}, {1.0}), std::invalid_argument);
  EXPECT_THROW(make_transfer_function({1.0}, {}), std::invalid_argument);
  EXPECT_THROW(make_transfer_function({NAN}, {1.0}), std::invalid_argument);
  EXPECT_THROW(make_transfer_function({1.0}, {1.0, INFINITY}), std::invalid_argument);
  // trailing zeros make it proper again
  EXPECT_NO_THROW(make_transfer_function({1.0, 0.0}, {1.0}));
}

TEST(StateSpace, FirstOrderCanonical) {
  const double T = 0.008;
  const auto ss = to_state_space(models::Factored{{}, {T}}.tf());
  ASSERT_EQ(ss.order(), 1);
  EXPECT_DOUBLE_EQ(ss.A(0, 0), -1.0 / T);
  EXPECT_DOUBLE_EQ(ss.B(0), 1.0 / T);
  EXPECT_DOUBLE_EQ(ss.C(0), 1.0);
  EXPECT_DOUBLE_EQ(ss.D, 0.0);
}

TEST(StateSpace, IdentityHasNoStates) {
  const auto ss = to_state_space(TransferFunction::identity());
  EXPECT_EQ(ss.order(), 0);
  EXPECT_DOUBLE_EQ(ss.D, 1.0);
}

TEST(StateSpace, PlantPolesMatchQuadraticFormula) {
  const auto ss = to_state_space(models::kPlant.tf());
  ASSERT_EQ(ss.order(), 2);
  EXPECT_DOUBLE_EQ(ss.D, 0.0);
  const auto [p1, p2] = oracle::quadratic_roots(8e-6, 0.009, 1.0);
  Eigen::EigenSolver<Eigen::MatrixXd> es(ss.A);
  std::vector<double> got{es.eigenvalues()[0].real(), es.eigenvalues()[1].real()};
  std::sort(got.begin(), got.end());
  EXPECT_NEAR(got[0], std::min(p1.real(), p2.real()), 1e-9);
  EXPECT_NEAR(got[1], std::max(p1.real(), p2.real()), 1e-9);
  EXPECT_NEAR(got[0], -1000.0, 1e-9);
  EXPECT_NEAR(got[1], -125.0, 1e-9);
}

TEST(StateSpace, RealizationRoundTrip) {
  for (const auto& m : models::all_models()) {
    const auto tf = m.tf();
    const auto back = to_transfer_function(to_state_space(tf));
    ASSERT_EQ(back.denominator().size(), tf.denominator().size());
    for (std::size_t i = 0; i < tf.denominator().size(); ++i)
      EXPECT_NEAR(back.denominator()[i], tf.denominator()[i], 1e-12);
    for (std::size_t i = 0; i < tf.numerator().size(); ++i)
      EXPECT_NEAR(back.numerator()[i], tf.numerator()[i], 1e-12);
  }
  const auto proper = make_transfer_function({2.0, 0.5}, {1.0, 0.25});
  const auto back = to_transfer_function(to_state_space(proper));
  EXPECT_NEAR(back.numerator()[1], 0.5, 1e-14);
}

TEST(StateSpace, CharacteristicPolynomial) {
  Eigen::MatrixXd A(2, 2);
  A << 1, 2, 3, 4;
  const auto p = characteristic_polynomial(A);
  // s^2 - 5 s - 2
  EXPECT_NEAR(p[0], -2.0, 1e-12);
  EXPECT_NEAR(p[1], -5.0, 1e-12);
  EXPECT_NEAR(p[2], 1.0, 1e-12);
}

TEST(Zoh, FirstOrderClosedForm) {
  const auto d = zoh_discretize(to_state_space(models::Factored{{}, {0.008}}.tf()), 0.002);
  EXPECT_NEAR(d.Ad(0, 0), std::exp(-0.25), 1e-14);
  EXPECT_NEAR(d.Bd(0), 1.0 - std::exp(-0.25), 1e-14);
  EXPECT_NEAR(d.Ad(0, 0), 0.778801, 1e-6);
  EXPECT_NEAR(d.Bd(0), 0.221199, 1e-6);
}

TEST(Zoh, PureGain) {
  auto ss = to_state_space(make_transfer_function({3.0}, {1.0}));
  const auto d = zoh_discretize(ss, 0.1);
  EXPECT_EQ(d.Ad.size(), 0);
  EXPECT_EQ(d.Bd.size(), 0);
  EXPECT_DOUBLE_EQ(d.D, 3.0);
}

TEST(Zoh, PlantMatchesIntegration) {
  const auto ss = to_state_space(models::kPlant.tf());
  const double h = 0.002;
  const auto d = zoh_discretize(ss, h);
  // integrate x' = A x + B u with RK4 at h / 1e4 on the realization itself
  const int steps = 10000;
  const double dt = h / steps;
  auto integrate = [&](Eigen::VectorXd x, double u) {
    for (int i = 0; i < steps; ++i) {
      auto f = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd { return ss.A * y + ss.B * u; };
      const Eigen::VectorXd k1 = f(x), k2 = f(x + dt / 2 * k1), k3 = f(x + dt / 2 * k2),
                            k4 = f(x + dt * k3);
      x += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return x;
  };
  const Eigen::VectorXd bd = integrate(Eigen::VectorXd::Zero(2), 1.0);
  EXPECT_LT((bd - d.Bd).cwiseAbs().maxCoeff(), 1e-6);
  for (int j = 0; j < 2; ++j) {
    const Eigen::VectorXd col = integrate(Eigen::VectorXd::Unit(2, j), 0.0);
    EXPECT_LT((col - d.Ad.col(j)).cwiseAbs().maxCoeff() / d.Ad.cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(Zoh, RejectsNonPositiveStep) {
  const auto ss = to_state_space(models::kPlant.tf());
  EXPECT_THROW(zoh_discretize(ss, 0.0), std::invalid_argument);
  EXPECT_THROW(zoh_discretize(ss, -1.0), std::invalid_argument);
}

TEST(Zoh, PolesMapInsideUnitCircle) {
  for (const auto& m : models::all_models()) {
    const auto ss = to_state_space(m.tf());
    Eigen::EigenSolver<Eigen::MatrixXd> es(ss.A);
    for (int i = 0; i < ss.order(); ++i) EXPECT_LT(es.eigenvalues()[i].real(), 0.0);
    const auto d = zoh_discretize(ss, 0.002);
    Eigen::EigenSolver<Eigen::MatrixXd> ed(d.Ad);
    for (int i = 0; i < d.order(); ++i) EXPECT_LT(std::abs(ed.eigenvalues()[i]), 1.0);
  }
}

TEST(StepResponse, FirstOrderAtTimeConstant) {
  const double T = 0.008;
  const std::vector<double> t{0.0, T};
  const auto h = step_response(models::Factored{{}, {T}}.tf(), t);
  EXPECT_DOUBLE_EQ(h[0], 0.0);
  EXPECT_NEAR(h[1], 1.0 - std::exp(-1.0), 1e-14);
  EXPECT_NEAR(h[1], 0.632121, 1e-6);
}

TEST(StepResponse, IdentityIsOne) {
  const std::vector<double> t{0.0, 0.001, 0.5, 3.0};
  for (double v : step_response(TransferFunction::identity(), t)) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(StepResponse, PlantMatchesIntegrationOracle) {
  const std::vector<double> t{0.002, 0.004, 0.01, 0.05};
  const auto h = step_response(models::kPlant.tf(), t);
  const auto ref = oracle::step_response(models::kPlant.num(), models::kPlant.den(), t, 40000);
  EXPECT_GT(h[0], 0.0);
  EXPECT_LT(h[0], 1.0);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(h[i], ref[i], 1e-8) << "t=" << t[i];
}

TEST(StepResponse, NonMinimumPhaseUndershoot) {
  const std::vector<double> t{0.0005, 0.002, 0.2};
  for (const auto& m : {models::kG3, models::kG4}) {
    const auto h = step_response(m.tf(), t);
    const auto ref = oracle::step_response(m.num(), m.den(), t, 20000);
    EXPECT_LT(h[0], 0.0);
    EXPECT_NEAR(h[2], 1.0, 1e-9);
    for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(h[i], ref[i], 1e-8);
  }
}

TEST(StepResponse, RejectsBadGrids) {
  const auto G = models::kPlant.tf();
  EXPECT_THROW(step_response(G, std::vector<double>{0.0, 0.002, 0.001}), std::invalid_argument);
  EXPECT_THROW(step_response(G, std::vector<double>{-0.001, 0.0}), std::invalid_argument);
}

TEST(StepResponse, RealizationInvariance) {
  std::vector<double> t;
  for (int i = 0; i <= 60; ++i) t.push_back(0.0005 * i + (i % 3) * 1e-4);
  std::sort(t.begin(), t.end());
  for (const auto& m : models::all_models()) {
    const auto tf = m.tf();
    const auto a = step_response(tf, t);
    const auto b = step_response(to_state_space(tf), t);
    for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-10);
  }
}

TEST(FrequencyResponse, FirstOrderCorner) {
  const double T = 0.004;
  const auto g = frequency_response(models::Factored{{}, {T}}.tf(), 1.0 / T);
  EXPECT_NEAR(std::abs(g), 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(std::arg(g) * 180.0 / std::numbers::pi, -45.0, 1e-12);
}

TEST(FrequencyResponse, DcIsNumeratorConstant) {
  const auto tf = make_transfer_function({2.5, 0.3}, {1.0, 0.01, 1e-5});
  const auto g = frequency_response(tf, 0.0);
  EXPECT_DOUBLE_EQ(g.real(), 2.5);
  EXPECT_DOUBLE_EQ(g.imag(), 0.0);
}

TEST(FrequencyResponse, FactorwisePhase) {
  for (const auto& m : models::all_models()) {
    for (double w : {10.0, 500.0, 1570.0}) {
      const double got = std::arg(frequency_response(m.tf(), w)) * 180.0 / std::numbers::pi;
      double want = oracle::factor_phase_deg(m.zeros, m.poles, w);
      want -= 360.0 * std::round((want - got) / 360.0);
      EXPECT_NEAR(got, want, 1e-9);
    }
  }
  const double g3 = std::arg(frequency_response(models::kG3.tf(), 500.0)) * 180.0 / std::numbers::pi;
  EXPECT_NEAR(g3, -(45.0 + std::atan(3.0) * 180 / std::numbers::pi + std::atan(0.5) * 180 / std::numbers::pi), 1e-9);
}

TEST(FrequencyResponse, PoleOnImaginaryAxis) {
  const auto integrator = make_transfer_function({1.0}, {0.0, 1.0});
  EXPECT_THROW(frequency_response(integrator, 0.0), SingularityError);
  const auto oscillator = make_transfer_function({1.0}, {1.0, 0.0, 1.0});
  EXPECT_THROW(frequency_response(oscillator, 1.0), SingularityError);
  EXPECT_THROW(frequency_response(to_state_space(oscillator), 1.0), SingularityError);
  EXPECT_NO_THROW(frequency_response(oscillator, 2.0));
}

TEST(FrequencyResponse, RealizationInvariance) {
  for (const auto& m : models::all_models()) {
    const auto tf = m.tf();
    const auto ss = to_state_space(tf);
    for (double w = 1.0; w < 5000.0; w *= 1.7) {
      EXPECT_LT(std::abs(frequency_response(tf, w) - frequency_response(ss, w)), 1e-10);
    }
  }
}
