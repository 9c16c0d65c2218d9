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
#include "iterdeconv/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace iterdeconv::poly {

Polynomial multiply(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  Polynomial out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Polynomial trim(Polynomial p, double tol) {
  while (p.size() > 1 && std::abs(p.back()) <= tol) p.pop_back();
  return p;
}

int degree(std::span<const double> p) {
  for (int i = static_cast<int>(p.size()) - 1; i > 0; --i) {
    if (p[i] != 0.0) return i;
  }
  return 0;
}

std::complex<double> evaluate(std::span<const double> p, std::complex<double> x) {
  std::complex<double> acc{0.0, 0.0};
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double evaluate(std::span<const double> p, double x) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<std::complex<double>> roots(std::span<const double> p) {
  const int n = degree(p);
  if (n == 0) return {};
  const double lead = p[n];
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p[i] / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("polynomial root finding did not converge");
  }
  std::vector<std::complex<double>> out(n);
  for (int i = 0; i < n; ++i) out[i] = solver.eigenvalues()[i];
  return out;
}

Polynomial from_time_constants(std::span<const double> time_constants) {
  Polynomial p{1.0};
  for (double t : time_constants) {
    const double factor[2] = {1.0, t};
    p = multiply(p, factor);
  }
  return p;
}

Polynomial from_roots(std::span<const std::complex<double>> r, double leading) {
  std::vector<std::complex<double>> acc{leading};
  for (const auto& root : r) {
    std::vector<std::complex<double>> next(acc.size() + 1, 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i + 1] += acc[i];
      next[i] -= acc[i] * root;
    }
    acc = std::move(next);
  }
  Polynomial out(acc.size());
  std::transform(acc.begin(), acc.end(), out.begin(),
                 [](const std::complex<double>& c) { return c.real(); });
  return out;
}

}  // namespace iterdeconv::poly
