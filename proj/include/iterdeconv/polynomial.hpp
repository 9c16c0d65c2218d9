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
#ifndef ITERDECONV_POLYNOMIAL_HPP
#define ITERDECONV_POLYNOMIAL_HPP

#include <complex>
#include <span>
#include <vector>

namespace iterdeconv {

// Real polynomial stored in ascending powers: c[0] + c[1] x + c[2] x^2 + ...
using Polynomial = std::vector<double>;

namespace poly {

Polynomial multiply(std::span<const double> a, std::span<const double> b);

// Drops highest-power coefficients whose magnitude is <= tol (keeps at least one).
Polynomial trim(Polynomial p, double tol = 0.0);

// Index of the highest nonzero coefficient; 0 for the zero polynomial.
int degree(std::span<const double> p);

std::complex<double> evaluate(std::span<const double> p, std::complex<double> x);
double evaluate(std::span<const double> p, double x);

// Roots via eigenvalues of the companion matrix. Leading coefficient must be nonzero.
std::vector<std::complex<double>> roots(std::span<const double> p);

// Builds prod_i (t_i x + 1) from time constants.
Polynomial from_time_constants(std::span<const double> time_constants);

// Real polynomial with the given roots (complex roots must come in conjugate pairs),
// scaled by `leading`.
Polynomial from_roots(std::span<const std::complex<double>> r, double leading = 1.0);

}  // namespace poly
}  // namespace iterdeconv

#endif  // ITERDECONV_POLYNOMIAL_HPP
