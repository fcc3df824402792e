// SPDX-License-Identifier: Apache-2.0
//
// jade: joint angle and delay estimation for faded multipath arrays
// Copyright (C) 2026 The jade authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "jade/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "jade/error.hpp"

namespace jade {
namespace {

constexpr double kRootResidualBound = 1e-8;
constexpr int kPolishSteps = 3;

double scaled_residual(std::span<const Complex> coeffs, Complex z, double max_coeff) {
    const auto degree = static_cast<double>(coeffs.size() - 1);
    const double growth = std::pow(std::max(1.0, std::abs(z)), degree);
    return std::abs(evaluate_polynomial(coeffs, z)) / (degree * max_coeff * growth);
}

std::string describe(std::span<const Complex> coeffs) {
    std::ostringstream os;
    os.precision(17);
    os << '[';
    for (std::size_t i = 0; i < coeffs.size(); ++i) os << (i ? ", " : "") << coeffs[i];
    os << ']';
    return os.str();
}

}  // namespace

Complex evaluate_polynomial(std::span<const Complex> coeffs, Complex z) {
    Complex acc{};
    for (const Complex& c : coeffs) acc = acc * z + c;
    return acc;
}

ComplexVector polynomial_from_roots(std::span<const Complex> roots) {
    ComplexVector coeffs{Complex(1.0, 0.0)};
    for (const Complex& r : roots) {
        coeffs.push_back(Complex{});
        for (std::size_t i = coeffs.size() - 1; i > 0; --i) coeffs[i] -= r * coeffs[i - 1];
    }
    return coeffs;
}

ComplexVector roots_of_polynomial(std::span<const Complex> coeffs) {
    if (coeffs.size() < 2) throw ValidationError("roots_of_polynomial: degree must be >= 1");
    if (coeffs[0] == Complex{}) throw ValidationError("roots_of_polynomial: leading coefficient is zero");
    for (const Complex& c : coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw ValidationError("roots_of_polynomial: non-finite coefficient");

    const auto degree = static_cast<Eigen::Index>(coeffs.size() - 1);
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
    for (Eigen::Index j = 0; j < degree; ++j) companion(0, j) = -coeffs[static_cast<std::size_t>(j + 1)] / coeffs[0];
    for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw EstimationError("roots_of_polynomial: eigenvalue iteration did not converge for " + describe(coeffs));

    ComplexVector derivative(coeffs.size() - 1);
    for (std::size_t i = 0; i < derivative.size(); ++i)
        derivative[i] = coeffs[i] * static_cast<double>(coeffs.size() - 1 - i);

    double max_coeff = 0.0;
    for (const Complex& c : coeffs) max_coeff = std::max(max_coeff, std::abs(c));

    ComplexVector roots(static_cast<std::size_t>(degree));
    for (Eigen::Index i = 0; i < degree; ++i) {
        Complex z = solver.eigenvalues()(i);
        double best = std::abs(evaluate_polynomial(coeffs, z));
        for (int step = 0; step < kPolishSteps && best > 0.0; ++step) {
            const Complex slope = evaluate_polynomial(derivative, z);
            if (slope == Complex{}) break;
            const Complex next = z - evaluate_polynomial(coeffs, z) / slope;
            const double value = std::abs(evaluate_polynomial(coeffs, next));
            if (!(value < best)) break;
            z = next;
            best = value;
        }
        if (!(scaled_residual(coeffs, z, max_coeff) < kRootResidualBound))
            throw EstimationError("roots_of_polynomial: root " + describe(std::span<const Complex>(&z, 1)) +
                                  " fails the residual bound for " + describe(coeffs));
        roots[static_cast<std::size_t>(i)] = z;
    }
    return roots;
}

}  // namespace jade
