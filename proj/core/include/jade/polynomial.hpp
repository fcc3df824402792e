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

#pragma once

#include <span>

#include "jade/transform.hpp"

namespace jade {

/// All roots of coeffs[0] z^d + coeffs[1] z^(d-1) + ... + coeffs[d].
///
/// Eigenvalues of the companion matrix, each refined by Newton steps that
/// are kept only when they shrink |p(z)|. Every returned root satisfies
///   |p(z)| / (d * max|c| * max(1, |z|)^d) < 1e-8,
/// otherwise EstimationError is thrown with the offending coefficients.
ComplexVector roots_of_polynomial(std::span<const Complex> coeffs);

/// Horner evaluation, same coefficient order as roots_of_polynomial.
Complex evaluate_polynomial(std::span<const Complex> coeffs, Complex z);

/// Coefficients (leading 1) of prod_i (z - roots[i]).
ComplexVector polynomial_from_roots(std::span<const Complex> roots);

}  // namespace jade
