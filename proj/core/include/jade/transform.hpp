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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace jade {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Digital radian frequency of DFT bin q on an n-point grid, mapped to (-pi, pi].
double bin_frequency(std::size_t q, std::size_t n);

/// All n bin frequencies in natural DFT order (q = 0 ... n-1).
std::vector<double> frequency_grid(std::size_t n);

/// Forward DFT whose time axis is referenced to sample `origin`:
///   X_q = sum_n x_n exp(-j w_q (n - origin)).
/// With origin at the t = 0 sample the phase describes the waveform itself
/// rather than its position in the record. Shift and Hermitian properties
/// are the same as the plain DFT.
ComplexVector forward_dft(std::span<const Complex> x, std::size_t origin);
ComplexVector forward_dft(std::span<const double> x, std::size_t origin);

/// Inverse of forward_dft for the same origin.
ComplexVector inverse_dft(std::span<const Complex> spectrum, std::size_t origin);

}  // namespace jade
