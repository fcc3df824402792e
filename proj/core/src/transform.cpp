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

#include "jade/transform.hpp"

#include <numbers>

#include <unsupported/Eigen/FFT>

namespace jade {
namespace {

// exp(j 2 pi r / n) with exact values on the quarter turns.
Complex unit_root(std::size_t r, std::size_t n) {
    if ((4 * r) % n == 0) {
        switch ((4 * r) / n) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
}

// Eigen's FFT caches twiddles per size inside the object; one per thread.
Eigen::FFT<double>& fft_engine() {
    thread_local Eigen::FFT<double> engine;
    return engine;
}

}  // namespace

double bin_frequency(std::size_t q, std::size_t n) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(n);
    return 2 * q <= n ? w : w - 2.0 * std::numbers::pi;
}

std::vector<double> frequency_grid(std::size_t n) {
    std::vector<double> omega(n);
    for (std::size_t q = 0; q < n; ++q) omega[q] = bin_frequency(q, n);
    return omega;
}

ComplexVector forward_dft(std::span<const Complex> x, std::size_t origin) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    ComplexVector in(x.begin(), x.end());
    ComplexVector out;
    fft_engine().fwd(out, in);
    for (std::size_t q = 0; q < n; ++q) out[q] *= unit_root((q * origin) % n, n);
    return out;
}

ComplexVector forward_dft(std::span<const double> x, std::size_t origin) {
    ComplexVector cx(x.begin(), x.end());
    return forward_dft(std::span<const Complex>(cx), origin);
}

ComplexVector inverse_dft(std::span<const Complex> spectrum, std::size_t origin) {
    const std::size_t n = spectrum.size();
    if (n == 0) return {};
    ComplexVector in(spectrum.begin(), spectrum.end());
    for (std::size_t q = 0; q < n; ++q) in[q] *= std::conj(unit_root((q * origin) % n, n));
    ComplexVector out;
    fft_engine().inv(out, in);
    return out;
}

}  // namespace jade
