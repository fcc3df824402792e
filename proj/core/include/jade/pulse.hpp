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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "jade/transform.hpp"

namespace jade {

/// Default relative magnitude threshold that delimits the pulse passband.
inline constexpr double kDefaultBandThreshold = 0.1;

/// Raised-cosine passband pulse with a BPSK bit stream:
///   g(t) = sinc(t) * cos(pi rho t) / (1 - 4 rho^2 t^2) * cos(2 pi fc t + pi p(t))
/// with t in symbol periods and fc in cycles per symbol period.
struct PulseConfig {
    double rho = 0.35;
    double fc = 0.25;
    int symbol_count = 32;
    int oversample = 4;
    // One bit per symbol period. Drawn from bit_seed when left empty.
    std::vector<int> bits;
    std::uint64_t bit_seed = 1;

    std::size_t sample_count() const {
        return static_cast<std::size_t>(symbol_count) * static_cast<std::size_t>(oversample);
    }
};

struct SampledWaveform {
    std::vector<double> t;       // symbol periods, step 1/oversample
    std::vector<double> values;
    int oversample = 1;

    std::size_t size() const { return values.size(); }
    // Index of the t = 0 sample; the transform is referenced to it.
    std::size_t origin() const { return values.size() / 2; }
};

struct Spectrum {
    std::vector<double> omega;    // rad/sample, natural DFT order, in (-pi, pi]
    ComplexVector values;
    std::vector<double> magnitude;
    std::vector<double> phase;    // principal value
    // Contiguous positive-frequency passband and the unwrapped phase on it.
    std::vector<std::size_t> passband;
    std::vector<double> phase_unwrapped;

    std::size_t size() const { return values.size(); }
};

/// Throws ValidationError when cfg breaks an invariant. Bits may be empty.
void validate(const PulseConfig& cfg);

/// Uniform random bits, reproducible from seed.
std::vector<int> draw_bits(std::size_t count, std::uint64_t seed);

/// cfg with bits filled from bit_seed if they were not supplied.
PulseConfig resolve_bits(PulseConfig cfg);

/// Single-point evaluation with the removable singularities at t = 0 and
/// |t| = 1/(2 rho) replaced by their limits.
double raised_cosine_value(double t, double rho, double fc, int bit);

/// Samples t_n = (n - N/2) / oversample for n = 0 ... N-1.
SampledWaveform generate_pulse(const PulseConfig& cfg);

/// Transform of any uniformly sampled waveform. The passband is found with
/// contiguous_band(magnitude, band_threshold).
Spectrum spectrum(const SampledWaveform& w, double band_threshold = kDefaultBandThreshold);

/// Phase unwrapping: every successive difference is moved into (-pi, pi]
/// by a multiple of 2 pi. out[0] == in[0].
std::vector<double> unwrap_phase(std::span<const double> phi);

/// Longest contiguous run of positive-frequency bins (0 < w <= pi) where
/// magnitude >= eta * max(magnitude) and which contains the largest
/// positive-frequency bin. Empty when that bin itself is below threshold.
std::vector<std::size_t> contiguous_band(std::span<const double> magnitude, double eta);

/// Values rotated right by d samples (negative d rotates left); grid unchanged.
SampledWaveform circular_shift(const SampledWaveform& w, std::ptrdiff_t d);

}  // namespace jade
