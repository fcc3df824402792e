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

#include "jade/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "jade/error.hpp"

namespace jade {
namespace {

constexpr double kPi = std::numbers::pi;

// |1 - 4 rho^2 t^2| below this is treated as the rolloff singularity.
constexpr double kRolloffSingularity = 1e-9;

std::ptrdiff_t floor_div(std::ptrdiff_t a, std::ptrdiff_t b) {
    std::ptrdiff_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

void validate(const PulseConfig& cfg) {
    if (!(cfg.rho > 0.0 && cfg.rho <= 1.0))
        throw ValidationError("pulse: rho must lie in (0, 1], got " + std::to_string(cfg.rho));
    if (!(cfg.fc >= 0.0) || !std::isfinite(cfg.fc))
        throw ValidationError("pulse: fc must be finite and >= 0");
    if (cfg.symbol_count < 1) throw ValidationError("pulse: symbol_count must be >= 1");
    if (cfg.oversample < 1) throw ValidationError("pulse: oversample must be >= 1");
    if (cfg.sample_count() % 2 != 0)
        throw ValidationError("pulse: symbol_count * oversample must be even");
    if (!cfg.bits.empty()) {
        if (cfg.bits.size() != static_cast<std::size_t>(cfg.symbol_count))
            throw ValidationError("pulse: bits length " + std::to_string(cfg.bits.size()) +
                                  " != symbol_count " + std::to_string(cfg.symbol_count));
        for (int b : cfg.bits)
            if (b != 0 && b != 1) throw ValidationError("pulse: bits must be 0 or 1");
    }
    // First and last samples must land on a symbol of the bit stream.
    const auto n = static_cast<std::ptrdiff_t>(cfg.sample_count());
    const auto os = static_cast<std::ptrdiff_t>(cfg.oversample);
    const std::ptrdiff_t first = floor_div(-n / 2, os) + cfg.symbol_count / 2;
    const std::ptrdiff_t last = floor_div(n - 1 - n / 2, os) + cfg.symbol_count / 2;
    if (first < 0 || last >= cfg.symbol_count)
        throw ValidationError("pulse: time grid maps outside the bit array (use an even symbol_count)");
}

std::vector<int> draw_bits(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::vector<int> bits(count);
    for (auto& b : bits) b = coin(rng) ? 1 : 0;
    return bits;
}

PulseConfig resolve_bits(PulseConfig cfg) {
    if (cfg.bits.empty() && cfg.symbol_count > 0)
        cfg.bits = draw_bits(static_cast<std::size_t>(cfg.symbol_count), cfg.bit_seed);
    return cfg;
}

double raised_cosine_value(double t, double rho, double fc, int bit) {
    const double sinc = (t == 0.0) ? 1.0 : std::sin(kPi * t) / (kPi * t);
    const double denom = 1.0 - 4.0 * rho * rho * t * t;
    const double rolloff = std::abs(denom) < kRolloffSingularity ? kPi / 4.0 : std::cos(kPi * rho * t) / denom;
    return sinc * rolloff * std::cos(2.0 * kPi * fc * t + kPi * bit);
}

SampledWaveform generate_pulse(const PulseConfig& config) {
    validate(config);
    const PulseConfig cfg = resolve_bits(config);
    const auto n = static_cast<std::ptrdiff_t>(cfg.sample_count());
    const auto os = static_cast<std::ptrdiff_t>(cfg.oversample);

    SampledWaveform w;
    w.oversample = cfg.oversample;
    w.t.resize(static_cast<std::size_t>(n));
    w.values.resize(static_cast<std::size_t>(n));
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const std::ptrdiff_t offset = i - n / 2;
        const double t = static_cast<double>(offset) / static_cast<double>(os);
        const auto symbol = static_cast<std::size_t>(floor_div(offset, os) + cfg.symbol_count / 2);
        w.t[static_cast<std::size_t>(i)] = t;
        w.values[static_cast<std::size_t>(i)] = raised_cosine_value(t, cfg.rho, cfg.fc, cfg.bits[symbol]);
    }
    return w;
}

std::vector<double> unwrap_phase(std::span<const double> phi) {
    std::vector<double> out(phi.size());
    if (phi.empty()) return out;
    constexpr double two_pi = 2.0 * kPi;
    out[0] = phi[0];
    double turns = 0.0;  // accumulated correction, in whole turns
    for (std::size_t i = 1; i < phi.size(); ++i) {
        const double d = phi[i] - phi[i - 1];
        // k such that d - 2 pi k lies in (-pi, pi]
        const double k = std::ceil((d - kPi) / two_pi);
        turns -= k;
        out[i] = phi[i] + two_pi * turns;
    }
    return out;
}

std::vector<std::size_t> contiguous_band(std::span<const double> magnitude, double eta) {
    const std::size_t n = magnitude.size();
    if (n < 2) return {};
    const std::size_t last_positive = n / 2;
    const double peak = *std::max_element(magnitude.begin(), magnitude.end());
    const double threshold = eta * peak;

    std::size_t anchor = 1;
    for (std::size_t q = 1; q <= last_positive; ++q)
        if (magnitude[q] > magnitude[anchor]) anchor = q;
    if (magnitude[anchor] < threshold || peak <= 0.0) return {};

    std::size_t lo = anchor, hi = anchor;
    while (lo > 1 && magnitude[lo - 1] >= threshold) --lo;
    while (hi < last_positive && magnitude[hi + 1] >= threshold) ++hi;

    std::vector<std::size_t> band;
    band.reserve(hi - lo + 1);
    for (std::size_t q = lo; q <= hi; ++q) band.push_back(q);
    return band;
}

Spectrum spectrum(const SampledWaveform& w, double band_threshold) {
    const std::size_t n = w.size();
    if (n < 2) throw ValidationError("spectrum: waveform needs at least 2 samples");
    Spectrum sp;
    sp.omega = frequency_grid(n);
    sp.values = forward_dft(std::span<const double>(w.values), w.origin());
    sp.magnitude.resize(n);
    sp.phase.resize(n);
    for (std::size_t q = 0; q < n; ++q) {
        sp.magnitude[q] = std::abs(sp.values[q]);
        sp.phase[q] = std::arg(sp.values[q]);
    }
    sp.passband = contiguous_band(sp.magnitude, band_threshold);
    std::vector<double> band_phase;
    band_phase.reserve(sp.passband.size());
    for (std::size_t q : sp.passband) band_phase.push_back(sp.phase[q]);
    sp.phase_unwrapped = unwrap_phase(band_phase);
    return sp;
}

SampledWaveform circular_shift(const SampledWaveform& w, std::ptrdiff_t d) {
    SampledWaveform out = w;
    const auto n = static_cast<std::ptrdiff_t>(w.size());
    if (n == 0) return out;
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const std::ptrdiff_t src = ((i - d) % n + n) % n;
        out.values[static_cast<std::size_t>(i)] = w.values[static_cast<std::size_t>(src)];
    }
    return out;
}

}  // namespace jade
