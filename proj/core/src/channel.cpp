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

#include "jade/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "jade/error.hpp"

namespace jade {
namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

Complex circular_gaussian(std::mt19937_64& rng, double sigma) {
    std::normal_distribution<double> normal(0.0, sigma);
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

double uniform_phase(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> phase(-kPi, kPi);
    return phase(rng);
}

}  // namespace

void validate(const ArrayConfig& arr) {
    if (arr.sensors < 2) throw ValidationError("array: need at least 2 sensors");
    if (!(arr.delta > 0.0) || !std::isfinite(arr.delta)) throw ValidationError("array: delta must be > 0");
}

bool may_alias(const ArrayConfig& arr) { return arr.delta > 0.5; }

void validate(const PathParam& path, std::size_t sample_count) {
    if (!(path.theta_deg > -90.0 && path.theta_deg < 90.0))
        throw ValidationError("path: theta must lie in (-90, 90) degrees, got " + std::to_string(path.theta_deg));
    if (!std::isfinite(path.tau) || std::abs(path.tau) >= static_cast<double>(sample_count) / 2.0)
        throw ValidationError("path: |tau| must be below N/2, got " + std::to_string(path.tau));
}

void validate(const FadingModel& fading) {
    std::visit(overloaded{
                   [](const DeterministicFading& f) {
                       if (!std::isfinite(f.beta.real()) || !std::isfinite(f.beta.imag()))
                           throw ValidationError("fading: beta must be finite");
                   },
                   [](const RayleighFading& f) {
                       if (!(f.sigma > 0.0)) throw ValidationError("fading: rayleigh sigma must be > 0");
                   },
                   [](const RicianFading& f) {
                       if (!(f.sigma > 0.0)) throw ValidationError("fading: rician sigma must be > 0");
                       if (!(f.nu >= 0.0)) throw ValidationError("fading: rician nu must be >= 0");
                   },
                   [](const SuzukiFading& f) {
                       if (!(f.sigma > 0.0)) throw ValidationError("fading: suzuki sigma must be > 0");
                       if (!(f.sigma_db >= 0.0)) throw ValidationError("fading: suzuki sigma_db must be >= 0");
                   },
               },
               fading);
}

std::string fading_name(const FadingModel& fading) {
    return std::visit(overloaded{
                          [](const DeterministicFading&) { return std::string("deterministic"); },
                          [](const RayleighFading&) { return std::string("rayleigh"); },
                          [](const RicianFading&) { return std::string("rician"); },
                          [](const SuzukiFading&) { return std::string("suzuki"); },
                      },
                      fading);
}

Complex draw_fading(const FadingModel& fading, std::mt19937_64& rng) {
    return std::visit(overloaded{
                          [](const DeterministicFading& f) { return f.beta; },
                          [&rng](const RayleighFading& f) { return circular_gaussian(rng, f.sigma); },
                          [&rng](const RicianFading& f) {
                              const Complex scatter = circular_gaussian(rng, f.sigma);
                              return std::polar(1.0, uniform_phase(rng)) * (f.nu + scatter);
                          },
                          [&rng](const SuzukiFading& f) {
                              const double rayleigh = std::abs(circular_gaussian(rng, f.sigma));
                              std::normal_distribution<double> shadow(f.mu_db, f.sigma_db);
                              const double gain = std::pow(10.0, shadow(rng) / 20.0);
                              return std::polar(rayleigh * gain, uniform_phase(rng));
                          },
                      },
                      fading);
}

ComplexVector steering_vector(const ArrayConfig& arr, double theta_deg) {
    validate(arr);
    const double s = std::sin(theta_deg * kPi / 180.0);
    ComplexVector a(static_cast<std::size_t>(arr.sensors));
    for (std::size_t k = 0; k < a.size(); ++k)
        a[k] = std::polar(1.0, 2.0 * kPi * arr.delta * static_cast<double>(k) * s);
    return a;
}

std::mt19937_64 snapshot_rng(std::uint64_t seed, std::size_t snapshot) {
    const auto s = static_cast<std::uint64_t>(snapshot);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
    return std::mt19937_64(seq);
}

SnapshotSet::SnapshotSet(ArrayConfig array, std::size_t snapshots, std::size_t samples, ComplexVector data)
    : array_(array), snapshots_(snapshots), samples_(samples), data_(std::move(data)) {
    validate(array_);
    if (samples_ < 2) throw ValidationError("snapshots: need at least 2 samples per record");
    if (data_.size() != snapshots_ * sensors() * samples_)
        throw ValidationError("snapshots: data size does not match S*M*N");
    spectra_.resize(data_.size());
    const std::size_t origin = samples_ / 2;
    for (std::size_t row = 0; row < snapshots_ * sensors(); ++row) {
        const std::span<const Complex> x(data_.data() + row * samples_, samples_);
        const ComplexVector X = forward_dft(x, origin);
        std::copy(X.begin(), X.end(), spectra_.begin() + static_cast<std::ptrdiff_t>(row * samples_));
    }
}

std::span<const Complex> SnapshotSet::series(std::size_t s, std::size_t k) const {
    return {data_.data() + (s * sensors() + k) * samples_, samples_};
}

std::span<const Complex> SnapshotSet::spectrum(std::size_t s, std::size_t k) const {
    return {spectra_.data() + (s * sensors() + k) * samples_, samples_};
}

SnapshotSet synthesize(const SampledWaveform& pulse, std::span<const PathParam> paths, const ArrayConfig& arr,
                       const FadingModel& fading, std::size_t snapshots, double noise_var, std::uint64_t seed) {
    validate(arr);
    validate(fading);
    const std::size_t n = pulse.size();
    if (n < 2 || pulse.t.size() != n) throw ValidationError("synthesize: pulse length mismatch");
    if (paths.empty()) throw ValidationError("synthesize: at least one path is required");
    if (snapshots < 1) throw ValidationError("synthesize: snapshot count must be >= 1");
    if (!(noise_var >= 0.0)) throw ValidationError("synthesize: noise_var must be >= 0");
    for (const auto& p : paths) validate(p, n);

    const std::size_t m = static_cast<std::size_t>(arr.sensors);
    const std::size_t paths_n = paths.size();
    const std::size_t origin = pulse.origin();
    const ComplexVector g = forward_dft(std::span<const double>(pulse.values), origin);
    const std::vector<double> omega = frequency_grid(n);

    std::vector<ComplexVector> delayed(paths_n);
    std::vector<ComplexVector> steering(paths_n);
    for (std::size_t i = 0; i < paths_n; ++i) {
        ComplexVector shifted(n);
        for (std::size_t q = 0; q < n; ++q) shifted[q] = g[q] * std::polar(1.0, -omega[q] * paths[i].tau);
        delayed[i] = inverse_dft(shifted, origin);
        steering[i] = steering_vector(arr, paths[i].theta_deg);
    }

    ChannelTruth truth{{paths.begin(), paths.end()}, fading, noise_var, seed, {}};
    truth.betas.resize(snapshots * paths_n);

    ComplexVector data(snapshots * m * n, Complex{});
    const double noise_sigma = std::sqrt(noise_var / 2.0);
    for (std::size_t s = 0; s < snapshots; ++s) {
        auto rng = snapshot_rng(seed, s);
        for (std::size_t i = 0; i < paths_n; ++i) truth.betas[s * paths_n + i] = draw_fading(fading, rng);
        for (std::size_t k = 0; k < m; ++k) {
            Complex* row = data.data() + (s * m + k) * n;
            for (std::size_t i = 0; i < paths_n; ++i) {
                const Complex gain = truth.betas[s * paths_n + i] * steering[i][k];
                for (std::size_t t = 0; t < n; ++t) row[t] += gain * delayed[i][t];
            }
        }
        if (noise_var > 0.0) {
            std::normal_distribution<double> normal(0.0, noise_sigma);
            Complex* block = data.data() + s * m * n;
            for (std::size_t j = 0; j < m * n; ++j) {
                const double re = normal(rng);
                const double im = normal(rng);
                block[j] += Complex(re, im);
            }
        }
    }

    SnapshotSet out(arr, snapshots, n, std::move(data));
    out.truth = std::move(truth);
    return out;
}

}  // namespace jade
