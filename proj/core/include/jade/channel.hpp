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
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "jade/pulse.hpp"
#include "jade/transform.hpp"

namespace jade {

/// Uniform linear array; delta is the element spacing in wavelengths.
struct ArrayConfig {
    int sensors = 64;
    double delta = 0.5;
};

/// One propagation path. tau is in samples at the oversampled rate and acts
/// on the spectrum as exp(-j w tau).
struct PathParam {
    double theta_deg = 0.0;
    double tau = 0.0;
};

struct DeterministicFading {
    Complex beta{1.0, 0.0};
};
/// Real and imaginary parts i.i.d. N(0, sigma^2).
struct RayleighFading {
    double sigma = 1.0;
};
/// nu + CN(0, 2 sigma^2), rotated by a uniform random phase per draw.
struct RicianFading {
    double nu = 0.0;
    double sigma = 1.0;
};
/// Rayleigh(sigma) amplitude scaled by a lognormal 10^(X/20), X ~ N(mu_db, sigma_db^2).
struct SuzukiFading {
    double sigma = 1.0;
    double mu_db = 0.0;
    double sigma_db = 6.0;
};

/// Block fading: one draw per path per snapshot.
using FadingModel = std::variant<DeterministicFading, RayleighFading, RicianFading, SuzukiFading>;

void validate(const ArrayConfig& arr);
void validate(const PathParam& path, std::size_t sample_count);
void validate(const FadingModel& fading);

/// True when delta > 0.5, i.e. endfire angles alias.
bool may_alias(const ArrayConfig& arr);

std::string fading_name(const FadingModel& fading);

/// One fading coefficient.
Complex draw_fading(const FadingModel& fading, std::mt19937_64& rng);

/// Element k (0-based) = exp(j 2 pi delta k sin theta).
ComplexVector steering_vector(const ArrayConfig& arr, double theta_deg);

/// Generator for one snapshot, derived from (seed, snapshot) only, so that
/// snapshots can be produced in any order.
std::mt19937_64 snapshot_rng(std::uint64_t seed, std::size_t snapshot);

/// Ground truth retained for synthetic data.
struct ChannelTruth {
    std::vector<PathParam> paths;
    FadingModel fading;
    double noise_var = 0.0;
    std::uint64_t seed = 0;
    std::vector<Complex> betas;  // (snapshot, path), path minor
};

/// (snapshot, sensor, time) complex records and their per-sensor spectra.
class SnapshotSet {
public:
    SnapshotSet() = default;
    /// Takes time-domain data and computes spectra with the transform
    /// referenced to sample N/2.
    SnapshotSet(ArrayConfig array, std::size_t snapshots, std::size_t samples, ComplexVector data);

    std::size_t snapshots() const { return snapshots_; }
    std::size_t sensors() const { return static_cast<std::size_t>(array_.sensors); }
    std::size_t samples() const { return samples_; }
    const ArrayConfig& array() const { return array_; }

    std::span<const Complex> series(std::size_t s, std::size_t k) const;
    std::span<const Complex> spectrum(std::size_t s, std::size_t k) const;
    const Complex& spectrum_at(std::size_t s, std::size_t k, std::size_t q) const {
        return spectra_[(s * sensors() + k) * samples_ + q];
    }

    const ComplexVector& data() const { return data_; }
    const ComplexVector& spectra() const { return spectra_; }

    std::optional<ChannelTruth> truth;

private:
    ArrayConfig array_;
    std::size_t snapshots_ = 0;
    std::size_t samples_ = 0;
    ComplexVector data_;
    ComplexVector spectra_;
};

/// x_k(t) = sum_i beta_i a_k(theta_i) g(t - tau_i) + n_k(t), one record per
/// snapshot, fully reproducible from seed.
SnapshotSet synthesize(const SampledWaveform& pulse, std::span<const PathParam> paths, const ArrayConfig& arr,
                       const FadingModel& fading, std::size_t snapshots, double noise_var, std::uint64_t seed);

}  // namespace jade
