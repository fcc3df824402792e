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
#include <span>
#include <vector>

#include "jade/channel.hpp"
#include "jade/pulse.hpp"

namespace jade {

/// Fits with a coefficient of determination below this are flagged.
inline constexpr double kReliableFitRsq = 0.5;

/// xi_i(w) = (1/M) sum_k exp(-j 2 pi delta k s_i) X_k(w) for every snapshot,
/// beam and bin. Layout (snapshot, beam, bin).
struct BeamformedSpectrum {
    std::size_t snapshots = 0;
    std::size_t beams = 0;
    std::size_t bins = 0;
    ComplexVector xi;
    std::vector<double> s_used;

    std::span<const Complex> beam(std::size_t s, std::size_t i) const {
        return {xi.data() + (s * beams + i) * bins, bins};
    }
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rsq = 0.0;
};

struct DelayFitOptions {
    bool weighted = false;  // weight bins by |g(w)|^2
};

/// Per-snapshot phase-slope delays. Matrices are (snapshot, path), path minor.
struct DelayEstimate {
    std::size_t snapshots = 0;
    std::size_t paths = 0;
    std::vector<double> tau_per_snapshot;  // == -slope
    std::vector<double> slope;
    std::vector<double> intercept;
    std::vector<double> rsq;
    std::vector<double> tau_median;
    std::vector<double> tau_mean;
    std::vector<std::size_t> unreliable;   // fits per path with rsq below kReliableFitRsq
    std::vector<std::size_t> band;

    double at(const std::vector<double>& m, std::size_t s, std::size_t i) const { return m[s * paths + i]; }
};

BeamformedSpectrum beamform(const SnapshotSet& snaps, std::span<const double> s_values);

/// Ordinary (or weighted) least squares of y against x.
LineFit fit_line(std::span<const double> x, std::span<const double> y, std::span<const double> weights = {});

/// Unwrapped phase of xi(w) conj(g(w)) / |g(w)|^2 over the band, i.e. the
/// beam phase with the known pulse phase removed.
std::vector<double> phase_residual(std::span<const Complex> xi, const Spectrum& pulse_spectrum,
                                   std::span<const std::size_t> band);

/// Line fit of phase_residual against w per (snapshot, path); tau = -slope,
/// then median and mean over snapshots.
DelayEstimate fit_delay(const BeamformedSpectrum& bf, const Spectrum& pulse_spectrum, std::span<const std::size_t> band,
                        const DelayFitOptions& options = {});

double median(std::vector<double> values);

}  // namespace jade
