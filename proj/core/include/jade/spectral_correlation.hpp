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
#include <optional>
#include <span>
#include <vector>

#include "jade/channel.hpp"
#include "jade/pulse.hpp"

namespace jade {

/// Spatial-lag correlation of the sensor spectra, lags 0 ... M-1.
/// Negative lags follow from c(-l) = conj(c(l)).
struct CorrelationSequence {
    ComplexVector c;
    std::vector<std::size_t> band;
    std::vector<std::size_t> counts;  // terms averaged per lag
    double delta = 0.5;               // element spacing that produced the lags

    std::size_t max_lag() const { return c.empty() ? 0 : c.size() - 1; }
    Complex at(std::ptrdiff_t lag) const;
    /// c(-(M-1)) ... c(M-1).
    ComplexVector two_sided() const;
};

/// Positive-frequency bins where the known pulse carries energy; see
/// contiguous_band. Throws for eta outside [0, 1) or an empty result.
std::vector<std::size_t> select_band(const Spectrum& pulse_spectrum, double eta);

/// c(l) = mean over snapshots, band bins and sensor pairs (k, k - l) of
/// X_k(w) conj(X_{k-l}(w)). max_lag defaults to M - 1.
CorrelationSequence estimate_correlation(const SnapshotSet& snaps, std::span<const std::size_t> band,
                                         std::optional<std::size_t> max_lag = std::nullopt);

}  // namespace jade
