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
#include <string>
#include <vector>

#include "jade/spectral_correlation.hpp"

namespace jade {

enum class RootSelection {
    // Rank roots by | 1 - |z| | and keep the first L; ties go to the larger
    // fitted amplitude.
    NearestUnitCircle,
};

struct PronyConfig {
    int paths = 2;        // model order L
    int order = 0;        // prediction order p; 0 selects floor(K / 3), K = 2M - 1
    int rank = 0;         // SVD truncation rank; 0 selects L
    RootSelection root_selection = RootSelection::NearestUnitCircle;
    bool forward_backward = false;
};

/// Roots must have |z| in this range to be eligible for selection.
inline constexpr double kMinRootModulus = 0.5;
inline constexpr double kMaxRootModulus = 2.0;
/// |s| may exceed 1 by this much before the estimate is flagged invalid.
inline constexpr double kSineClampTolerance = 1e-6;

struct ModeEstimate {
    std::vector<double> s;                // sin(theta), ascending
    std::vector<double> theta_deg;
    std::vector<double> phase_increments; // arg of the selected roots, rad per lag
    std::vector<double> amplitudes;       // real part of the least-squares G_i
    std::vector<double> amplitude_imag;   // |Im G_i| / |G_i|
    ComplexVector roots;                  // selected, same order as s
    ComplexVector all_roots;
    std::vector<std::size_t> selected;    // indices into all_roots, same order as s
    std::vector<double> singular_values;
    int prediction_order = 0;
    int rank = 0;
    int suggested_paths = 0;              // largest singular-value gap, diagnostic only
    bool clamped = false;
    bool valid = true;
    std::vector<std::string> warnings;
};

/// Prediction order and rank after defaults are applied; throws
/// ValidationError when the system would be underdetermined.
PronyConfig resolve(const PronyConfig& cfg, std::size_t sequence_length);

/// Tufts-Kumaresan linear prediction on the two-sided correlation sequence:
/// rank-truncated SVD solve, polynomial rooting, root selection, then
/// s_i = arg(z_i) / (2 pi delta) and a least-squares amplitude fit.
ModeEstimate svd_prony(const CorrelationSequence& corr, const PronyConfig& cfg);

/// Number of dominant singular values judged by the largest ratio
/// sv[i-1] / sv[i], searched over i = 1 ... max_paths.
int largest_gap_order(std::span<const double> singular_values, std::size_t max_paths);

}  // namespace jade
