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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jade/channel.hpp"
#include "jade/delay.hpp"
#include "jade/prony.hpp"
#include "jade/pulse.hpp"
#include "jade/scenario.hpp"
#include "jade/spectral_correlation.hpp"

namespace jade {

/// Intermediate products of one estimation, kept for figure dumps.
struct Estimation {
    Spectrum pulse_spectrum;
    std::vector<std::size_t> band;
    CorrelationSequence correlation;
    ModeEstimate modes;
    BeamformedSpectrum beams;
    DelayEstimate delays;
};

struct PathReport {
    std::optional<PathParam> truth;
    double s = 0.0;
    double theta_deg = 0.0;
    double amplitude = 0.0;
    double slope_median = 0.0;
    double slope_mean = 0.0;
    double tau_median = 0.0;
    double tau_mean = 0.0;
    double rsq_median = 0.0;
    std::size_t unreliable_fits = 0;
    std::optional<double> theta_error_deg;
    std::optional<double> tau_error;  // median estimate minus truth
};

struct RunReport {
    ScenarioConfig config;
    std::vector<PathReport> paths;
    ModeEstimate modes;
    DelayEstimate delays;
    std::optional<double> elapsed_ms;
};

/// Stages after synthesis: spectrum, band selection, correlation, Prony,
/// beamforming and delay fit. Each failure is rethrown with its stage name.
Estimation estimate(const ScenarioConfig& cfg, const SampledWaveform& pulse, const SnapshotSet& snaps);

/// Report for an estimation; per-path errors are filled when snaps carries truth.
RunReport make_report(const ScenarioConfig& cfg, const Estimation& est, const SnapshotSet& snaps);

/// generate_pulse -> synthesize -> estimate -> report, deterministic in cfg.seed.
RunReport run_pipeline(const ScenarioConfig& cfg, Estimation* artifacts = nullptr);

nlohmann::json to_json(const RunReport& report, bool include_timing = false);
RunReport report_from_json(const nlohmann::json& j);

struct ParameterStats {
    std::string name;
    double truth = 0.0;
    double mean = 0.0;
    double bias = 0.0;
    double rmse = 0.0;
    std::size_t count = 0;
};

struct TrialResult {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    std::vector<double> theta_deg;
    std::vector<double> slope_median;
    std::vector<double> slope_mean;
    bool valid = true;
};

struct MonteCarloResult {
    ScenarioConfig config;
    std::vector<TrialResult> trials;
    std::vector<ParameterStats> stats;
    std::size_t failures = 0;
};

/// Trial t runs with seed derive_seed(cfg.seed, t). Trials execute on up to
/// `threads` workers (0 = hardware concurrency); the result does not depend
/// on the worker count. Failed trials are kept in `trials` with their error
/// and left out of `stats`.
MonteCarloResult monte_carlo(const ScenarioConfig& cfg, std::size_t trials, std::size_t threads = 0);

nlohmann::json to_json(const MonteCarloResult& result);

}  // namespace jade
