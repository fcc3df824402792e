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

#include "jade/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <thread>

#include "jade/error.hpp"

namespace jade {
namespace {

template <class F>
auto run_stage(const char* stage, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("stage '") + stage + "': " + e.what());
    } catch (const EstimationError& e) {
        throw EstimationError(std::string("stage '") + stage + "': " + e.what());
    }
}

std::vector<PathParam> sorted_by_sine(std::vector<PathParam> paths) {
    std::stable_sort(paths.begin(), paths.end(),
                     [](const PathParam& a, const PathParam& b) { return a.theta_deg < b.theta_deg; });
    return paths;
}

}  // namespace

Estimation estimate(const ScenarioConfig& cfg, const SampledWaveform& pulse, const SnapshotSet& snaps) {
    run_stage("config", [&] {
        validate(cfg);
        if (snaps.samples() != pulse.size())
            throw ValidationError("record length " + std::to_string(snaps.samples()) + " differs from pulse length " +
                                  std::to_string(pulse.size()));
    });

    Estimation est;
    est.pulse_spectrum = run_stage("spectrum", [&] { return spectrum(pulse, cfg.eta); });
    est.band = run_stage("select_band", [&] { return select_band(est.pulse_spectrum, cfg.eta); });
    est.correlation = run_stage("estimate_correlation", [&] { return estimate_correlation(snaps, est.band); });
    est.modes = run_stage("svd_prony", [&] { return svd_prony(est.correlation, cfg.prony); });
    est.beams = run_stage("beamform", [&] { return beamform(snaps, est.modes.s); });
    est.delays = run_stage("fit_delay", [&] { return fit_delay(est.beams, est.pulse_spectrum, est.band, cfg.delay); });
    return est;
}

RunReport make_report(const ScenarioConfig& cfg, const Estimation& est, const SnapshotSet& snaps) {
    RunReport report;
    report.config = cfg;
    report.modes = est.modes;
    report.delays = est.delays;

    std::vector<PathParam> truth;
    if (snaps.truth) truth = sorted_by_sine(snaps.truth->paths);

    const std::size_t L = est.modes.s.size();
    for (std::size_t i = 0; i < L; ++i) {
        PathReport p;
        p.s = est.modes.s[i];
        p.theta_deg = est.modes.theta_deg[i];
        p.amplitude = est.modes.amplitudes[i];

        std::vector<double> slopes(est.delays.snapshots), rsq(est.delays.snapshots);
        for (std::size_t s = 0; s < est.delays.snapshots; ++s) {
            slopes[s] = est.delays.at(est.delays.slope, s, i);
            rsq[s] = est.delays.at(est.delays.rsq, s, i);
        }
        p.tau_median = est.delays.tau_median[i];
        p.tau_mean = est.delays.tau_mean[i];
        p.slope_median = median(slopes);
        p.slope_mean = -p.tau_mean;
        p.rsq_median = median(rsq);
        p.unreliable_fits = est.delays.unreliable[i];
        if (i < truth.size()) {
            p.truth = truth[i];
            p.theta_error_deg = p.theta_deg - truth[i].theta_deg;
            p.tau_error = p.tau_median - truth[i].tau;
        }
        report.paths.push_back(p);
    }
    return report;
}

RunReport run_pipeline(const ScenarioConfig& cfg, Estimation* artifacts) {
    const auto start = std::chrono::steady_clock::now();
    run_stage("config", [&] { validate(cfg); });
    const SampledWaveform pulse = run_stage("generate_pulse", [&] { return generate_pulse(cfg.pulse); });
    const SnapshotSet snaps = run_stage("synthesize", [&] {
        return synthesize(pulse, cfg.paths, cfg.array, cfg.fading, cfg.snapshots, cfg.noise_var, cfg.seed);
    });
    Estimation est = estimate(cfg, pulse, snaps);
    RunReport report = make_report(cfg, est, snaps);
    report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (artifacts) *artifacts = std::move(est);
    return report;
}

MonteCarloResult monte_carlo(const ScenarioConfig& cfg, std::size_t trials, std::size_t threads) {
    if (trials < 1) throw ValidationError("monte_carlo: trials must be >= 1");
    validate(cfg);

    MonteCarloResult result;
    result.config = cfg;
    result.trials.resize(trials);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < trials; t = next++) {
            TrialResult& row = result.trials[t];
            row.index = t;
            row.seed = derive_seed(cfg.seed, t);
            ScenarioConfig trial_cfg = cfg;
            trial_cfg.seed = row.seed;
            try {
                const RunReport r = run_pipeline(trial_cfg);
                for (const auto& p : r.paths) {
                    row.theta_deg.push_back(p.theta_deg);
                    row.slope_median.push_back(p.slope_median);
                    row.slope_mean.push_back(p.slope_mean);
                }
                row.valid = r.modes.valid;
                row.ok = true;
            } catch (const std::exception& e) {
                row.ok = false;
                row.error = e.what();
            }
        }
    };

    std::size_t workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, trials);
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
        worker();
    }

    const std::vector<PathParam> truth = sorted_by_sine(cfg.paths);
    auto add_stats = [&](const std::string& name, double truth_value, auto pick) {
        ParameterStats st;
        st.name = name;
        st.truth = truth_value;
        double sum = 0.0, sq = 0.0;
        for (const auto& row : result.trials) {
            if (!row.ok) continue;
            const double v = pick(row);
            sum += v;
            sq += (v - truth_value) * (v - truth_value);
            ++st.count;
        }
        if (st.count) {
            st.mean = sum / static_cast<double>(st.count);
            st.bias = st.mean - truth_value;
            st.rmse = std::sqrt(sq / static_cast<double>(st.count));
        }
        result.stats.push_back(st);
    };
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const std::string tag = std::to_string(i + 1);
        add_stats("theta" + tag + "_deg", truth[i].theta_deg, [i](const TrialResult& r) { return r.theta_deg[i]; });
        add_stats("slope" + tag + "_median", -truth[i].tau, [i](const TrialResult& r) { return r.slope_median[i]; });
        add_stats("slope" + tag + "_mean", -truth[i].tau, [i](const TrialResult& r) { return r.slope_mean[i]; });
    }
    result.failures = static_cast<std::size_t>(
        std::count_if(result.trials.begin(), result.trials.end(), [](const TrialResult& r) { return !r.ok; }));
    return result;
}

}  // namespace jade
