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

#include <benchmark/benchmark.h>

#include "jade/pipeline.hpp"

namespace {

using namespace jade;

ScenarioConfig bench_config(std::size_t snapshots) {
    ScenarioConfig cfg;
    cfg.snapshots = snapshots;
    return cfg;
}

void BM_Synthesize(benchmark::State& state) {
    const auto cfg = bench_config(static_cast<std::size_t>(state.range(0)));
    const auto g = generate_pulse(cfg.pulse);
    for (auto _ : state) {
        auto snaps = synthesize(g, cfg.paths, cfg.array, cfg.fading, cfg.snapshots, cfg.noise_var, cfg.seed);
        benchmark::DoNotOptimize(snaps.spectra().data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Synthesize)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Correlation(benchmark::State& state) {
    const auto cfg = bench_config(static_cast<std::size_t>(state.range(0)));
    const auto g = generate_pulse(cfg.pulse);
    const auto snaps = synthesize(g, cfg.paths, cfg.array, cfg.fading, cfg.snapshots, cfg.noise_var, cfg.seed);
    const auto band = select_band(spectrum(g), cfg.eta);
    for (auto _ : state) {
        auto corr = estimate_correlation(snaps, band);
        benchmark::DoNotOptimize(corr.c.data());
    }
}
BENCHMARK(BM_Correlation)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Prony(benchmark::State& state) {
    const auto cfg = bench_config(200);
    const auto g = generate_pulse(cfg.pulse);
    const auto snaps = synthesize(g, cfg.paths, cfg.array, cfg.fading, cfg.snapshots, cfg.noise_var, cfg.seed);
    const auto corr = estimate_correlation(snaps, select_band(spectrum(g), cfg.eta));
    for (auto _ : state) {
        auto modes = svd_prony(corr, cfg.prony);
        benchmark::DoNotOptimize(modes.s.data());
    }
}
BENCHMARK(BM_Prony)->Unit(benchmark::kMicrosecond);

void BM_Pipeline(benchmark::State& state) {
    const auto cfg = bench_config(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto report = run_pipeline(cfg);
        benchmark::DoNotOptimize(report.paths.data());
    }
}
BENCHMARK(BM_Pipeline)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
