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

// jade command-line tool.
//
//   jade pulse       pulse samples and spectrum as CSV
//   jade simulate    synthesize a snapshot dataset
//   jade estimate    estimate angles and delays from a dataset
//   jade run         simulate + estimate in one go
//   jade montecarlo  repeated runs with derived seeds
//
// Exit codes: 0 success, 2 validation error, 3 estimation failure.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jade/dataset.hpp"
#include "jade/error.hpp"
#include "jade/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitEstimation = 3;

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> overrides;
    std::string out_dir = ".";
};

struct DumpOptions {
    bool correlation = false;
    bool roots = false;
    bool fit = false;
    std::size_t fit_snapshot = 0;
    bool timing = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config_path, "Key-value config file (or a report JSON to rerun)");
    cmd->add_option("--seed", opt.seed, "Override the random seed");
    cmd->add_option("--set", opt.overrides, "Override one config key, key=value (repeatable)");
    cmd->add_option("--out", opt.out_dir, "Output directory")->capture_default_str();
}

void add_dumps(CLI::App* cmd, DumpOptions& dump) {
    cmd->add_flag("--dump-correlation", dump.correlation, "Write correlation.csv (lag, re, im, abs, phase)");
    cmd->add_flag("--dump-roots", dump.roots, "Write roots.csv (re, im, modulus, selected)");
    cmd->add_flag("--dump-fit", dump.fit, "Write fit_path<i>.csv (omega, phase_residual, fitted_line)");
    cmd->add_option("--fit-snapshot", dump.fit_snapshot, "Snapshot used by --dump-fit")->capture_default_str();
    cmd->add_flag("--timing", dump.timing, "Include elapsed time in the report");
}

std::string read_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw jade::ValidationError("cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

jade::ScenarioConfig load_config(const CommonOptions& opt) {
    jade::ScenarioConfig cfg;
    if (!opt.config_path.empty()) {
        const std::string text = read_file(opt.config_path);
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '{') {
            const auto j = nlohmann::json::parse(text, nullptr, false);
            if (j.is_discarded() || !j.contains("config")) throw jade::ValidationError("config: " + opt.config_path + " is not a report");
            cfg = jade::from_key_values(j.at("config").get<jade::KeyValues>());
        } else {
            cfg = jade::parse_config(text);
        }
    }
    jade::KeyValues kv;
    for (const auto& o : opt.overrides) {
        auto [key, value] = jade::split_assignment(o);
        kv[key] = value;
    }
    if (opt.seed) kv["seed"] = std::to_string(*opt.seed);
    cfg = jade::from_key_values(kv, cfg);
    jade::validate(cfg);
    return cfg;
}

fs::path out_path(const CommonOptions& opt, const std::string& name) {
    fs::create_directories(opt.out_dir);
    return fs::path(opt.out_dir) / name;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream os(path);
    if (!os) throw jade::ValidationError("cannot write " + path.string());
    os.precision(17);
    return os;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
    auto os = open_out(path);
    os << j.dump(2) << '\n';
}

// Bins in ascending frequency order.
std::vector<std::size_t> ascending_bins(const std::vector<double>& omega) {
    std::vector<std::size_t> order(omega.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return omega[a] < omega[b]; });
    return order;
}

int cmd_pulse(const CommonOptions& opt) {
    const auto cfg = load_config(opt);
    const auto pulse = jade::generate_pulse(cfg.pulse);
    const auto spec = jade::spectrum(pulse, cfg.eta);

    auto time_csv = open_out(out_path(opt, "pulse_time.csv"));
    time_csv << "t,g\n";
    for (std::size_t n = 0; n < pulse.size(); ++n) time_csv << pulse.t[n] << ',' << pulse.values[n] << '\n';

    std::vector<std::optional<double>> unwrapped(spec.size());
    for (std::size_t j = 0; j < spec.passband.size(); ++j) unwrapped[spec.passband[j]] = spec.phase_unwrapped[j];
    auto spec_csv = open_out(out_path(opt, "pulse_spectrum.csv"));
    spec_csv << "omega,magnitude,phase,phase_unwrapped\n";
    for (std::size_t q : ascending_bins(spec.omega)) {
        spec_csv << spec.omega[q] << ',' << spec.magnitude[q] << ',' << spec.phase[q] << ',';
        if (unwrapped[q]) spec_csv << *unwrapped[q];
        spec_csv << '\n';
    }
    std::cout << "pulse: N=" << pulse.size() << " passband bins " << spec.passband.front() << ".." << spec.passband.back()
              << " -> " << out_path(opt, "pulse_time.csv").string() << ", " << out_path(opt, "pulse_spectrum.csv").string()
              << '\n';
    return 0;
}

int cmd_simulate(const CommonOptions& opt) {
    const auto cfg = load_config(opt);
    const auto pulse = jade::generate_pulse(cfg.pulse);
    const auto snaps = jade::synthesize(pulse, cfg.paths, cfg.array, cfg.fading, cfg.snapshots, cfg.noise_var, cfg.seed);
    const auto path = out_path(opt, "dataset.jade");
    jade::save_dataset(path.string(), snaps);
    auto cfg_out = open_out(out_path(opt, "scenario.cfg"));
    cfg_out << jade::format_config(cfg);
    std::cout << "simulate: M=" << snaps.sensors() << " N=" << snaps.samples() << " S=" << snaps.snapshots() << " -> "
              << path.string() << '\n';
    return 0;
}

void print_report(const jade::RunReport& r) {
    std::printf("%-6s %12s %12s %12s %12s %12s\n", "path", "theta_deg", "err_deg", "slope_med", "slope_mean", "rsq_med");
    for (std::size_t i = 0; i < r.paths.size(); ++i) {
        const auto& p = r.paths[i];
        std::printf("%-6zu %12.4f %12s %12.4f %12.4f %12.4f\n", i + 1, p.theta_deg,
                    p.theta_error_deg ? std::to_string(*p.theta_error_deg).c_str() : "-", p.slope_median, p.slope_mean,
                    p.rsq_median);
    }
    std::printf("singular values:");
    const std::size_t shown = std::min<std::size_t>(r.modes.singular_values.size(), 8);
    for (std::size_t i = 0; i < shown; ++i) std::printf(" %.4g", r.modes.singular_values[i]);
    std::printf("%s\n", r.modes.singular_values.size() > shown ? " ..." : "");
    for (const auto& w : r.modes.warnings) std::printf("warning: %s\n", w.c_str());

    // A few per-snapshot slopes laid out like a delay table.
    const std::size_t rows = std::min<std::size_t>(r.delays.snapshots, 4);
    if (rows && r.delays.paths) {
        std::printf("per-snapshot slopes (first %zu):\n", rows);
        for (std::size_t s = 0; s < rows; ++s) {
            for (std::size_t i = 0; i < r.delays.paths; ++i) std::printf("%12.4f", r.delays.at(r.delays.slope, s, i));
            std::printf("\n");
        }
    }
}

void write_dumps(const CommonOptions& opt, const DumpOptions& dump, const jade::Estimation& est) {
    if (dump.correlation) {
        auto os = open_out(out_path(opt, "correlation.csv"));
        os << "lag,re,im,abs,phase\n";
        const auto top = static_cast<std::ptrdiff_t>(est.correlation.max_lag());
        for (std::ptrdiff_t l = -top; l <= top; ++l) {
            const auto c = est.correlation.at(l);
            os << l << ',' << c.real() << ',' << c.imag() << ',' << std::abs(c) << ',' << std::arg(c) << '\n';
        }
    }
    if (dump.roots) {
        auto os = open_out(out_path(opt, "roots.csv"));
        os << "re,im,modulus,selected\n";
        for (std::size_t i = 0; i < est.modes.all_roots.size(); ++i) {
            const auto z = est.modes.all_roots[i];
            const bool sel = std::find(est.modes.selected.begin(), est.modes.selected.end(), i) != est.modes.selected.end();
            os << z.real() << ',' << z.imag() << ',' << std::abs(z) << ',' << (sel ? 1 : 0) << '\n';
        }
    }
    if (dump.fit) {
        if (dump.fit_snapshot >= est.beams.snapshots) throw jade::ValidationError("--fit-snapshot out of range");
        const std::size_t s = dump.fit_snapshot;
        for (std::size_t i = 0; i < est.beams.beams; ++i) {
            const auto phi = jade::phase_residual(est.beams.beam(s, i), est.pulse_spectrum, est.band);
            const std::size_t cell = s * est.delays.paths + i;
            auto os = open_out(out_path(opt, "fit_path" + std::to_string(i + 1) + ".csv"));
            os << "omega,phase_residual,fitted_line\n";
            for (std::size_t j = 0; j < est.band.size(); ++j) {
                const double w = est.pulse_spectrum.omega[est.band[j]];
                os << w << ',' << phi[j] << ',' << est.delays.intercept[cell] + est.delays.slope[cell] * w << '\n';
            }
        }
    }
}

int cmd_estimate(const CommonOptions& opt, const DumpOptions& dump, const std::string& input) {
    const auto cfg = load_config(opt);
    const auto snaps = jade::load_dataset(input);
    const auto pulse = jade::generate_pulse(cfg.pulse);
    const auto est = jade::estimate(cfg, pulse, snaps);
    const auto report = jade::make_report(cfg, est, snaps);
    print_report(report);
    write_json(out_path(opt, "report.json"), jade::to_json(report, dump.timing));
    write_dumps(opt, dump, est);
    return 0;
}

int cmd_run(const CommonOptions& opt, const DumpOptions& dump) {
    const auto cfg = load_config(opt);
    jade::Estimation est;
    const auto report = jade::run_pipeline(cfg, &est);
    print_report(report);
    write_json(out_path(opt, "report.json"), jade::to_json(report, dump.timing));
    write_dumps(opt, dump, est);
    return 0;
}

int cmd_montecarlo(const CommonOptions& opt, std::size_t trials, std::size_t threads) {
    const auto cfg = load_config(opt);
    const auto result = jade::monte_carlo(cfg, trials, threads);
    std::printf("%-6s", "trial");
    for (std::size_t i = 0; i < cfg.paths.size(); ++i) std::printf("  theta%zu_deg  slope%zu_med", i + 1, i + 1);
    std::printf("\n");
    for (const auto& t : result.trials) {
        std::printf("%-6zu", t.index);
        if (!t.ok) {
            std::printf("  failed: %s\n", t.error.c_str());
            continue;
        }
        for (std::size_t i = 0; i < t.theta_deg.size(); ++i) std::printf("  %11.4f  %11.4f", t.theta_deg[i], t.slope_median[i]);
        std::printf("\n");
    }
    for (const auto& s : result.stats)
        std::printf("%-16s truth %9.4f  bias %+.3e  rmse %.3e  (n=%zu)\n", s.name.c_str(), s.truth, s.bias, s.rmse, s.count);
    if (result.failures) std::printf("%zu trial(s) failed\n", result.failures);
    write_json(out_path(opt, "montecarlo.json"), jade::to_json(result));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint angle and delay estimation for faded multipath arrays"};
    app.require_subcommand(1);

    CommonOptions opt;
    DumpOptions dump;
    std::string input;
    std::size_t trials = 4;
    std::size_t threads = 0;

    auto* pulse = app.add_subcommand("pulse", "Write the pulse and its spectrum as CSV");
    add_common(pulse, opt);
    auto* simulate = app.add_subcommand("simulate", "Synthesize a snapshot dataset");
    add_common(simulate, opt);
    auto* estimate = app.add_subcommand("estimate", "Estimate angles and delays from a dataset");
    add_common(estimate, opt);
    add_dumps(estimate, dump);
    estimate->add_option("--input", input, "Dataset file written by simulate")->required();
    auto* run = app.add_subcommand("run", "Simulate and estimate");
    add_common(run, opt);
    add_dumps(run, dump);
    auto* mc = app.add_subcommand("montecarlo", "Repeated runs with derived seeds");
    add_common(mc, opt);
    mc->add_option("--trials", trials, "Number of trials")->capture_default_str()->check(CLI::PositiveNumber);
    mc->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*pulse) return cmd_pulse(opt);
        if (*simulate) return cmd_simulate(opt);
        if (*estimate) return cmd_estimate(opt, dump, input);
        if (*run) return cmd_run(opt, dump);
        if (*mc) return cmd_montecarlo(opt, trials, threads);
    } catch (const jade::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const jade::EstimationError& e) {
        std::cerr << "estimation failed: " << e.what() << '\n';
        return kExitEstimation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
