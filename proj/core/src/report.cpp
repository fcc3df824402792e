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

#include <string>

#include "jade/error.hpp"
#include "jade/pipeline.hpp"

namespace jade {
namespace {

using nlohmann::json;

json complex_list(const ComplexVector& v) {
    json out = json::array();
    for (const Complex& z : v) out.push_back({z.real(), z.imag()});
    return out;
}

ComplexVector complex_list_from(const json& j) {
    ComplexVector out;
    for (const auto& z : j) out.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
    return out;
}

template <class T>
json optional_value(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

json modes_json(const ModeEstimate& m) {
    return {
        {"s", m.s},
        {"theta_deg", m.theta_deg},
        {"phase_increments", m.phase_increments},
        {"amplitudes", m.amplitudes},
        {"amplitude_imag", m.amplitude_imag},
        {"roots", complex_list(m.roots)},
        {"all_roots", complex_list(m.all_roots)},
        {"selected", m.selected},
        {"singular_values", m.singular_values},
        {"prediction_order", m.prediction_order},
        {"rank", m.rank},
        {"suggested_paths", m.suggested_paths},
        {"clamped", m.clamped},
        {"valid", m.valid},
        {"warnings", m.warnings},
    };
}

ModeEstimate modes_from(const json& j) {
    ModeEstimate m;
    j.at("s").get_to(m.s);
    j.at("theta_deg").get_to(m.theta_deg);
    j.at("phase_increments").get_to(m.phase_increments);
    j.at("amplitudes").get_to(m.amplitudes);
    j.at("amplitude_imag").get_to(m.amplitude_imag);
    m.roots = complex_list_from(j.at("roots"));
    m.all_roots = complex_list_from(j.at("all_roots"));
    j.at("selected").get_to(m.selected);
    j.at("singular_values").get_to(m.singular_values);
    j.at("prediction_order").get_to(m.prediction_order);
    j.at("rank").get_to(m.rank);
    j.at("suggested_paths").get_to(m.suggested_paths);
    j.at("clamped").get_to(m.clamped);
    j.at("valid").get_to(m.valid);
    j.at("warnings").get_to(m.warnings);
    return m;
}

json delays_json(const DelayEstimate& d) {
    return {
        {"snapshots", d.snapshots}, {"paths", d.paths},         {"slope", d.slope},
        {"intercept", d.intercept}, {"rsq", d.rsq},             {"tau_median", d.tau_median},
        {"tau_mean", d.tau_mean},   {"unreliable", d.unreliable}, {"band", d.band},
    };
}

DelayEstimate delays_from(const json& j) {
    DelayEstimate d;
    j.at("snapshots").get_to(d.snapshots);
    j.at("paths").get_to(d.paths);
    j.at("slope").get_to(d.slope);
    j.at("intercept").get_to(d.intercept);
    j.at("rsq").get_to(d.rsq);
    j.at("tau_median").get_to(d.tau_median);
    j.at("tau_mean").get_to(d.tau_mean);
    j.at("unreliable").get_to(d.unreliable);
    j.at("band").get_to(d.band);
    d.tau_per_snapshot.reserve(d.slope.size());
    for (double m : d.slope) d.tau_per_snapshot.push_back(-m);
    return d;
}

json path_json(const PathReport& p) {
    json truth = nullptr;
    if (p.truth) truth = {{"theta_deg", p.truth->theta_deg}, {"tau", p.truth->tau}};
    return {
        {"truth", truth},
        {"s", p.s},
        {"theta_deg", p.theta_deg},
        {"amplitude", p.amplitude},
        {"slope_median", p.slope_median},
        {"slope_mean", p.slope_mean},
        {"tau_median", p.tau_median},
        {"tau_mean", p.tau_mean},
        {"rsq_median", p.rsq_median},
        {"unreliable_fits", p.unreliable_fits},
        {"theta_error_deg", optional_value(p.theta_error_deg)},
        {"tau_error", optional_value(p.tau_error)},
    };
}

PathReport path_from(const json& j) {
    PathReport p;
    if (!j.at("truth").is_null()) p.truth = PathParam{j.at("truth").at("theta_deg"), j.at("truth").at("tau")};
    j.at("s").get_to(p.s);
    j.at("theta_deg").get_to(p.theta_deg);
    j.at("amplitude").get_to(p.amplitude);
    j.at("slope_median").get_to(p.slope_median);
    j.at("slope_mean").get_to(p.slope_mean);
    j.at("tau_median").get_to(p.tau_median);
    j.at("tau_mean").get_to(p.tau_mean);
    j.at("rsq_median").get_to(p.rsq_median);
    j.at("unreliable_fits").get_to(p.unreliable_fits);
    p.theta_error_deg = optional_from<double>(j, "theta_error_deg");
    p.tau_error = optional_from<double>(j, "tau_error");
    return p;
}

}  // namespace

json to_json(const RunReport& report, bool include_timing) {
    json paths = json::array();
    for (const auto& p : report.paths) paths.push_back(path_json(p));
    json j = {
        {"schema", kConfigSchema},
        {"config", to_key_values(report.config)},
        {"paths", paths},
        {"modes", modes_json(report.modes)},
        {"delays", delays_json(report.delays)},
    };
    if (include_timing && report.elapsed_ms) j["elapsed_ms"] = *report.elapsed_ms;
    return j;
}

RunReport report_from_json(const json& j) {
    try {
        if (j.at("schema").get<int>() != kConfigSchema) throw ValidationError("report: unsupported schema");
        RunReport r;
        r.config = from_key_values(j.at("config").get<KeyValues>());
        for (const auto& p : j.at("paths")) r.paths.push_back(path_from(p));
        r.modes = modes_from(j.at("modes"));
        r.delays = delays_from(j.at("delays"));
        r.elapsed_ms = optional_from<double>(j, "elapsed_ms");
        return r;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("report: ") + e.what());
    }
}

json to_json(const MonteCarloResult& result) {
    json rows = json::array();
    for (const auto& t : result.trials) {
        rows.push_back({
            {"index", t.index},
            {"seed", t.seed},
            {"ok", t.ok},
            {"error", t.error},
            {"valid", t.valid},
            {"theta_deg", t.theta_deg},
            {"slope_median", t.slope_median},
            {"slope_mean", t.slope_mean},
        });
    }
    json stats = json::array();
    for (const auto& s : result.stats) {
        stats.push_back({
            {"name", s.name},
            {"truth", s.truth},
            {"mean", s.mean},
            {"bias", s.bias},
            {"rmse", s.rmse},
            {"count", s.count},
        });
    }
    return {
        {"schema", kConfigSchema}, {"config", to_key_values(result.config)}, {"trials", rows},
        {"stats", stats},          {"failures", result.failures},
    };
}

}  // namespace jade
