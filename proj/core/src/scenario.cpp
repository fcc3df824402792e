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

#include "jade/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "jade/error.hpp"

namespace jade {
namespace {

std::string format_double(double v) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    return {buf, static_cast<std::size_t>(len)};
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& key, std::string_view value, const char* expected) {
    throw ValidationError("config: " + key + " = '" + std::string(value) + "' is not " + expected);
}

double parse_real(const std::string& key, std::string_view v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) bad_value(key, v, "a number");
    return out;
}

template <class Int>
Int parse_int(const std::string& key, std::string_view v) {
    Int out{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) bad_value(key, v, "an integer");
    return out;
}

bool parse_bool(const std::string& key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    bad_value(key, v, "a boolean");
}

Complex parse_complex(const std::string& key, std::string_view v) {
    const auto colon = v.find(':');
    if (colon == std::string_view::npos) return {parse_real(key, v), 0.0};
    return {parse_real(key, v.substr(0, colon)), parse_real(key, v.substr(colon + 1))};
}

std::vector<PathParam> parse_paths(const std::string& key, std::string_view v) {
    std::vector<PathParam> paths;
    while (!v.empty()) {
        const auto comma = v.find(',');
        const std::string_view item = trim(v.substr(0, comma));
        const auto colon = item.find(':');
        if (colon == std::string_view::npos) bad_value(key, item, "of the form theta_deg:tau");
        paths.push_back({parse_real(key, trim(item.substr(0, colon))), parse_real(key, trim(item.substr(colon + 1)))});
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
    }
    return paths;
}

std::vector<int> parse_bits(const std::string& key, std::string_view v) {
    std::vector<int> bits;
    for (char c : v) {
        if (c == '0' || c == '1')
            bits.push_back(c - '0');
        else
            bad_value(key, v, "a string of 0/1 digits");
    }
    return bits;
}

FadingModel default_fading(const std::string& kind) {
    if (kind == "deterministic") return DeterministicFading{};
    if (kind == "rayleigh") return RayleighFading{};
    if (kind == "rician") return RicianFading{};
    if (kind == "suzuki") return SuzukiFading{};
    throw ValidationError("config: fading must be deterministic, rayleigh, rician or suzuki, got '" + kind + "'");
}

void apply_fading_key(FadingModel& fading, const std::string& key, const std::string& value) {
    const std::string field = key.substr(std::string("fading.").size());
    bool used = false;
    if (auto* f = std::get_if<DeterministicFading>(&fading)) {
        if (field == "beta") f->beta = parse_complex(key, value), used = true;
    } else if (auto* f = std::get_if<RayleighFading>(&fading)) {
        if (field == "sigma") f->sigma = parse_real(key, value), used = true;
    } else if (auto* f = std::get_if<RicianFading>(&fading)) {
        if (field == "sigma") f->sigma = parse_real(key, value), used = true;
        if (field == "nu") f->nu = parse_real(key, value), used = true;
    } else if (auto* f = std::get_if<SuzukiFading>(&fading)) {
        if (field == "sigma") f->sigma = parse_real(key, value), used = true;
        if (field == "mu_db") f->mu_db = parse_real(key, value), used = true;
        if (field == "sigma_db") f->sigma_db = parse_real(key, value), used = true;
    }
    if (!used) throw ValidationError("config: " + key + " does not apply to " + fading_name(fading) + " fading");
}

}  // namespace

void validate(const ScenarioConfig& cfg) {
    validate(cfg.pulse);
    validate(cfg.array);
    if (cfg.paths.empty()) throw ValidationError("config: at least one path is required");
    for (const auto& p : cfg.paths) validate(p, cfg.pulse.sample_count());
    validate(cfg.fading);
    if (cfg.snapshots < 1) throw ValidationError("config: snapshots must be >= 1");
    if (!(cfg.noise_var >= 0.0)) throw ValidationError("config: noise_var must be >= 0");
    if (!(cfg.eta >= 0.0 && cfg.eta < 1.0)) throw ValidationError("config: eta must lie in [0, 1)");
    if (cfg.prony.paths != static_cast<int>(cfg.paths.size()))
        throw ValidationError("config: prony.paths (" + std::to_string(cfg.prony.paths) + ") must equal the number of paths (" +
                              std::to_string(cfg.paths.size()) + ")");
    resolve(cfg.prony, 2 * static_cast<std::size_t>(cfg.array.sensors) - 1);
}

KeyValues to_key_values(const ScenarioConfig& cfg) {
    KeyValues kv;
    kv["schema"] = std::to_string(kConfigSchema);
    kv["seed"] = std::to_string(cfg.seed);
    kv["snapshots"] = std::to_string(cfg.snapshots);
    kv["noise_var"] = format_double(cfg.noise_var);
    kv["eta"] = format_double(cfg.eta);

    kv["pulse.rho"] = format_double(cfg.pulse.rho);
    kv["pulse.fc"] = format_double(cfg.pulse.fc);
    kv["pulse.symbols"] = std::to_string(cfg.pulse.symbol_count);
    kv["pulse.oversample"] = std::to_string(cfg.pulse.oversample);
    std::string bits;
    for (int b : cfg.pulse.bits) bits += static_cast<char>('0' + b);
    kv["pulse.bits"] = bits;
    kv["pulse.bit_seed"] = std::to_string(cfg.pulse.bit_seed);

    kv["array.sensors"] = std::to_string(cfg.array.sensors);
    kv["array.delta"] = format_double(cfg.array.delta);

    std::string paths;
    for (std::size_t i = 0; i < cfg.paths.size(); ++i) {
        if (i) paths += ',';
        paths += format_double(cfg.paths[i].theta_deg) + ':' + format_double(cfg.paths[i].tau);
    }
    kv["paths"] = paths;

    kv["fading"] = fading_name(cfg.fading);
    if (const auto* f = std::get_if<DeterministicFading>(&cfg.fading)) {
        kv["fading.beta"] = format_double(f->beta.real()) + ':' + format_double(f->beta.imag());
    } else if (const auto* f = std::get_if<RayleighFading>(&cfg.fading)) {
        kv["fading.sigma"] = format_double(f->sigma);
    } else if (const auto* f = std::get_if<RicianFading>(&cfg.fading)) {
        kv["fading.sigma"] = format_double(f->sigma);
        kv["fading.nu"] = format_double(f->nu);
    } else if (const auto* f = std::get_if<SuzukiFading>(&cfg.fading)) {
        kv["fading.sigma"] = format_double(f->sigma);
        kv["fading.mu_db"] = format_double(f->mu_db);
        kv["fading.sigma_db"] = format_double(f->sigma_db);
    }

    kv["prony.paths"] = std::to_string(cfg.prony.paths);
    kv["prony.order"] = std::to_string(cfg.prony.order);
    kv["prony.rank"] = std::to_string(cfg.prony.rank);
    kv["prony.forward_backward"] = cfg.prony.forward_backward ? "true" : "false";
    kv["prony.root_selection"] = "nearest_unit_circle";
    kv["delay.weighted"] = cfg.delay.weighted ? "true" : "false";
    return kv;
}

ScenarioConfig from_key_values(const KeyValues& kv, const ScenarioConfig& base) {
    ScenarioConfig cfg = base;

    if (auto it = kv.find("schema"); it != kv.end() && parse_int<int>(it->first, it->second) != kConfigSchema)
        throw ValidationError("config: unsupported schema " + it->second + " (expected " + std::to_string(kConfigSchema) + ")");

    using Setter = std::function<void(const std::string&, const std::string&)>;
    const std::map<std::string, Setter> setters{
        {"schema", [](const auto&, const auto&) {}},
        {"seed", [&](const auto& k, const auto& v) { cfg.seed = parse_int<std::uint64_t>(k, v); }},
        {"snapshots", [&](const auto& k, const auto& v) { cfg.snapshots = parse_int<std::size_t>(k, v); }},
        {"noise_var", [&](const auto& k, const auto& v) { cfg.noise_var = parse_real(k, v); }},
        {"eta", [&](const auto& k, const auto& v) { cfg.eta = parse_real(k, v); }},
        {"pulse.rho", [&](const auto& k, const auto& v) { cfg.pulse.rho = parse_real(k, v); }},
        {"pulse.fc", [&](const auto& k, const auto& v) { cfg.pulse.fc = parse_real(k, v); }},
        {"pulse.symbols", [&](const auto& k, const auto& v) { cfg.pulse.symbol_count = parse_int<int>(k, v); }},
        {"pulse.oversample", [&](const auto& k, const auto& v) { cfg.pulse.oversample = parse_int<int>(k, v); }},
        {"pulse.bits", [&](const auto& k, const auto& v) { cfg.pulse.bits = parse_bits(k, v); }},
        {"pulse.bit_seed", [&](const auto& k, const auto& v) { cfg.pulse.bit_seed = parse_int<std::uint64_t>(k, v); }},
        {"array.sensors", [&](const auto& k, const auto& v) { cfg.array.sensors = parse_int<int>(k, v); }},
        {"array.delta", [&](const auto& k, const auto& v) { cfg.array.delta = parse_real(k, v); }},
        {"paths", [&](const auto& k, const auto& v) { cfg.paths = parse_paths(k, v); }},
        {"prony.paths", [&](const auto& k, const auto& v) { cfg.prony.paths = parse_int<int>(k, v); }},
        {"prony.order", [&](const auto& k, const auto& v) { cfg.prony.order = parse_int<int>(k, v); }},
        {"prony.rank", [&](const auto& k, const auto& v) { cfg.prony.rank = parse_int<int>(k, v); }},
        {"prony.forward_backward", [&](const auto& k, const auto& v) { cfg.prony.forward_backward = parse_bool(k, v); }},
        {"prony.root_selection",
         [&](const auto& k, const auto& v) {
             if (v != "nearest_unit_circle") bad_value(k, v, "a known root selection (nearest_unit_circle)");
             cfg.prony.root_selection = RootSelection::NearestUnitCircle;
         }},
        {"delay.weighted", [&](const auto& k, const auto& v) { cfg.delay.weighted = parse_bool(k, v); }},
    };

    // Fading: pick the kind first, then its parameters.
    if (auto it = kv.find("fading"); it != kv.end() && it->second != fading_name(cfg.fading))
        cfg.fading = default_fading(it->second);
    double k_factor = -1.0;

    for (const auto& [key, value] : kv) {
        if (key == "fading") continue;
        if (key == "fading.k_factor") {
            k_factor = parse_real(key, value);
            continue;
        }
        if (key.rfind("fading.", 0) == 0) {
            apply_fading_key(cfg.fading, key, value);
            continue;
        }
        const auto setter = setters.find(key);
        if (setter == setters.end()) throw ValidationError("config: unknown key '" + key + "'");
        setter->second(key, value);
    }

    if (k_factor >= 0.0) {
        auto* rician = std::get_if<RicianFading>(&cfg.fading);
        if (!rician) throw ValidationError("config: fading.k_factor applies to rician fading only");
        if (kv.count("fading.nu")) throw ValidationError("config: give fading.nu or fading.k_factor, not both");
        // K = nu^2 / (2 sigma^2)
        rician->nu = std::sqrt(2.0 * k_factor) * rician->sigma;
    }
    if (kv.count("paths") && !kv.count("prony.paths")) cfg.prony.paths = static_cast<int>(cfg.paths.size());
    return cfg;
}

KeyValues parse_key_values(std::string_view text) {
    KeyValues kv;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ValidationError("config: line " + std::to_string(line_no) + " is not key=value");
        const std::string key(trim(line.substr(0, eq)));
        if (key.empty()) throw ValidationError("config: line " + std::to_string(line_no) + " has an empty key");
        if (kv.count(key)) throw ValidationError("config: duplicate key '" + key + "'");
        kv[key] = std::string(trim(line.substr(eq + 1)));
    }
    return kv;
}

std::string format_config(const ScenarioConfig& cfg) {
    const KeyValues kv = to_key_values(cfg);
    std::ostringstream os;
    os << "schema=" << kv.at("schema") << '\n';
    for (const auto& [key, value] : kv)
        if (key != "schema") os << key << '=' << value << '\n';
    return os.str();
}

ScenarioConfig parse_config(std::string_view text, const ScenarioConfig& base) {
    return from_key_values(parse_key_values(text), base);
}

std::pair<std::string, std::string> split_assignment(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) throw ValidationError("override '" + std::string(assignment) + "' is not key=value");
    return {std::string(trim(assignment.substr(0, eq))), std::string(trim(assignment.substr(eq + 1)))};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over a Weyl step
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace jade
