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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "jade/channel.hpp"
#include "jade/delay.hpp"
#include "jade/prony.hpp"
#include "jade/pulse.hpp"

namespace jade {

inline constexpr int kConfigSchema = 1;

/// Everything a run needs. Defaults reproduce the reference experiment:
/// rho 0.35, fc 0.25, 32 symbols x 4, 64 sensors at half a wavelength,
/// paths at -10 and 20 degrees with delays 3 and 7 samples, unit-variance
/// Rayleigh fading, no additive noise, 200 snapshots.
struct ScenarioConfig {
    PulseConfig pulse;
    ArrayConfig array;
    std::vector<PathParam> paths{{-10.0, 3.0}, {20.0, 7.0}};
    FadingModel fading = RayleighFading{1.0};
    std::size_t snapshots = 200;
    double noise_var = 0.0;
    double eta = kDefaultBandThreshold;
    PronyConfig prony;
    DelayFitOptions delay;
    std::uint64_t seed = 1;
};

void validate(const ScenarioConfig& cfg);

using KeyValues = std::map<std::string, std::string>;

/// Every key with a lossless textual value.
KeyValues to_key_values(const ScenarioConfig& cfg);

/// Applies kv on top of base. Unknown keys, malformed values and a schema
/// other than 1 raise ValidationError. Setting `paths` without
/// `prony.paths` resizes the model order to match.
ScenarioConfig from_key_values(const KeyValues& kv, const ScenarioConfig& base = {});

/// `key=value` lines, `#` comments and blank lines allowed.
KeyValues parse_key_values(std::string_view text);
std::string format_config(const ScenarioConfig& cfg);
ScenarioConfig parse_config(std::string_view text, const ScenarioConfig& base = {});

/// Splits a single `key=value` override.
std::pair<std::string, std::string> split_assignment(std::string_view assignment);

/// Independent 64-bit seed for sub-stream `index` of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace jade
