// Copyright 2026 The ctxsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ctxsim/attack.hpp"
#include "ctxsim/profile.hpp"

namespace ctxsim::scenario
{

/// A run description. Text form:
///
///   [run]            seed, attack, base, profile
///   [profile]        inline overrides of the named profile's fields
///   [subscribers]    victim = <supi>, bystander = <supi> (repeatable)
///   [countermeasures] <name> = on|off (periodic-aka = <steps>)
///   [victim]         reregistrations, sniff, attack_delay, reconnect, swap
///
/// Blank lines and lines starting with '#' are ignored.
struct ScenarioConfig
{
    std::uint64_t seed = 1;
    attack::ScenarioId attack = attack::ScenarioId::BasebandImpersonation;
    attack::ScenarioId base = attack::ScenarioId::BasebandImpersonation;
    std::string profile_name = "OP-I";
    std::vector<std::pair<std::string, std::string>> profile_overrides;
    std::string victim_supi = "001010123456789";
    std::vector<std::string> bystanders;
    profile::Countermeasures countermeasures;
    attack::S1Options s1;
    attack::S2Options s2;
};

/// Throws ConfigError naming the line and field.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig read_config(const std::filesystem::path &path);

/// Named profile with the inline overrides applied. Throws ConfigError.
profile::OperatorProfile resolve_profile(const ScenarioConfig &cfg);
attack::RunSpec to_run_spec(const ScenarioConfig &cfg);

} // namespace ctxsim::scenario
