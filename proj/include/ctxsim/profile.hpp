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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctxsim/nas.hpp"

namespace ctxsim::profile
{

struct OperatorProfile
{
    std::string name;
    bool usim_hardened = false;
    bool supi_concealment = false;
    bool fast_registration_enabled = true;
    bool usim_supports_5g_context = false;
    std::string default_pin = "1234";
    bool pin_enabled_by_default = false;
    unsigned pin_retry_limit = 3;
    std::optional<std::uint64_t> periodic_aka_interval;

    bool operator==(const OperatorProfile &) const = default;
};

/// OP-I, OP-II, OP-III.
const std::vector<OperatorProfile> &builtin_profiles();
/// Throws ConfigError for an unknown name.
const OperatorProfile &find_profile(std::string_view name);

/// Sets one profile field from its textual value. Throws ConfigError.
void set_profile_field(OperatorProfile &p, std::string_view key, std::string_view value);
std::vector<nas::Field> profile_fields(const OperatorProfile &p);

/// Defensive toggles layered over an operator profile. Off by default.
struct Countermeasures
{
    // READ of the NAS context files needs ADM
    bool usim_hardening = false;
    // PIN enabled and changed away from the operator default
    bool pin_change = false;
    // baseband compares ICCID as well as SUPI
    bool iccid_binding = false;
    bool fast_registration_off = false;
    // force AKA once the network's context is this many steps old
    std::optional<std::uint64_t> periodic_aka;
    // baseband learns of card removal while in airplane/off
    bool slot_notification = false;
    bool supi_concealment = false;
    // card stores the 5G context in 4F01/4F03
    bool usim_5g_context = false;

    /// hardening, PIN change, ICCID binding and fast registration off
    static Countermeasures all();

    /// `value` is on|off, or a step count for periodic-aka (off disables).
    /// Throws ConfigError for unknown names or values.
    void set(std::string_view name, std::string_view value);
    /// Parses "name=value".
    void apply(std::string_view assignment);

    /// Names of the toggles that are on, periodic-aka as "periodic-aka=<n>".
    std::vector<std::string> enabled() const;

    bool operator==(const Countermeasures &) const = default;
};

const std::vector<std::string_view> &countermeasure_names();

/// Everything the simulation needs to know, after countermeasures.
struct Setup
{
    OperatorProfile profile;
    Countermeasures countermeasures;

    bool card_hardened = false;
    bool pin_enabled = false;
    std::string victim_pin;
    bool card_supports_5g_context = false;
    bool fast_registration_enabled = true;
    std::optional<std::uint64_t> periodic_aka_interval;
    bool iccid_binding = false;
    bool slot_notification = false;
    bool supi_concealment = false;
};

/// `changed_pin` is used when the PIN-change toggle is on; it must differ
/// from the profile default.
Setup make_setup(const OperatorProfile &p, const Countermeasures &cm, const std::string &changed_pin = "4096");

} // namespace ctxsim::profile
