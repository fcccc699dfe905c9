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

#include "ctxsim/profile.hpp"

#include "ctxsim/error.hpp"
#include "ctxsim/text.hpp"
#include "ctxsim/usim.hpp"

namespace ctxsim::profile
{

namespace
{

bool flag_value(std::string_view key, std::string_view value)
{
    auto f = text::parse_flag(value);
    if (!f)
        fail(Errc::ConfigError, "field '" + std::string(key) + "': expected on/off, got '" + std::string(value) + "'");
    return *f;
}

std::uint64_t count_value(std::string_view key, std::string_view value)
{
    auto n = text::parse_u64(value);
    if (!n || *n == 0)
        fail(Errc::ConfigError,
             "field '" + std::string(key) + "': expected a positive step count, got '" + std::string(value) + "'");
    return *n;
}

const char *yn(bool b)
{
    return b ? "true" : "false";
}

} // namespace

const std::vector<OperatorProfile> &builtin_profiles()
{
    static const std::vector<OperatorProfile> profiles = [] {
        OperatorProfile one;
        one.name = "OP-I";
        OperatorProfile two = one;
        two.name = "OP-II";
        two.usim_hardened = true;
        OperatorProfile three = one;
        three.name = "OP-III";
        return std::vector{one, two, three};
    }();
    return profiles;
}

const OperatorProfile &find_profile(std::string_view name)
{
    for (const auto &p : builtin_profiles())
        if (p.name == name)
            return p;
    fail(Errc::ConfigError, "unknown operator profile '" + std::string(name) + "'");
}

void set_profile_field(OperatorProfile &p, std::string_view key, std::string_view value)
{
    if (key == "name")
    {
        if (value.empty())
            fail(Errc::ConfigError, "field 'name': empty");
        p.name = value;
    }
    else if (key == "usim_hardened")
        p.usim_hardened = flag_value(key, value);
    else if (key == "supi_concealment")
        p.supi_concealment = flag_value(key, value);
    else if (key == "fast_registration_enabled")
        p.fast_registration_enabled = flag_value(key, value);
    else if (key == "usim_supports_5g_context")
        p.usim_supports_5g_context = flag_value(key, value);
    else if (key == "default_pin")
    {
        if (!usim::PinState::well_formed(value))
            fail(Errc::ConfigError, "field 'default_pin': expected 4-8 digits");
        p.default_pin = value;
    }
    else if (key == "pin_enabled_by_default")
        p.pin_enabled_by_default = flag_value(key, value);
    else if (key == "pin_retry_limit")
    {
        auto n = count_value(key, value);
        if (n > 15)
            fail(Errc::ConfigError, "field 'pin_retry_limit': at most 15");
        p.pin_retry_limit = static_cast<unsigned>(n);
    }
    else if (key == "periodic_aka_interval")
    {
        if (value == "off" || value == "none")
            p.periodic_aka_interval.reset();
        else
            p.periodic_aka_interval = count_value(key, value);
    }
    else
        fail(Errc::ConfigError, "unknown profile field '" + std::string(key) + "'");
}

std::vector<nas::Field> profile_fields(const OperatorProfile &p)
{
    return {
        {"name", p.name},
        {"usim_hardened", yn(p.usim_hardened)},
        {"supi_concealment", yn(p.supi_concealment)},
        {"fast_registration_enabled", yn(p.fast_registration_enabled)},
        {"usim_supports_5g_context", yn(p.usim_supports_5g_context)},
        {"default_pin", p.default_pin},
        {"pin_enabled_by_default", yn(p.pin_enabled_by_default)},
        {"pin_retry_limit", std::to_string(p.pin_retry_limit)},
        {"periodic_aka_interval", p.periodic_aka_interval ? std::to_string(*p.periodic_aka_interval) : "off"},
    };
}

const std::vector<std::string_view> &countermeasure_names()
{
    static const std::vector<std::string_view> names{
        "usim-hardening", "pin-change",     "iccid-binding",     "fast-registration-off",
        "periodic-aka",   "slot-notification", "supi-concealment", "usim-5g-context",
    };
    return names;
}

Countermeasures Countermeasures::all()
{
    Countermeasures cm;
    cm.usim_hardening = true;
    cm.pin_change = true;
    cm.iccid_binding = true;
    cm.fast_registration_off = true;
    return cm;
}

void Countermeasures::set(std::string_view name, std::string_view value)
{
    if (name == "periodic-aka")
    {
        if (value == "off")
            periodic_aka.reset();
        else
            periodic_aka = count_value(name, value);
        return;
    }

    bool *target = nullptr;
    if (name == "usim-hardening")
        target = &usim_hardening;
    else if (name == "pin-change")
        target = &pin_change;
    else if (name == "iccid-binding")
        target = &iccid_binding;
    else if (name == "fast-registration-off")
        target = &fast_registration_off;
    else if (name == "slot-notification")
        target = &slot_notification;
    else if (name == "supi-concealment")
        target = &supi_concealment;
    else if (name == "usim-5g-context")
        target = &usim_5g_context;
    else
        fail(Errc::ConfigError, "unknown countermeasure '" + std::string(name) + "'");
    *target = flag_value(name, value);
}

void Countermeasures::apply(std::string_view assignment)
{
    auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
        fail(Errc::ConfigError, "countermeasure '" + std::string(assignment) + "': expected name=on|off");
    set(text::trim(assignment.substr(0, eq)), text::trim(assignment.substr(eq + 1)));
}

std::vector<std::string> Countermeasures::enabled() const
{
    std::vector<std::string> out;
    auto add = [&](bool on, const char *name) {
        if (on)
            out.emplace_back(name);
    };
    add(usim_hardening, "usim-hardening");
    add(pin_change, "pin-change");
    add(iccid_binding, "iccid-binding");
    add(fast_registration_off, "fast-registration-off");
    if (periodic_aka)
        out.push_back("periodic-aka=" + std::to_string(*periodic_aka));
    add(slot_notification, "slot-notification");
    add(supi_concealment, "supi-concealment");
    add(usim_5g_context, "usim-5g-context");
    return out;
}

Setup make_setup(const OperatorProfile &p, const Countermeasures &cm, const std::string &changed_pin)
{
    if (cm.pin_change && (changed_pin == p.default_pin || !usim::PinState::well_formed(changed_pin)))
        fail(Errc::InvalidArgument, "changed PIN must be well formed and differ from the default");

    Setup s;
    s.profile = p;
    s.countermeasures = cm;
    s.card_hardened = p.usim_hardened || cm.usim_hardening;
    s.pin_enabled = p.pin_enabled_by_default || cm.pin_change;
    s.victim_pin = cm.pin_change ? changed_pin : p.default_pin;
    s.card_supports_5g_context = p.usim_supports_5g_context || cm.usim_5g_context;
    s.fast_registration_enabled = p.fast_registration_enabled && !cm.fast_registration_off;
    s.periodic_aka_interval = cm.periodic_aka ? cm.periodic_aka : p.periodic_aka_interval;
    s.iccid_binding = cm.iccid_binding;
    s.slot_notification = cm.slot_notification;
    s.supi_concealment = p.supi_concealment || cm.supi_concealment;
    return s;
}

} // namespace ctxsim::profile
