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

#include "ctxsim/scenario_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "ctxsim/error.hpp"
#include "ctxsim/text.hpp"

namespace ctxsim::scenario
{

namespace
{

// message of a ConfigError without its code prefix
std::string detail(const Error &e)
{
    std::string_view what = e.what();
    auto prefix = std::string(to_string(e.code())) + ": ";
    if (what.starts_with(prefix))
        what.remove_prefix(prefix.size());
    return std::string(what);
}

bool valid_supi(std::string_view s)
{
    if (s.size() < 6 || s.size() > 15)
        return false;
    for (char c : s)
        if (c < '0' || c > '9')
            return false;
    return true;
}

class LineParser
{
  public:
    explicit LineParser(ScenarioConfig &cfg) : m_cfg(cfg)
    {
    }

    void section(std::string_view name)
    {
        if (name != "run" && name != "profile" && name != "subscribers" && name != "countermeasures" &&
            name != "victim")
            fail(Errc::ConfigError, "unknown section [" + std::string(name) + "]");
        m_section = name;
    }

    void assign(std::string_view key, std::string_view value)
    {
        if (m_section.empty())
            fail(Errc::ConfigError, "field '" + std::string(key) + "' outside of any section");
        if (m_section == "run")
            run(key, value);
        else if (m_section == "profile")
        {
            // validated here so errors carry the line; applied on resolve
            profile::OperatorProfile scratch;
            profile::set_profile_field(scratch, key, value);
            m_cfg.profile_overrides.emplace_back(key, value);
        }
        else if (m_section == "subscribers")
            subscriber(key, value);
        else if (m_section == "countermeasures")
            m_cfg.countermeasures.set(key, value);
        else
            victim(key, value);
    }

  private:
    [[noreturn]] static void bad(std::string_view key, std::string_view expected, std::string_view value)
    {
        fail(Errc::ConfigError, "field '" + std::string(key) + "': expected " + std::string(expected) + ", got '" +
                                    std::string(value) + "'");
    }

    static std::uint64_t number(std::string_view key, std::string_view value)
    {
        auto n = text::parse_u64(value);
        if (!n)
            bad(key, "an unsigned integer", value);
        return *n;
    }

    static bool flag(std::string_view key, std::string_view value)
    {
        auto f = text::parse_flag(value);
        if (!f)
            bad(key, "on/off", value);
        return *f;
    }

    static attack::ScenarioId scenario_id(std::string_view key, std::string_view value)
    {
        auto id = attack::parse_scenario(value);
        if (!id)
            bad(key, "s1, s2, one-tap or location", value);
        return *id;
    }

    void run(std::string_view key, std::string_view value)
    {
        if (key == "seed")
            m_cfg.seed = number(key, value);
        else if (key == "attack")
            m_cfg.attack = scenario_id(key, value);
        else if (key == "base")
        {
            m_cfg.base = scenario_id(key, value);
            if (m_cfg.base != attack::ScenarioId::UsimImpersonation &&
                m_cfg.base != attack::ScenarioId::BasebandImpersonation)
                bad(key, "s1 or s2", value);
        }
        else if (key == "profile")
            m_cfg.profile_name = value;
        else
            fail(Errc::ConfigError, "unknown field '" + std::string(key) + "' in [run]");
    }

    void subscriber(std::string_view key, std::string_view value)
    {
        if (!valid_supi(value))
            bad(key, "a SUPI of 6-15 digits", value);
        if (key == "victim")
            m_cfg.victim_supi = value;
        else if (key == "bystander")
            m_cfg.bystanders.emplace_back(value);
        else
            fail(Errc::ConfigError, "unknown field '" + std::string(key) + "' in [subscribers]");
    }

    void victim(std::string_view key, std::string_view value)
    {
        if (key == "reregistrations")
            m_cfg.s1.victim_reregistrations = static_cast<unsigned>(number(key, value));
        else if (key == "sniff")
            m_cfg.s1.sniff = flag(key, value);
        else if (key == "attack_delay")
            m_cfg.s1.attack_delay = m_cfg.s2.attack_delay = number(key, value);
        else if (key == "reconnect")
            m_cfg.s1.victim_reconnects = m_cfg.s2.victim_reconnects = flag(key, value);
        else if (key == "swap")
        {
            auto s = attack::parse_swap_state(value);
            if (!s)
                bad(key, "airplane, off or on", value);
            m_cfg.s2.swap = *s;
        }
        else
            fail(Errc::ConfigError, "unknown field '" + std::string(key) + "' in [victim]");
    }

    ScenarioConfig &m_cfg;
    std::string m_section;
};

} // namespace

ScenarioConfig parse_config(std::string_view text)
{
    ScenarioConfig cfg;
    LineParser parser(cfg);
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        auto line = text::trim(text.substr(pos, end - pos));
        pos = end + 1;
        line_no++;
        if (line.empty() || line.front() == '#')
            continue;
        try
        {
            if (line.front() == '[')
            {
                if (line.back() != ']')
                    fail(Errc::ConfigError, "unterminated section header");
                parser.section(text::trim(line.substr(1, line.size() - 2)));
                continue;
            }
            auto eq = line.find('=');
            if (eq == std::string_view::npos)
                fail(Errc::ConfigError, "expected key = value");
            auto key = text::trim(line.substr(0, eq));
            if (key.empty())
                fail(Errc::ConfigError, "empty field name");
            parser.assign(key, text::trim(line.substr(eq + 1)));
        }
        catch (const Error &e)
        {
            if (e.code() != Errc::ConfigError)
                throw;
            fail(Errc::ConfigError, "line " + std::to_string(line_no) + ": " + detail(e));
        }
    }
    return cfg;
}

ScenarioConfig read_config(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(Errc::ConfigError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    try
    {
        return parse_config(ss.str());
    }
    catch (const Error &e)
    {
        if (e.code() != Errc::ConfigError)
            throw;
        fail(Errc::ConfigError, path.string() + ": " + detail(e));
    }
}

profile::OperatorProfile resolve_profile(const ScenarioConfig &cfg)
{
    auto p = profile::find_profile(cfg.profile_name);
    for (const auto &[k, v] : cfg.profile_overrides)
        profile::set_profile_field(p, k, v);
    return p;
}

attack::RunSpec to_run_spec(const ScenarioConfig &cfg)
{
    attack::RunSpec spec;
    spec.setup = profile::make_setup(resolve_profile(cfg), cfg.countermeasures);
    spec.seed = cfg.seed;
    spec.attack = cfg.attack;
    spec.base = cfg.base;
    spec.victim_supi = cfg.victim_supi;
    spec.bystanders = cfg.bystanders;
    std::set<std::string> seen{spec.victim_supi};
    for (const auto &b : spec.bystanders)
        if (!seen.insert(b).second)
            fail(Errc::ConfigError, "subscriber " + b + " listed twice");
    spec.s1 = cfg.s1;
    spec.s2 = cfg.s2;
    return spec;
}

} // namespace ctxsim::scenario
