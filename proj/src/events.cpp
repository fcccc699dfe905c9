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

#include "ctxsim/events.hpp"

#include <algorithm>
#include <sstream>

namespace ctxsim
{

std::string Event::field(std::string_view key) const
{
    for (const auto &[k, v] : fields)
        if (k == key)
            return v;
    return {};
}

std::string Event::format() const
{
    std::ostringstream out;
    out << step << ' ' << entity << ' ' << name;
    for (const auto &[k, v] : fields)
        out << ' ' << k << '=' << v;
    return out.str();
}

void EventLog::record(std::string entity, std::string name, std::vector<nas::Field> fields)
{
    m_events.push_back(Event{m_clock->now(), std::move(entity), std::move(name), std::move(fields)});
}

std::vector<const Event *> EventLog::named(std::string_view name) const
{
    std::vector<const Event *> out;
    for (const auto &e : m_events)
        if (e.name == name)
            out.push_back(&e);
    return out;
}

std::string EventLog::dump() const
{
    std::string out;
    for (const auto &e : m_events)
    {
        out += e.format();
        out += '\n';
    }
    return out;
}

std::vector<nas::Field> message_key_fields(const nas::RegistrationRequestFast &msg)
{
    return {{"ies", to_hex(msg.ies.encode())}, {"container", to_hex(msg.container)}, {"mac", to_hex(msg.mac.tag)}};
}

std::size_t AgreementReport::unmatched() const
{
    return static_cast<std::size_t>(
        std::count_if(matches.begin(), matches.end(), [](const AgreementMatch &m) { return m.init == nullptr; }));
}

AgreementReport check_injective_agreement(const EventLog &log,
                                          const std::function<bool(const Event &init)> &admissible)
{
    auto same_message = [](const Event &a, const Event &b) {
        return a.field("ies") == b.field("ies") && a.field("container") == b.field("container") &&
               a.field("mac") == b.field("mac");
    };

    std::vector<const Event *> inits;
    std::vector<bool> used;
    AgreementReport report;

    // events are in log order, so every candidate init precedes its verify
    for (const auto &e : log.events())
    {
        if (e.name == event::kUeInit)
        {
            inits.push_back(&e);
            used.push_back(false);
        }
        else if (e.name == event::kAmfVerify)
        {
            AgreementMatch match{&e, nullptr};
            for (std::size_t i = 0; i < inits.size(); i++)
            {
                if (!used[i] && same_message(*inits[i], e) && admissible(*inits[i]))
                {
                    used[i] = true;
                    match.init = inits[i];
                    break;
                }
            }
            report.matches.push_back(match);
        }
    }
    return report;
}

} // namespace ctxsim
