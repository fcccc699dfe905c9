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

#include "ctxsim/radio_link.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "ctxsim/error.hpp"

namespace ctxsim::radio
{

namespace
{

void write_fields(std::ostringstream &out, const std::vector<nas::Field> &fields)
{
    bool first = true;
    for (const auto &[k, v] : fields)
    {
        out << (first ? "" : " ") << k << '=' << v;
        first = false;
    }
    if (fields.empty())
        out << '-';
}

std::optional<std::uint64_t> parse_hex_u64(const std::string &s)
{
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

std::optional<std::uint32_t> parse_u32(const std::string &s)
{
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

} // namespace

std::string Observation::field(std::string_view key) const
{
    for (const auto &[k, v] : fields)
        if (k == key)
            return v;
    return {};
}

std::string Observation::trace_line() const
{
    std::ostringstream out;
    out << step << " | " << from << "->" << to << " | " << bs << " | " << type << " | ";
    write_fields(out, fields);
    return out.str();
}

std::string Observation::tap_line() const
{
    std::ostringstream out;
    out << step << " | " << from << "->" << to << " | " << bs << " | " << flow << " | " << type << " | ";
    write_fields(out, fields);
    return out.str();
}

Observation observe(const Envelope &env)
{
    return Observation{env.step, env.from, env.to, env.bs, env.flow, nas::message_type(env.msg),
                       nas::observable_fields(env.msg)};
}

std::string ChannelTap::export_log() const
{
    std::string out;
    for (const auto &o : m_log)
    {
        out += o.tap_line();
        out += '\n';
    }
    return out;
}

void RadioLink::add_endpoint(const std::string &name)
{
    m_endpoints.insert(name);
}

std::uint64_t RadioLink::send(const std::string &from, const std::string &to, const std::string &bs,
                              const std::string &flow, nas::NasMessage msg)
{
    if (!has_endpoint(from))
        fail(Errc::UnknownEndpoint, "sender '" + from + "' is not on the channel");
    if (!has_endpoint(to))
        fail(Errc::UnknownEndpoint, "receiver '" + to + "' is not on the channel");

    Envelope env{m_clock->tick(), from, to, bs, flow, std::move(msg)};
    auto obs = observe(env);
    m_trace.record(obs);
    for (auto &tap : m_taps)
        tap.record(obs);
    m_captured.push_back(env);
    m_queue.push_back(std::move(env));
    return m_clock->now();
}

std::optional<Envelope> RadioLink::deliver()
{
    if (m_queue.empty())
        return std::nullopt;
    auto env = std::move(m_queue.front());
    m_queue.pop_front();
    return env;
}

std::optional<Envelope> RadioLink::deliver_to(const std::string &to)
{
    auto it = std::find_if(m_queue.begin(), m_queue.end(), [&](const Envelope &e) { return e.to == to; });
    if (it == m_queue.end())
        return std::nullopt;
    auto env = std::move(*it);
    m_queue.erase(it);
    return env;
}

bool RadioLink::drop_next()
{
    if (m_queue.empty())
        return false;
    m_queue.pop_front();
    return true;
}

ChannelTap &RadioLink::attach_tap()
{
    return m_taps.emplace_back();
}

SniffedIdentity sniff_latest_identity(const ChannelTap &tap, const std::string &flow)
{
    std::optional<SniffedIdentity> found;
    std::optional<std::uint32_t> max_count;
    for (const auto &o : tap.log())
    {
        if (o.flow != flow)
            continue;
        bool fast = o.type == "RegistrationRequest(fast)";
        if (!fast && o.type != "DeregistrationRequest")
            continue;
        auto guti = parse_hex_u64(o.field("guti"));
        auto ksi = parse_u32(o.field("ngksi"));
        if (!guti || !ksi)
            continue;
        found = SniffedIdentity{nas::Guti{*guti}, static_cast<std::uint8_t>(*ksi), std::nullopt};
        if (fast)
            if (auto c = parse_u32(o.field("ul_count")))
                max_count = std::max(max_count.value_or(0), *c);
    }
    if (!found)
        fail(Errc::NotObserved, "no GUTI observed on flow '" + flow + "'");
    found->ul_count = max_count;
    return *found;
}

nas::Guti sniff_latest_guti(const ChannelTap &tap, const std::string &flow)
{
    return sniff_latest_identity(tap, flow).guti;
}

std::optional<std::string> sniff_imsi(const ChannelTap &tap, const std::string &flow)
{
    std::optional<std::string> imsi;
    for (const auto &o : tap.log())
        if (o.flow == flow && o.field("identity") == "imsi")
            imsi = o.field("imsi");
    return imsi;
}

} // namespace ctxsim::radio
