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
#include <functional>
#include <string>
#include <vector>

#include "ctxsim/nas.hpp"

namespace ctxsim
{

/// Scenario clock. Every radio transmission takes one step; scenarios may
/// also let idle time pass.
class SimClock
{
  public:
    std::uint64_t now() const
    {
        return m_now;
    }
    std::uint64_t tick()
    {
        return ++m_now;
    }
    void advance(std::uint64_t steps)
    {
        m_now += steps;
    }

  private:
    std::uint64_t m_now = 0;
};

namespace event
{
constexpr std::string_view kUeInit = "ue_init";
constexpr std::string_view kAmfVerify = "amf_verify";
} // namespace event

struct Event
{
    std::uint64_t step = 0;
    std::string entity;
    std::string name;
    std::vector<nas::Field> fields;

    std::string field(std::string_view key) const;
    // "<step> <entity> <event> <k=v ...>"
    std::string format() const;
};

class EventLog
{
  public:
    explicit EventLog(const SimClock &clock) : m_clock(&clock)
    {
    }

    void record(std::string entity, std::string name, std::vector<nas::Field> fields = {});

    const std::vector<Event> &events() const
    {
        return m_events;
    }
    std::vector<const Event *> named(std::string_view name) const;
    std::string dump() const;

  private:
    const SimClock *m_clock;
    std::vector<Event> m_events;
};

/// Fields identifying one fast registration request: cleartext IEs, the
/// ciphered container and the MAC, all hex.
std::vector<nas::Field> message_key_fields(const nas::RegistrationRequestFast &msg);

struct AgreementMatch
{
    const Event *verify = nullptr;
    // nullptr when no admissible ue_init was left to pair with
    const Event *init = nullptr;
};

struct AgreementReport
{
    std::vector<AgreementMatch> matches;

    std::size_t unmatched() const;
    bool holds() const
    {
        return unmatched() == 0;
    }
};

/// Pairs every amf_verify with a distinct earlier ue_init carrying the same
/// (ies, container, mac) and accepted by `admissible`. Injective agreement
/// holds when every verify found a partner.
AgreementReport check_injective_agreement(const EventLog &log,
                                          const std::function<bool(const Event &init)> &admissible);

} // namespace ctxsim
