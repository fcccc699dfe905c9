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
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ctxsim/events.hpp"
#include "ctxsim/nas.hpp"

namespace ctxsim::radio
{

/// A message in flight. `flow` is the simulator's stand-in for radio-layer
/// correlation: it names the UE connection the message belongs to.
struct Envelope
{
    std::uint64_t step = 0;
    std::string from;
    std::string to;
    std::string bs;
    std::string flow;
    nas::NasMessage msg;
};

/// What an eavesdropper records for one transmission.
struct Observation
{
    std::uint64_t step = 0;
    std::string from;
    std::string to;
    std::string bs;
    std::string flow;
    std::string type;
    std::vector<nas::Field> fields;

    std::string field(std::string_view key) const;

    // "step | from->to | bs | message-type | k=v ..."
    std::string trace_line() const;
    // trace line with the flow column after bs
    std::string tap_line() const;
};

Observation observe(const Envelope &env);

class ChannelTap
{
  public:
    void record(Observation obs)
    {
        m_log.push_back(std::move(obs));
    }

    const std::vector<Observation> &log() const
    {
        return m_log;
    }

    std::string export_log() const;

  private:
    std::vector<Observation> m_log;
};

/// Ordered wireless channel between UE endpoints and the AMF.
class RadioLink
{
  public:
    explicit RadioLink(SimClock &clock) : m_clock(&clock)
    {
    }

    void add_endpoint(const std::string &name);
    bool has_endpoint(const std::string &name) const
    {
        return m_endpoints.contains(name);
    }

    /// Queues a message and records its observable projection on every tap.
    /// Throws UnknownEndpoint for unregistered sender or receiver.
    std::uint64_t send(const std::string &from, const std::string &to, const std::string &bs, const std::string &flow,
                       nas::NasMessage msg);

    /// Next message in global send order (which is FIFO per sender/receiver pair).
    std::optional<Envelope> deliver();
    /// Next message addressed to `to`, preserving FIFO order for it.
    std::optional<Envelope> deliver_to(const std::string &to);

    /// Discards the next queued message (scenario-driven loss).
    bool drop_next();

    std::size_t pending() const
    {
        return m_queue.size();
    }

    /// Taps live as long as the link.
    ChannelTap &attach_tap();

    /// Every transmission ever made, in order, as raw on-air messages.
    /// This is what a capturing radio obtains: cleartext IEs plus opaque
    /// ciphertext and MACs.
    const std::vector<Envelope> &captured() const
    {
        return m_captured;
    }

    /// Master record of all transmissions.
    const ChannelTap &trace() const
    {
        return m_trace;
    }

  private:
    SimClock *m_clock;
    std::set<std::string> m_endpoints;
    std::deque<Envelope> m_queue;
    std::vector<Envelope> m_captured;
    ChannelTap m_trace;
    std::deque<ChannelTap> m_taps;
};

struct SniffedIdentity
{
    nas::Guti guti;
    std::uint8_t ngksi = nas::kNoKeySet;
    // highest uplink count seen on the flow, if any fast request was seen
    std::optional<std::uint32_t> ul_count;
};

/// Latest GUTI seen in cleartext on `flow` (fast registration requests and
/// deregistrations). Throws NotObserved if the flow never exposed one.
nas::Guti sniff_latest_guti(const ChannelTap &tap, const std::string &flow);
SniffedIdentity sniff_latest_identity(const ChannelTap &tap, const std::string &flow);

/// IMSI sent in clear on `flow` by an unconcealed initial registration.
std::optional<std::string> sniff_imsi(const ChannelTap &tap, const std::string &flow);

} // namespace ctxsim::radio
