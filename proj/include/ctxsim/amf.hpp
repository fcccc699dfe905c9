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

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ctxsim/bytes.hpp"
#include "ctxsim/crypto.hpp"
#include "ctxsim/events.hpp"
#include "ctxsim/nas.hpp"
#include "ctxsim/radio_link.hpp"

namespace ctxsim::amf
{

struct SubscriberRecord
{
    std::string supi;
    crypto::Key k_permanent;
    std::uint64_t seq = 0;
    // round-robin over 0..6
    std::uint8_t next_ngksi = 0;
};

struct ContextKey
{
    nas::Guti guti;
    std::uint8_t ngksi = nas::kNoKeySet;

    auto operator<=>(const ContextKey &) const = default;
};

struct ContextEntry
{
    std::string supi;
    nas::SecurityContext ctx;
    // clock step at which the AKA run producing this context completed
    std::uint64_t established_at = 0;
};

using ContextTable = std::map<ContextKey, ContextEntry>;

enum class SessionState
{
    Registered,
    Deregistered,
};

struct Session
{
    std::string supi;
    std::string endpoint;
    std::string serving_bs;
    crypto::NasKeys keys;
    SessionState state = SessionState::Deregistered;
};

struct OneTapToken
{
    std::string supi;
    Bytes nonce;
};

/// Outcome of checking a fast registration request against the table, in
/// the order the checks run.
enum class FastCheck
{
    Ok,
    UnknownContext,
    MacMismatch,
    ContainerMismatch,
    CountNotFresh,
    // the GUTI was valid once but has since been reallocated
    StaleGuti,
};

std::string_view to_string(FastCheck c);

struct AmfConfig
{
    std::string name = "amf";
    bool fast_registration_enabled = true;
    // force AKA once a context is this many steps old
    std::optional<std::uint64_t> periodic_aka_interval;
    // owner-side secret of the SUCI transform
    crypto::Key home_network_key{{}, crypto::KeyKind::Permanent};
    std::uint64_t seed = 0;
};

class Amf
{
  public:
    Amf(AmfConfig config, const SimClock &clock, EventLog &events);

    const std::string &name() const
    {
        return m_config.name;
    }
    const AmfConfig &config() const
    {
        return m_config;
    }

    /// Throws InvalidArgument on a duplicate SUPI.
    void add_subscriber(const std::string &supi, const crypto::Key &k_permanent);
    const SubscriberRecord *subscriber(const std::string &supi) const;

    /// Processes one uplink NAS message and returns the downlink reply, if any.
    std::optional<nas::NasMessage> receive(const radio::Envelope &env);

    /// Runs the fast-path checks without side effects. On a table hit,
    /// `supi` receives the subscriber the context belongs to.
    FastCheck verify_fast(const nas::RegistrationRequestFast &msg, std::string *supi = nullptr) const;

    /// Throws NotRegistered unless `endpoint` holds a Registered session.
    OneTapToken one_tap_token(const std::string &endpoint);
    /// Serving base station of the subscriber's Registered session.
    std::string locate(const std::string &supi) const;

    const ContextTable &contexts() const
    {
        return m_table;
    }
    std::optional<Session> session(const std::string &supi) const;
    const std::vector<nas::Guti> &issued_gutis() const
    {
        return m_issued;
    }

  private:
    enum class Stage
    {
        AwaitIdentity,
        AwaitAuthResponse,
        AwaitSecurityModeComplete,
    };

    struct Pending
    {
        Stage stage = Stage::AwaitIdentity;
        std::string supi;
        crypto::AuthVector vector;
        std::vector<std::uint8_t> ue_caps;
        nas::SecurityContext ctx;
        crypto::NasKeys keys;
    };

    nas::NasMessage on_fast_request(const radio::Envelope &env, const nas::RegistrationRequestFast &msg);
    nas::NasMessage on_identity(const radio::Envelope &env, const nas::MobileIdentity &identity,
                                const std::vector<std::uint8_t> &caps);
    nas::NasMessage start_aka(const radio::Envelope &env, const std::string &supi, std::vector<std::uint8_t> caps);
    nas::NasMessage on_auth_response(const radio::Envelope &env, const nas::AuthResponse &msg);
    nas::NasMessage on_smc_complete(const radio::Envelope &env, const nas::SecurityModeComplete &msg);
    void on_deregistration(const radio::Envelope &env, const nas::Deregistration &msg);

    std::optional<ContextKey> current_key(const std::string &supi) const;
    void drop_contexts(const std::string &supi);
    nas::Guti allocate_guti();
    nas::NasMessage accept(const radio::Envelope &env, const ContextKey &key);

    AmfConfig m_config;
    const SimClock *m_clock;
    EventLog *m_events;
    Rng m_rng;
    std::uint64_t m_gutiBase;
    std::uint64_t m_gutiCounter = 0;

    std::map<std::string, SubscriberRecord> m_subscribers;
    ContextTable m_table;
    // reallocated identifiers, still pointing at their subscriber so replays
    // of old requests reach the count check
    std::map<ContextKey, std::string> m_retired;
    std::map<std::string, Session> m_sessions;
    std::map<std::string, Pending> m_pending;
    std::vector<nas::Guti> m_issued;
};

/// Glue between a UE endpoint, the radio link and the AMF: one uplink
/// message in, the AMF's reply (if any) back out, all through the channel.
class Network
{
  public:
    Network(radio::RadioLink &link, Amf &amf);

    void join(const std::string &endpoint);

    /// nullopt when the network sent nothing back or the reply was dropped.
    std::optional<nas::NasMessage> transact(const std::string &endpoint, const std::string &bs, nas::NasMessage msg);

    /// Loses the next uplink message before it reaches the AMF.
    void drop_next_uplink()
    {
        m_dropUplinks++;
    }

    radio::RadioLink &link()
    {
        return *m_link;
    }
    Amf &amf()
    {
        return *m_amf;
    }

  private:
    radio::RadioLink *m_link;
    Amf *m_amf;
    unsigned m_dropUplinks = 0;
};

} // namespace ctxsim::amf
