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

#include "ctxsim/amf.hpp"

#include <algorithm>
#include <type_traits>

#include "ctxsim/error.hpp"

namespace ctxsim::amf
{

namespace
{

std::uint64_t splitmix(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint8_t pick(const std::vector<std::uint8_t> &caps, std::initializer_list<std::uint8_t> preference,
                  std::uint8_t fallback)
{
    for (auto p : preference)
        if (std::find(caps.begin(), caps.end(), p) != caps.end())
            return p;
    return fallback;
}

nas::RegistrationReject reject(std::string cause)
{
    return nas::RegistrationReject{std::move(cause)};
}

} // namespace

std::string_view to_string(FastCheck c)
{
    switch (c)
    {
    case FastCheck::Ok:
        return "ok";
    case FastCheck::UnknownContext:
        return "unknown_context";
    case FastCheck::MacMismatch:
        return "mac_mismatch";
    case FastCheck::ContainerMismatch:
        return "container_mismatch";
    case FastCheck::CountNotFresh:
        return "count_not_fresh";
    case FastCheck::StaleGuti:
        return "stale_guti";
    }
    return "?";
}

Amf::Amf(AmfConfig config, const SimClock &clock, EventLog &events)
    : m_config(std::move(config)), m_clock(&clock), m_events(&events), m_rng(splitmix(m_config.seed ^ 0xa3f1)),
      m_gutiBase(splitmix(m_config.seed))
{
}

void Amf::add_subscriber(const std::string &supi, const crypto::Key &k_permanent)
{
    if (k_permanent.kind != crypto::KeyKind::Permanent)
        fail(Errc::WrongKeyKind, "subscriber key must be a permanent key");
    if (!m_subscribers.emplace(supi, SubscriberRecord{supi, k_permanent}).second)
        fail(Errc::InvalidArgument, "duplicate subscriber " + supi);
}

const SubscriberRecord *Amf::subscriber(const std::string &supi) const
{
    auto it = m_subscribers.find(supi);
    return it == m_subscribers.end() ? nullptr : &it->second;
}

std::optional<Session> Amf::session(const std::string &supi) const
{
    auto it = m_sessions.find(supi);
    if (it == m_sessions.end())
        return std::nullopt;
    return it->second;
}

std::optional<nas::NasMessage> Amf::receive(const radio::Envelope &env)
{
    return std::visit(
        [&](const auto &m) -> std::optional<nas::NasMessage> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, nas::RegistrationRequestFast>)
                return on_fast_request(env, m);
            else if constexpr (std::is_same_v<T, nas::RegistrationRequestInitial>)
            {
                m_pending.erase(env.from);
                return on_identity(env, m.identity, m.ue_sec_caps);
            }
            else if constexpr (std::is_same_v<T, nas::IdentityResponse>)
            {
                auto it = m_pending.find(env.from);
                if (it == m_pending.end() || it->second.stage != Stage::AwaitIdentity)
                    return reject("message not compatible with protocol state");
                m_pending.erase(it);
                return on_identity(env, m.identity, m.ue_sec_caps);
            }
            else if constexpr (std::is_same_v<T, nas::AuthResponse>)
                return on_auth_response(env, m);
            else if constexpr (std::is_same_v<T, nas::AuthFailure>)
            {
                m_pending.erase(env.from);
                m_events->record(name(), "aka_failed_at_ue", {{"endpoint", env.from}});
                return reject("ue rejected authentication");
            }
            else if constexpr (std::is_same_v<T, nas::SecurityModeComplete>)
                return on_smc_complete(env, m);
            else if constexpr (std::is_same_v<T, nas::Deregistration>)
            {
                on_deregistration(env, m);
                return std::nullopt;
            }
            else
                return std::nullopt;
        },
        env.msg);
}

FastCheck Amf::verify_fast(const nas::RegistrationRequestFast &msg, std::string *supi) const
{
    ContextKey key{msg.ies.guti, msg.ies.ngksi};
    const ContextEntry *entry = nullptr;
    bool stale = false;

    if (auto it = m_table.find(key); it != m_table.end())
        entry = &it->second;
    else if (auto r = m_retired.find(key); r != m_retired.end())
    {
        auto current = current_key(r->second);
        if (current && current->ngksi == key.ngksi)
        {
            entry = &m_table.at(*current);
            stale = true;
        }
    }
    if (!entry)
        return FastCheck::UnknownContext;
    if (supi)
        *supi = entry->supi;

    auto keys = crypto::derive_nas_keys(entry->ctx.k_amf);
    auto ies = msg.ies.encode();
    if (!crypto::mac_verify(ies, msg.container, keys.integrity, msg.mac))
        return FastCheck::MacMismatch;
    auto plain = crypto::sdec(msg.container, keys.enc);
    if (!plain || *plain != ies)
        return FastCheck::ContainerMismatch;
    if (!(msg.ies.ul_count > entry->ctx.ul_count))
        return FastCheck::CountNotFresh;
    if (stale)
        return FastCheck::StaleGuti;
    return FastCheck::Ok;
}

nas::NasMessage Amf::on_fast_request(const radio::Envelope &env, const nas::RegistrationRequestFast &msg)
{
    m_pending.erase(env.from);

    std::string supi;
    auto check = verify_fast(msg, &supi);
    std::string fallback;

    if (check != FastCheck::Ok)
        fallback = std::string(to_string(check));
    else if (!m_config.fast_registration_enabled)
        fallback = "fast_registration_disabled";
    else if (m_config.periodic_aka_interval)
    {
        const auto &entry = m_table.at(ContextKey{msg.ies.guti, msg.ies.ngksi});
        if (m_clock->now() - entry.established_at >= *m_config.periodic_aka_interval)
            fallback = "context_expired";
    }

    if (!fallback.empty())
    {
        m_events->record(name(), "fast_path_fallback", {{"endpoint", env.from}, {"reason", fallback}});
        if (supi.empty())
        {
            m_pending[env.from] = Pending{Stage::AwaitIdentity, {}, {}, {}, {}, {}};
            return nas::IdentityRequest{};
        }
        return start_aka(env, supi, m_table.at(*current_key(supi)).ctx.ue_sec_caps);
    }

    auto fields = message_key_fields(msg);
    fields.emplace_back("supi", supi);
    m_events->record(name(), std::string(event::kAmfVerify), std::move(fields));

    ContextKey old_key{msg.ies.guti, msg.ies.ngksi};
    auto entry = m_table.extract(old_key);
    entry.mapped().ctx.ul_count = msg.ies.ul_count;
    m_retired[old_key] = supi;

    ContextKey new_key{allocate_guti(), old_key.ngksi};
    entry.key() = new_key;
    m_table.insert(std::move(entry));
    return accept(env, new_key);
}

nas::NasMessage Amf::on_identity(const radio::Envelope &env, const nas::MobileIdentity &identity,
                                 const std::vector<std::uint8_t> &caps)
{
    std::string supi;
    if (identity.type == nas::MobileIdentity::Type::Imsi)
        supi = to_text(identity.value);
    else
    {
        auto revealed = nas::reveal_supi(identity.value, m_config.home_network_key);
        if (!revealed)
            return reject("invalid identity");
        supi = *revealed;
    }
    if (!m_subscribers.contains(supi))
    {
        m_events->record(name(), "unknown_subscriber", {{"endpoint", env.from}});
        return reject("unknown subscriber");
    }
    return start_aka(env, supi, caps);
}

nas::NasMessage Amf::start_aka(const radio::Envelope &env, const std::string &supi, std::vector<std::uint8_t> caps)
{
    auto &sub = m_subscribers.at(supi);
    sub.seq++;
    auto rand = m_rng.bytes(crypto::kRandLength);

    Pending p;
    p.stage = Stage::AwaitAuthResponse;
    p.supi = supi;
    p.vector = crypto::gen_auth_vector(sub.k_permanent, sub.seq, rand);
    p.ue_caps = std::move(caps);
    p.ctx.ngksi = sub.next_ngksi;
    sub.next_ngksi = static_cast<std::uint8_t>((sub.next_ngksi + 1) % (nas::kMaxKeySet + 1));

    nas::AuthRequest req{p.vector.rand, p.vector.autn, p.ctx.ngksi};
    m_events->record(name(), "aka_start", {{"endpoint", env.from}, {"supi", supi}, {"ngksi", std::to_string(req.ngksi)}});
    m_pending[env.from] = std::move(p);
    return req;
}

nas::NasMessage Amf::on_auth_response(const radio::Envelope &env, const nas::AuthResponse &msg)
{
    auto it = m_pending.find(env.from);
    if (it == m_pending.end() || it->second.stage != Stage::AwaitAuthResponse)
        return reject("message not compatible with protocol state");
    auto &p = it->second;

    if (msg.res != p.vector.xres)
    {
        m_events->record(name(), "aka_reject", {{"endpoint", env.from}, {"supi", p.supi}});
        m_pending.erase(it);
        return nas::AuthReject{};
    }

    auto kausf = crypto::kdf(p.vector.ck, p.vector.ik, crypto::label::kAusf);
    auto kseaf = crypto::kdf(kausf, crypto::label::kSeaf);
    p.ctx.k_amf = crypto::kdf(kseaf, crypto::label::kAmf);
    p.keys = crypto::derive_nas_keys(p.ctx.k_amf);
    for (auto [from, to] : {std::pair{"CK||IK", "K_AUSF"}, std::pair{"K_AUSF", "K_SEAF"}, std::pair{"K_SEAF", "K_AMF"},
                            std::pair{"K_AMF", "K_NASenc"}, std::pair{"K_AMF", "K_NASint"}})
        m_events->record(name(), "key_derived", {{"supi", p.supi}, {"from", from}, {"to", to}});

    p.ctx.ue_sec_caps = p.ue_caps;
    p.ctx.ul_count = 0;
    p.ctx.dl_count = 0;

    nas::SecurityModeCommand smc;
    smc.cipher_alg = pick(p.ue_caps, {nas::alg::kEa2, nas::alg::kEa1, nas::alg::kEa0}, nas::alg::kEa0);
    smc.integrity_alg = pick(p.ue_caps, {nas::alg::kIa2, nas::alg::kIa1}, nas::alg::kIa1);
    smc.ngksi = p.ctx.ngksi;
    smc.mac = crypto::mac_compute(smc.protected_part(), {}, p.keys.integrity);
    p.stage = Stage::AwaitSecurityModeComplete;
    return smc;
}

nas::NasMessage Amf::on_smc_complete(const radio::Envelope &env, const nas::SecurityModeComplete &msg)
{
    auto it = m_pending.find(env.from);
    if (it == m_pending.end() || it->second.stage != Stage::AwaitSecurityModeComplete)
        return reject("message not compatible with protocol state");
    auto p = std::move(it->second);
    m_pending.erase(it);

    if (!crypto::mac_verify(nas::smc_complete_ies(p.ctx.ngksi), {}, p.keys.integrity, msg.mac))
        return reject("security mode rejected");

    drop_contexts(p.supi);
    ContextKey key{allocate_guti(), p.ctx.ngksi};
    m_table[key] = ContextEntry{p.supi, p.ctx, m_clock->now()};
    m_events->record(name(), "context_installed", {{"supi", p.supi}, {"ngksi", std::to_string(key.ngksi)}});
    return accept(env, key);
}

void Amf::on_deregistration(const radio::Envelope &env, const nas::Deregistration &msg)
{
    auto it = m_table.find(ContextKey{msg.guti, msg.ngksi});
    if (it == m_table.end())
        return;
    auto s = m_sessions.find(it->second.supi);
    if (s != m_sessions.end() && s->second.endpoint == env.from)
    {
        s->second.state = SessionState::Deregistered;
        m_events->record(name(), "deregistered", {{"endpoint", env.from}, {"supi", it->second.supi}});
    }
}

nas::NasMessage Amf::accept(const radio::Envelope &env, const ContextKey &key)
{
    auto &entry = m_table.at(key);
    entry.ctx.dl_count++;
    auto keys = crypto::derive_nas_keys(entry.ctx.k_amf);

    m_sessions[entry.supi] = Session{entry.supi, env.from, env.bs, keys, SessionState::Registered};
    m_events->record(name(), "registration_accept",
                     {{"endpoint", env.from}, {"supi", entry.supi}, {"bs", env.bs}, {"guti", key.guti.to_string()}});
    return nas::RegistrationAccept{crypto::senc(nas::encode_accept_payload(key.guti, entry.ctx.dl_count), keys.enc)};
}

std::optional<ContextKey> Amf::current_key(const std::string &supi) const
{
    for (const auto &[key, entry] : m_table)
        if (entry.supi == supi)
            return key;
    return std::nullopt;
}

void Amf::drop_contexts(const std::string &supi)
{
    std::erase_if(m_table, [&](const auto &kv) { return kv.second.supi == supi; });
    std::erase_if(m_retired, [&](const auto &kv) { return kv.second == supi; });
}

nas::Guti Amf::allocate_guti()
{
    nas::Guti g{splitmix(m_gutiBase + m_gutiCounter++)};
    m_issued.push_back(g);
    return g;
}

OneTapToken Amf::one_tap_token(const std::string &endpoint)
{
    for (const auto &[supi, s] : m_sessions)
    {
        if (s.endpoint == endpoint && s.state == SessionState::Registered)
        {
            OneTapToken token{supi, m_rng.bytes(16)};
            m_events->record(name(), "one_tap_token", {{"endpoint", endpoint}, {"supi", supi}});
            return token;
        }
    }
    fail(Errc::NotRegistered, "no registered session for endpoint '" + endpoint + "'");
}

std::string Amf::locate(const std::string &supi) const
{
    auto it = m_sessions.find(supi);
    if (it == m_sessions.end() || it->second.state != SessionState::Registered)
        fail(Errc::NotRegistered, "subscriber " + supi + " is not registered");
    return it->second.serving_bs;
}

Network::Network(radio::RadioLink &link, Amf &amf) : m_link(&link), m_amf(&amf)
{
    m_link->add_endpoint(amf.name());
}

void Network::join(const std::string &endpoint)
{
    m_link->add_endpoint(endpoint);
}

std::optional<nas::NasMessage> Network::transact(const std::string &endpoint, const std::string &bs,
                                                 nas::NasMessage msg)
{
    m_link->send(endpoint, m_amf->name(), bs, endpoint, std::move(msg));
    if (m_dropUplinks > 0)
    {
        m_dropUplinks--;
        m_link->drop_next();
        return std::nullopt;
    }
    auto uplink = m_link->deliver_to(m_amf->name());
    if (!uplink)
        return std::nullopt;
    auto reply = m_amf->receive(*uplink);
    if (!reply)
        return std::nullopt;
    m_link->send(m_amf->name(), uplink->from, uplink->bs, uplink->flow, std::move(*reply));
    auto downlink = m_link->deliver_to(uplink->from);
    if (!downlink)
        return std::nullopt;
    return std::move(downlink->msg);
}

} // namespace ctxsim::amf
