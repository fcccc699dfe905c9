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

#include "ctxsim/mobile_equipment.hpp"

#include <type_traits>

#include "ctxsim/error.hpp"

namespace ctxsim::me
{

std::string_view to_string(PowerState p)
{
    switch (p)
    {
    case PowerState::PoweredOn:
        return "PoweredOn";
    case PowerState::Airplane:
        return "Airplane";
    case PowerState::PoweredOff:
        return "PoweredOff";
    }
    return "?";
}

std::string_view to_string(ContextSource s)
{
    switch (s)
    {
    case ContextSource::None:
        return "none";
    case ContextSource::Usim:
        return "usim";
    case ContextSource::Baseband:
        return "baseband";
    }
    return "?";
}

MobileEquipment::MobileEquipment(std::string name, MeConfig config, EventLog &events)
    : m_name(std::move(name)), m_config(std::move(config)), m_events(&events), m_rng(m_config.seed),
      m_session(usim::Origin::Baseband, m_name)
{
}

void MobileEquipment::insert_card(usim::CardImage card)
{
    if (m_card)
        fail(Errc::SlotOccupied, m_name + " already holds card " + m_card->iccid());
    m_events->record(m_name, "card_inserted", {{"iccid", card.iccid()}, {"power", std::string(to_string(m_power))}});
    m_card.emplace(std::move(card));
    m_session = usim::CardSession(usim::Origin::Baseband, m_name);
    if (m_power != PowerState::PoweredOn)
        m_slotEventPending = true;
}

usim::CardImage MobileEquipment::remove_card()
{
    if (!m_card)
        fail(Errc::SlotEmpty, m_name + " has no card");
    m_events->record(m_name, "card_removed", {{"iccid", m_card->iccid()}, {"power", std::string(to_string(m_power))}});

    if (m_power == PowerState::PoweredOn)
    {
        drop_baseband("card_removed_while_on");
        // the card is gone, so is the NAS session it anchored
        m_active.reset();
    }
    else
    {
        m_slotEventPending = true;
        if (m_config.slot_change_notification)
            drop_baseband("card_change_notified");
    }

    auto card = std::move(*m_card);
    m_card.reset();
    return card;
}

void MobileEquipment::power_on()
{
    if (m_power == PowerState::PoweredOn)
        return;
    enter_powered_on();
}

void MobileEquipment::power_off()
{
    if (m_active)
        deregister();
    m_power = PowerState::PoweredOff;
    m_events->record(m_name, "power", {{"state", "PoweredOff"}});
}

void MobileEquipment::set_airplane(bool on)
{
    if (m_power == PowerState::PoweredOff)
        fail(Errc::InvalidState, m_name + " is powered off");
    if (on)
    {
        if (m_power == PowerState::Airplane)
            return;
        if (m_active)
            deregister();
        m_power = PowerState::Airplane;
        m_events->record(m_name, "power", {{"state", "Airplane"}});
    }
    else if (m_power == PowerState::Airplane)
        enter_powered_on();
}

void MobileEquipment::enter_powered_on()
{
    m_power = PowerState::PoweredOn;
    m_events->record(m_name, "power", {{"state", "PoweredOn"}});

    if (m_baseband.entry)
    {
        const auto &entry = *m_baseband.entry;
        if (!m_card)
            drop_baseband("no_card_at_power_on");
        else if (m_card->supi() != entry.supi)
            drop_baseband("different_card_at_power_on");
        else if (m_config.iccid_binding && m_card->iccid() != entry.iccid)
            drop_baseband("iccid_mismatch_at_power_on");
    }
    m_slotEventPending = false;
}

void MobileEquipment::drop_baseband(std::string_view reason)
{
    if (!m_baseband.entry)
        return;
    m_events->record(m_name, "baseband_context_deleted",
                     {{"supi", m_baseband.entry->supi}, {"reason", std::string(reason)}});
    m_baseband.entry.reset();
}

bool MobileEquipment::baseband_context_usable(nas::Generation gen) const
{
    if (!m_baseband.entry || !m_card)
        return false;
    const auto &entry = *m_baseband.entry;
    if (entry.generation != gen || !entry.ctx.valid())
        return false;
    if (entry.supi != m_card->supi())
        return false;
    return !m_config.iccid_binding || entry.iccid == m_card->iccid();
}

std::optional<MobileEquipment::CachedContext> MobileEquipment::select_context(nas::Generation gen,
                                                                              ContextSource &source) const
{
    source = ContextSource::None;
    if (m_card->supports(gen))
    {
        auto files = m_card->load_context_files(gen);
        auto guti = nas::parse_loci(files.loci);
        auto ctx = nas::parse_context(files.nsc);
        if (guti && ctx && ctx->valid())
        {
            source = ContextSource::Usim;
            return CachedContext{*guti, *ctx};
        }
    }
    if (baseband_context_usable(gen))
    {
        source = ContextSource::Baseband;
        return CachedContext{m_baseband.entry->guti, m_baseband.entry->ctx};
    }
    return std::nullopt;
}

nas::MobileIdentity MobileEquipment::identity()
{
    auto supi = m_card->supi();
    if (m_config.supi_concealment)
        return {nas::MobileIdentity::Type::Suci, nas::conceal_supi(supi, m_config.home_network_key, m_rng.bytes(8))};
    return {nas::MobileIdentity::Type::Imsi, to_bytes(supi)};
}

RegistrationOutcome MobileEquipment::register_to(amf::Network &net, nas::Generation gen, const std::string &bs)
{
    if (m_power != PowerState::PoweredOn)
        fail(Errc::InvalidState, m_name + " is not powered on");
    if (!m_card)
        fail(Errc::NoCard, m_name + " has no card");
    if (m_active)
        fail(Errc::InvalidState, m_name + " is already registered");

    net.join(m_name);
    auto trace_start = net.link().trace().log().size();

    RegistrationOutcome out;
    out.generation = gen;
    out.bs = bs;

    std::optional<nas::NasMessage> reply;
    nas::SecurityContext ctx;
    crypto::NasKeys keys;

    auto cached = select_context(gen, out.source);
    if (cached)
    {
        ctx = cached->ctx;
        keys = crypto::derive_nas_keys(ctx.k_amf);
        ctx.ul_count++;

        nas::RegistrationRequestFast req;
        req.ies = {cached->guti, ctx.ngksi, ctx.ul_count};
        auto ies = req.ies.encode();
        req.container = crypto::senc(ies, keys.enc);
        req.mac = crypto::mac_compute(ies, req.container, keys.integrity);

        auto fields = message_key_fields(req);
        fields.emplace_back("ue", m_name);
        fields.emplace_back("iccid", m_card->iccid());
        fields.emplace_back("supi", m_card->supi());
        fields.emplace_back("source", std::string(to_string(out.source)));
        m_events->record(m_name, std::string(event::kUeInit), std::move(fields));

        out.fast_attempted = true;
        reply = net.transact(m_name, bs, std::move(req));
    }
    else
    {
        reply = net.transact(m_name, bs, nas::RegistrationRequestInitial{identity(), m_config.ue_sec_caps});
    }

    while (reply)
    {
        auto &msg = *reply;
        if (auto *acc = std::get_if<nas::RegistrationAccept>(&msg))
        {
            auto plain = crypto::sdec(acc->ciphered, keys.enc);
            auto payload = plain ? nas::decode_accept_payload(*plain) : std::nullopt;
            if (!payload || !(payload->second > ctx.dl_count))
            {
                out.reject_cause = "accept failed downlink protection";
                break;
            }
            ctx.dl_count = payload->second;
            out.accepted = true;
            out.guti = payload->first;
            m_active = Active{&net, bs, gen, payload->first, ctx};
            break;
        }
        else if (std::holds_alternative<nas::IdentityRequest>(msg))
        {
            out.fell_back = out.fast_attempted;
            reply = net.transact(m_name, bs, nas::IdentityResponse{identity(), m_config.ue_sec_caps});
        }
        else if (auto *req = std::get_if<nas::AuthRequest>(&msg))
        {
            out.fell_back = out.fast_attempted;
            out.aka_ran = true;
            auto resp = m_card->execute(m_session, usim::Apdu::authenticate(req->rand, req->autn));
            auto aka = resp.ok() ? usim::decode_aka_response(resp.payload) : std::nullopt;
            if (!aka)
            {
                m_events->record(m_name, "usim_auth_failure", {{"iccid", m_card->iccid()}});
                reply = net.transact(m_name, bs, nas::AuthFailure{});
                continue;
            }
            ctx = nas::SecurityContext{crypto::derive_kamf(aka->ck, aka->ik), req->ngksi, m_config.ue_sec_caps, 0, 0};
            keys = crypto::derive_nas_keys(ctx.k_amf);
            reply = net.transact(m_name, bs, nas::AuthResponse{aka->res});
        }
        else if (auto *smc = std::get_if<nas::SecurityModeCommand>(&msg))
        {
            if (!out.aka_ran || smc->ngksi != ctx.ngksi ||
                !crypto::mac_verify(smc->protected_part(), {}, keys.integrity, smc->mac))
            {
                out.reject_cause = "security mode command failed integrity check";
                break;
            }
            auto mac = crypto::mac_compute(nas::smc_complete_ies(ctx.ngksi), {}, keys.integrity);
            reply = net.transact(m_name, bs, nas::SecurityModeComplete{mac});
        }
        else if (std::holds_alternative<nas::AuthReject>(msg))
        {
            out.reject_cause = "authentication rejected";
            break;
        }
        else if (auto *rej = std::get_if<nas::RegistrationReject>(&msg))
        {
            out.reject_cause = rej->cause;
            break;
        }
        else
        {
            out.reject_cause = "unexpected " + nas::message_type(msg);
            break;
        }
    }
    if (!reply && out.reject_cause.empty())
        out.reject_cause = "no response from network";

    const auto &log = net.link().trace().log();
    out.trace.assign(log.begin() + static_cast<std::ptrdiff_t>(trace_start), log.end());

    m_events->record(m_name, "registration_result",
                     {{"accepted", out.accepted ? "1" : "0"},
                      {"fast", out.fast_attempted ? "1" : "0"},
                      {"aka", out.aka_ran ? "1" : "0"},
                      {"source", std::string(to_string(out.source))},
                      {"generation", std::string(nas::to_string(gen))}});
    return out;
}

void MobileEquipment::deregister()
{
    if (!m_active)
        fail(Errc::NotRegistered, m_name + " is not registered");
    auto active = std::move(*m_active);
    m_active.reset();

    active.net->transact(m_name, active.bs, nas::Deregistration{active.guti, active.ctx.ngksi});

    if (!m_card)
        return;
    if (m_card->supports(active.gen))
    {
        m_card->store_context_files(nas::serialize_loci(active.guti), nas::serialize_context(active.ctx), active.gen);
        if (m_baseband.entry && m_baseband.entry->generation == active.gen)
            drop_baseband("superseded_by_usim");
        m_events->record(m_name, "context_persisted", {{"location", "usim"}, {"iccid", m_card->iccid()}});
    }
    else
    {
        m_baseband.entry = StoredContext{m_card->supi(), m_card->iccid(), active.gen, active.guti, active.ctx};
        m_events->record(m_name, "context_persisted", {{"location", "baseband"}, {"supi", m_card->supi()}});
    }
}

} // namespace ctxsim::me
