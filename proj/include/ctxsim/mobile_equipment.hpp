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

#include <optional>
#include <string>
#include <vector>

#include "ctxsim/amf.hpp"
#include "ctxsim/events.hpp"
#include "ctxsim/nas.hpp"
#include "ctxsim/radio_link.hpp"
#include "ctxsim/usim.hpp"

namespace ctxsim::me
{

enum class PowerState
{
    PoweredOn,
    Airplane,
    PoweredOff,
};

std::string_view to_string(PowerState p);

/// A security context parked in the baseband's non-volatile memory, keyed
/// by the permanent identity of the card that created it.
struct StoredContext
{
    std::string supi;
    // only consulted when ICCID binding is on
    std::string iccid;
    nas::Generation generation = nas::Generation::G5;
    nas::Guti guti;
    nas::SecurityContext ctx;

    bool operator==(const StoredContext &) const = default;
};

struct BasebandStore
{
    std::optional<StoredContext> entry;
};

struct MeConfig
{
    // also compare the card serial before trusting a baseband context
    bool iccid_binding = false;
    // the baseband learns of card changes even while not powered on
    bool slot_change_notification = false;
    bool supi_concealment = false;
    crypto::Key home_network_key{{}, crypto::KeyKind::Permanent};
    std::vector<std::uint8_t> ue_sec_caps = nas::default_ue_capabilities();
    std::uint64_t seed = 0;
};

enum class ContextSource
{
    None,
    Usim,
    Baseband,
};

std::string_view to_string(ContextSource s);

struct RegistrationOutcome
{
    nas::Generation generation = nas::Generation::G5;
    std::string bs;
    bool accepted = false;
    // the UE opened with a fast request built from a cached context
    bool fast_attempted = false;
    ContextSource source = ContextSource::None;
    // fast request answered with identity/AKA instead of an accept
    bool fell_back = false;
    bool aka_ran = false;
    std::optional<nas::Guti> guti;
    std::string reject_cause;
    std::vector<radio::Observation> trace;

    bool fast_accepted() const
    {
        return accepted && fast_attempted && !aka_ran;
    }
};

class MobileEquipment
{
  public:
    MobileEquipment(std::string name, MeConfig config, EventLog &events);

    const std::string &name() const
    {
        return m_name;
    }
    const MeConfig &config() const
    {
        return m_config;
    }
    PowerState power() const
    {
        return m_power;
    }
    bool has_card() const
    {
        return m_card.has_value();
    }
    const usim::CardImage *card() const
    {
        return m_card ? &*m_card : nullptr;
    }
    usim::CardImage *card()
    {
        return m_card ? &*m_card : nullptr;
    }
    const BasebandStore &baseband() const
    {
        return m_baseband;
    }
    bool slot_event_pending() const
    {
        return m_slotEventPending;
    }
    bool registered() const
    {
        return m_active.has_value();
    }
    /// Context in use while registered.
    const nas::SecurityContext *active_context() const
    {
        return m_active ? &m_active->ctx : nullptr;
    }

    /// Throws SlotOccupied.
    void insert_card(usim::CardImage card);
    /// Throws SlotEmpty. Removal while PoweredOn wipes the baseband entry;
    /// in Airplane or PoweredOff the baseband does not notice.
    usim::CardImage remove_card();

    void power_on();
    void power_off();
    /// Throws InvalidState when the device is PoweredOff.
    void set_airplane(bool on);

    /// True when the baseband entry may be used with the inserted card.
    bool baseband_context_usable(nas::Generation gen) const;

    /// Throws InvalidState unless PoweredOn and idle, NoCard without a card.
    RegistrationOutcome register_to(amf::Network &net, nas::Generation gen, const std::string &bs);
    /// Throws NotRegistered.
    void deregister();

  private:
    struct Active
    {
        amf::Network *net = nullptr;
        std::string bs;
        nas::Generation gen = nas::Generation::G5;
        nas::Guti guti;
        nas::SecurityContext ctx;
    };

    struct CachedContext
    {
        nas::Guti guti;
        nas::SecurityContext ctx;
    };

    void enter_powered_on();
    void drop_baseband(std::string_view reason);
    std::optional<CachedContext> select_context(nas::Generation gen, ContextSource &source) const;
    nas::MobileIdentity identity();

    std::string m_name;
    MeConfig m_config;
    EventLog *m_events;
    Rng m_rng;
    PowerState m_power = PowerState::PoweredOff;
    std::optional<usim::CardImage> m_card;
    usim::CardSession m_session;
    BasebandStore m_baseband;
    bool m_slotEventPending = false;
    std::optional<Active> m_active;
};

} // namespace ctxsim::me
