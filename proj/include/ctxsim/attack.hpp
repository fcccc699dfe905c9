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
#include <string>
#include <string_view>
#include <vector>

#include "ctxsim/amf.hpp"
#include "ctxsim/events.hpp"
#include "ctxsim/mobile_equipment.hpp"
#include "ctxsim/profile.hpp"
#include "ctxsim/radio_link.hpp"
#include "ctxsim/usim.hpp"

namespace ctxsim::attack
{

inline const std::string kBsA = "BS-A";
inline const std::string kBsB = "BS-B";

/// One simulated world: a clock, the channel, the AMF and the phones.
class Simulation
{
  public:
    Simulation(profile::Setup setup, std::uint64_t seed);
    Simulation(const Simulation &) = delete;
    Simulation &operator=(const Simulation &) = delete;

    const profile::Setup &setup() const
    {
        return m_setup;
    }
    std::uint64_t seed() const
    {
        return m_seed;
    }
    SimClock &clock()
    {
        return m_clock;
    }
    EventLog &events()
    {
        return m_events;
    }
    radio::RadioLink &link()
    {
        return m_link;
    }
    amf::Amf &amf()
    {
        return m_amf;
    }
    amf::Network &network()
    {
        return m_net;
    }
    /// Passive sniffer attached before anything is sent.
    const radio::ChannelTap &air_tap() const
    {
        return *m_airTap;
    }

    /// Issues an operator card for `supi` per the setup and provisions the
    /// subscriber at the AMF.
    usim::CardImage issue_card(const std::string &supi);
    /// Throws InvalidArgument for a duplicate name.
    me::MobileEquipment &add_phone(const std::string &name);
    me::MobileEquipment &phone(const std::string &name);

    std::uint64_t draw()
    {
        return m_rng.next_u64();
    }

  private:
    profile::Setup m_setup;
    std::uint64_t m_seed;
    Rng m_rng;
    SimClock m_clock;
    EventLog m_events;
    radio::RadioLink m_link;
    const radio::ChannelTap *m_airTap;
    crypto::Key m_homeNetworkKey;
    amf::Amf m_amf;
    amf::Network m_net;
    std::deque<me::MobileEquipment> m_phones;
    unsigned m_cardsIssued = 0;
};

/// Public data the attacker starts from.
struct Knowledge
{
    std::vector<std::string> default_pins;
    std::optional<std::string> victim_supi;
};

struct ExtractedFiles
{
    nas::Generation generation = nas::Generation::G4;
    Bytes imsi;
    Bytes loci;
    Bytes nsc;
};

/// One piece of data held by the kit and how it got there: "apdu" (read
/// from a card), "air" (sniffed), "public" (starting knowledge) or "own"
/// (made up by the attacker).
struct KitItem
{
    std::string origin;
    std::string label;
    Bytes bytes;
};

class AttackerKit
{
  public:
    AttackerKit(Knowledge known, const radio::ChannelTap &tap, me::MobileEquipment &own_me, std::uint64_t seed);

    const Knowledge &knowledge() const
    {
        return m_known;
    }
    const radio::ChannelTap &tap() const
    {
        return *m_tap;
    }
    me::MobileEquipment &own_me()
    {
        return *m_own;
    }

    /// Reader-origin session; malware and SIM stickers go through the same
    /// path under another label.
    usim::CardSession card_reader(std::string label = "card-reader") const;

    /// Reads IMSI plus the LOCI/NSC pair for `gen`, verifying `pin_guess`
    /// first when the card asks for it. Throws AccessDenied.
    ExtractedFiles card_reader_extract(usim::CardImage &card, std::string_view pin_guess,
                                       nas::Generation gen = nas::Generation::G4);

    /// A programmable card with a random key and the given files.
    usim::CardImage program_fake_card(usim::FileMap files, const std::string &supi);

    /// Everything the kit has laid hands on.
    std::vector<KitItem> inventory() const;

  private:
    Knowledge m_known;
    const radio::ChannelTap *m_tap;
    me::MobileEquipment *m_own;
    Rng m_rng;
    std::vector<KitItem> m_loot;
};

/// Fake-card file set carrying extracted bodies.
usim::FileMap fake_files(const ExtractedFiles &loot);

enum class ScenarioId
{
    UsimImpersonation,
    BasebandImpersonation,
    OneTapBypass,
    LocationSpoof,
};

// "s1", "s2", "one-tap", "location"
std::string_view to_string(ScenarioId id);
std::optional<ScenarioId> parse_scenario(std::string_view text);

struct Evidence
{
    std::string failure;
    std::string extraction = "n/a";
    std::string supi_source = "n/a";
    // fast | aka | rejected | none
    std::string path = "none";
    bool accepted = false;
    bool aka_ran = false;
    bool fell_back = false;
    unsigned attempts = 0;
    std::size_t amf_verify_events = 0;
    std::size_t unmatched_verifies = 0;
    bool agreement_holds = true;
    // an amf_verify for the victim inside the attack window with no ue_init
    // from the victim's equipment
    bool agreement_witness = false;
    bool victim_passive = true;
    std::string victim_bs;
    std::optional<std::string> token_supi;
    std::optional<std::string> location;
    std::optional<std::uint64_t> context_age;
    std::string reconnect = "n/a";
};

struct AttackReport
{
    ScenarioId scenario = ScenarioId::UsimImpersonation;
    std::string profile;
    std::vector<std::string> countermeasures;
    std::uint64_t seed = 0;
    bool succeeded = false;
    std::string victim_supi;
    std::string victim_endpoint;
    std::string attacker_endpoint;
    std::uint64_t window_start = 0;
    std::uint64_t window_end = 0;
    Evidence evidence;
    // signaling trace of the whole run
    std::vector<std::string> trace;

    std::vector<nas::Field> fields() const;
    // key=value lines in a fixed order
    std::string format() const;
};

struct S1Options
{
    // honest fast re-registrations after the card was read
    unsigned victim_reregistrations = 0;
    // refresh a stale GUTI from the air and retry once
    bool sniff = true;
    // idle steps between extraction and the attacker's registration
    std::uint64_t attack_delay = 0;
    // victim comes back online after the attacker was accepted
    bool victim_reconnects = false;
};

enum class SwapState
{
    Airplane,
    PoweredOff,
    PoweredOn,
};

std::string_view to_string(SwapState s);
std::optional<SwapState> parse_swap_state(std::string_view text);

struct S2Options
{
    SwapState swap = SwapState::Airplane;
    std::uint64_t attack_delay = 0;
    bool victim_reconnects = false;
};

AttackReport scenario_usim_impersonation(Simulation &sim, const std::string &victim_supi, const S1Options &opt = {});
AttackReport scenario_baseband_impersonation(Simulation &sim, const std::string &victim_supi,
                                             const S2Options &opt = {});
/// Both throw PrerequisiteFailed unless `base` succeeded in `sim`.
AttackReport scenario_one_tap_bypass(Simulation &sim, const AttackReport &base);
AttackReport scenario_location_spoof(Simulation &sim, const AttackReport &base);

struct RunSpec
{
    profile::Setup setup = profile::make_setup(profile::builtin_profiles().front(), {});
    std::uint64_t seed = 1;
    ScenarioId attack = ScenarioId::BasebandImpersonation;
    // impersonation run underneath one-tap / location
    ScenarioId base = ScenarioId::BasebandImpersonation;
    std::string victim_supi = "001010123456789";
    // honest subscribers registered at BS-A before the victim
    std::vector<std::string> bystanders;
    S1Options s1;
    S2Options s2;
};

struct RunResult
{
    AttackReport report;
    std::string trace;
    std::string events;
};

/// Builds a fresh simulation and runs one scenario. A failed base attack
/// under one-tap/location is reported, not thrown.
RunResult run(const RunSpec &spec);

struct MatrixRow
{
    std::string profile;
    bool usim_vulnerable = false;
    bool baseband_vulnerable = false;
    bool impersonation = false;
    bool auth_bypass = false;
    bool location_spoofing = false;

    bool operator==(const MatrixRow &) const = default;
};

std::vector<MatrixRow> run_matrix(const std::vector<profile::OperatorProfile> &profiles,
                                  const profile::Countermeasures &cm, std::uint64_t seed);
std::string format_matrix(const std::vector<MatrixRow> &rows);

} // namespace ctxsim::attack
