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

#include "ctxsim/attack.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ctxsim/error.hpp"

namespace ctxsim::attack
{

namespace
{

crypto::Key random_key(Rng &rng)
{
    return crypto::Key::from(rng.bytes(crypto::kKeyLength), crypto::KeyKind::Permanent);
}

std::string random_iccid(Rng &rng, std::string_view prefix)
{
    return std::string(prefix) + rng.digits(19 - prefix.size());
}

const char *yn(bool b)
{
    return b ? "true" : "false";
}

std::string join(const std::vector<std::string> &items, std::string_view sep)
{
    std::string out;
    for (const auto &s : items)
    {
        if (!out.empty())
            out += sep;
        out += s;
    }
    return out;
}

} // namespace

Simulation::Simulation(profile::Setup setup, std::uint64_t seed)
    : m_setup(std::move(setup)), m_seed(seed), m_rng(seed), m_clock(), m_events(m_clock), m_link(m_clock),
      m_airTap(&m_link.attach_tap()), m_homeNetworkKey(random_key(m_rng)),
      m_amf(
          [&] {
              amf::AmfConfig c;
              c.fast_registration_enabled = m_setup.fast_registration_enabled;
              c.periodic_aka_interval = m_setup.periodic_aka_interval;
              c.home_network_key = m_homeNetworkKey;
              c.seed = m_rng.next_u64();
              return c;
          }(),
          m_clock, m_events),
      m_net(m_link, m_amf)
{
}

usim::CardImage Simulation::issue_card(const std::string &supi)
{
    auto key = random_key(m_rng);
    m_amf.add_subscriber(supi, key);
    const auto &p = m_setup.profile;
    usim::PinState pin(m_setup.victim_pin, m_setup.pin_enabled, p.pin_retry_limit);
    m_cardsIssued++;
    auto iccid = random_iccid(m_rng, "8986");
    m_events.record("operator", "card_issued", {{"supi", supi}, {"iccid", iccid}});
    return usim::CardImage::issue(std::move(iccid), supi, key, std::move(pin),
                                  m_setup.card_supports_5g_context, m_setup.card_hardened);
}

me::MobileEquipment &Simulation::add_phone(const std::string &name)
{
    for (const auto &p : m_phones)
        if (p.name() == name)
            fail(Errc::InvalidArgument, "duplicate phone " + name);
    me::MeConfig c;
    c.iccid_binding = m_setup.iccid_binding;
    c.slot_change_notification = m_setup.slot_notification;
    c.supi_concealment = m_setup.supi_concealment;
    c.home_network_key = m_homeNetworkKey;
    c.seed = m_rng.next_u64();
    return m_phones.emplace_back(name, std::move(c), m_events);
}

me::MobileEquipment &Simulation::phone(const std::string &name)
{
    for (auto &p : m_phones)
        if (p.name() == name)
            return p;
    fail(Errc::InvalidArgument, "no phone named " + name);
}

AttackerKit::AttackerKit(Knowledge known, const radio::ChannelTap &tap, me::MobileEquipment &own_me,
                         std::uint64_t seed)
    : m_known(std::move(known)), m_tap(&tap), m_own(&own_me), m_rng(seed)
{
}

usim::CardSession AttackerKit::card_reader(std::string label) const
{
    return usim::CardSession(usim::Origin::Reader, std::move(label));
}

ExtractedFiles AttackerKit::card_reader_extract(usim::CardImage &card, std::string_view pin_guess,
                                                nas::Generation gen)
{
    auto session = card_reader();
    auto imsi = card.execute(session, usim::Apdu::read(usim::file::kImsi));
    if (imsi.status == usim::Status::SecurityNotSatisfied)
    {
        auto v = card.execute(session, usim::Apdu::verify_pin(pin_guess));
        if (!v.ok())
            fail(Errc::AccessDenied, "PIN " + std::string(pin_guess) + " refused: " + std::string(to_string(v.status)));
        imsi = card.execute(session, usim::Apdu::read(usim::file::kImsi));
    }
    if (!imsi.ok())
        fail(Errc::AccessDenied, "read 6F07: " + std::string(to_string(imsi.status)));

    ExtractedFiles out;
    out.generation = gen;
    out.imsi = imsi.payload;
    auto loci_id = gen == nas::Generation::G5 ? usim::file::k5gsLoci : usim::file::kEpsLoci;
    auto nsc_id = gen == nas::Generation::G5 ? usim::file::k5gsNsc : usim::file::kEpsNsc;
    for (auto [id, target] : {std::pair{loci_id, &out.loci}, std::pair{nsc_id, &out.nsc}})
    {
        auto r = card.execute(session, usim::Apdu::read(id));
        if (!r.ok())
            fail(Errc::AccessDenied, "read " + id.to_string() + ": " + std::string(to_string(r.status)));
        *target = r.payload;
    }
    m_loot.push_back({"apdu", "6F07", out.imsi});
    m_loot.push_back({"apdu", loci_id.to_string(), out.loci});
    m_loot.push_back({"apdu", nsc_id.to_string(), out.nsc});
    return out;
}

usim::CardImage AttackerKit::program_fake_card(usim::FileMap files, const std::string &supi)
{
    auto key = random_key(m_rng);
    m_loot.push_back({"own", "fake_card_key", Bytes(key.bytes.begin(), key.bytes.end())});
    bool has5g = files.contains(usim::file::k5gsLoci) && files.contains(usim::file::k5gsNsc);
    usim::PinState pin("0000", false);
    return usim::CardImage(random_iccid(m_rng, "8999"), supi, key, std::move(files), std::move(pin), 0, has5g, true);
}

std::vector<KitItem> AttackerKit::inventory() const
{
    std::vector<KitItem> out;
    for (const auto &pin : m_known.default_pins)
        out.push_back({"public", "default_pin", to_bytes(pin)});
    if (m_known.victim_supi)
        out.push_back({"public", "victim_supi", to_bytes(*m_known.victim_supi)});
    for (const auto &obs : m_tap->log())
        out.push_back({"air", obs.type, to_bytes(obs.tap_line())});
    out.insert(out.end(), m_loot.begin(), m_loot.end());
    return out;
}

usim::FileMap fake_files(const ExtractedFiles &loot)
{
    usim::FileMap files;
    files[usim::file::kImsi] = {usim::context_file_rule(usim::file::kImsi, false), loot.imsi};
    bool g5 = loot.generation == nas::Generation::G5;
    files[g5 ? usim::file::k5gsLoci : usim::file::kEpsLoci] = {{usim::Access::Pin, usim::Access::Pin}, loot.loci};
    files[g5 ? usim::file::k5gsNsc : usim::file::kEpsNsc] = {{usim::Access::Pin, usim::Access::Pin}, loot.nsc};
    return files;
}

std::string_view to_string(ScenarioId id)
{
    switch (id)
    {
    case ScenarioId::UsimImpersonation:
        return "s1";
    case ScenarioId::BasebandImpersonation:
        return "s2";
    case ScenarioId::OneTapBypass:
        return "one-tap";
    case ScenarioId::LocationSpoof:
        return "location";
    }
    return "?";
}

std::optional<ScenarioId> parse_scenario(std::string_view text)
{
    for (auto id : {ScenarioId::UsimImpersonation, ScenarioId::BasebandImpersonation, ScenarioId::OneTapBypass,
                    ScenarioId::LocationSpoof})
        if (to_string(id) == text)
            return id;
    return std::nullopt;
}

std::string_view to_string(SwapState s)
{
    switch (s)
    {
    case SwapState::Airplane:
        return "airplane";
    case SwapState::PoweredOff:
        return "off";
    case SwapState::PoweredOn:
        return "on";
    }
    return "?";
}

std::optional<SwapState> parse_swap_state(std::string_view text)
{
    for (auto s : {SwapState::Airplane, SwapState::PoweredOff, SwapState::PoweredOn})
        if (to_string(s) == text)
            return s;
    return std::nullopt;
}

std::vector<nas::Field> AttackReport::fields() const
{
    const auto &e = evidence;
    auto opt = [](const std::optional<std::string> &v) { return v.value_or("-"); };
    return {
        {"scenario", std::string(to_string(scenario))},
        {"profile", profile},
        {"countermeasures", countermeasures.empty() ? "none" : join(countermeasures, ",")},
        {"seed", std::to_string(seed)},
        {"succeeded", yn(succeeded)},
        {"victim_supi", victim_supi},
        {"victim_endpoint", victim_endpoint.empty() ? "-" : victim_endpoint},
        {"attacker_endpoint", attacker_endpoint.empty() ? "-" : attacker_endpoint},
        {"window", std::to_string(window_start) + "-" + std::to_string(window_end)},
        {"failure", e.failure.empty() ? "-" : e.failure},
        {"extraction", e.extraction},
        {"supi_source", e.supi_source},
        {"path", e.path},
        {"accepted", yn(e.accepted)},
        {"aka_ran", yn(e.aka_ran)},
        {"fell_back", yn(e.fell_back)},
        {"attempts", std::to_string(e.attempts)},
        {"amf_verify_events", std::to_string(e.amf_verify_events)},
        {"unmatched_verifies", std::to_string(e.unmatched_verifies)},
        {"agreement_holds", yn(e.agreement_holds)},
        {"agreement_witness", yn(e.agreement_witness)},
        {"victim_passive", yn(e.victim_passive)},
        {"victim_bs", e.victim_bs.empty() ? "-" : e.victim_bs},
        {"token_supi", opt(e.token_supi)},
        {"location", opt(e.location)},
        {"context_age", e.context_age ? std::to_string(*e.context_age) : "-"},
        {"reconnect", e.reconnect},
        {"trace_lines", std::to_string(trace.size())},
    };
}

std::string AttackReport::format() const
{
    std::string out;
    for (const auto &[k, v] : fields())
        out += k + "=" + v + "\n";
    return out;
}

namespace
{

AttackReport new_report(const Simulation &sim, ScenarioId id, const std::string &supi)
{
    AttackReport r;
    r.scenario = id;
    r.profile = sim.setup().profile.name;
    r.countermeasures = sim.setup().countermeasures.enabled();
    r.seed = sim.seed();
    r.victim_supi = supi;
    return r;
}

Knowledge public_knowledge(const Simulation &sim)
{
    return Knowledge{{sim.setup().profile.default_pin}, std::nullopt};
}

void require_registered(const me::RegistrationOutcome &out, const std::string &who)
{
    if (!out.accepted)
        fail(Errc::InvalidState, who + " could not register: " + out.reject_cause);
}

void snapshot_trace(Simulation &sim, AttackReport &r)
{
    r.trace.clear();
    for (const auto &obs : sim.link().trace().log())
        r.trace.push_back(obs.trace_line());
}

/// Fills the outcome-dependent evidence and the verdict. `genuine_iccid`
/// identifies the victim's equipment; `victim_endpoints` are phones that
/// must stay silent during the window.
void evaluate(Simulation &sim, AttackReport &r, const me::RegistrationOutcome &out, const std::string &genuine_iccid,
              const std::set<std::string> &victim_endpoints)
{
    auto &e = r.evidence;
    e.accepted = out.accepted;
    e.aka_ran = out.aka_ran;
    e.fell_back = out.fell_back;
    if (out.fast_accepted())
        e.path = "fast";
    else if (out.aka_ran)
        e.path = "aka";
    else
        e.path = "rejected";

    auto in_window = [&](std::uint64_t step) { return step >= r.window_start && step <= r.window_end; };

    auto agreement = check_injective_agreement(
        sim.events(), [&](const Event &init) { return init.field("iccid") == genuine_iccid; });
    e.amf_verify_events = agreement.matches.size();
    e.unmatched_verifies = agreement.unmatched();
    e.agreement_holds = agreement.holds();
    const Event *witness = nullptr;
    for (const auto &m : agreement.matches)
        if (!m.init && in_window(m.verify->step) && m.verify->field("supi") == r.victim_supi)
            witness = m.verify;
    e.agreement_witness = witness != nullptr;

    e.victim_passive = true;
    for (const auto &obs : sim.link().trace().log())
        if (in_window(obs.step) && victim_endpoints.contains(obs.from))
            e.victim_passive = false;
    for (const auto *init : sim.events().named(event::kUeInit))
        if (in_window(init->step) && init->field("iccid") == genuine_iccid)
            e.victim_passive = false;

    if (witness)
    {
        for (const auto &[key, entry] : sim.amf().contexts())
            if (entry.supi == r.victim_supi)
                e.context_age = witness->step - entry.established_at;
    }

    r.succeeded = out.fast_accepted() && e.agreement_witness && e.victim_passive;
    if (!r.succeeded && e.failure.empty())
    {
        if (out.aka_ran)
            e.failure = "aka_required";
        else if (!out.accepted)
            e.failure = "registration_rejected: " + out.reject_cause;
        else if (!e.victim_passive)
            e.failure = "victim_active";
        else
            e.failure = "no_agreement_violation";
    }
}

std::string describe_reconnect(Simulation &sim, const AttackReport &r, const me::RegistrationOutcome &out)
{
    auto session = sim.amf().session(r.victim_supi);
    std::string holder = "none";
    if (session && session->state == amf::SessionState::Registered)
        holder = session->endpoint == r.attacker_endpoint ? "attacker" : "victim";
    std::string path = out.fast_accepted() ? "fast" : out.aka_ran ? "aka" : "rejected";
    return "victim_path:" + path + ";session_holder:" + holder;
}

} // namespace

AttackReport scenario_usim_impersonation(Simulation &sim, const std::string &victim_supi, const S1Options &opt)
{
    constexpr auto g4 = nas::Generation::G4;
    auto r = new_report(sim, ScenarioId::UsimImpersonation, victim_supi);
    auto &net = sim.network();
    auto &victim = sim.add_phone("victim-ue");
    auto &attacker = sim.add_phone("attacker-ue");
    r.victim_endpoint = victim.name();
    r.attacker_endpoint = attacker.name();
    r.evidence.victim_bs = kBsA;

    auto genuine = sim.issue_card(victim_supi);
    const auto genuine_iccid = genuine.iccid();
    victim.insert_card(std::move(genuine));
    victim.power_on();
    require_registered(victim.register_to(net, g4, kBsA), "victim");
    // deregistration writes the context into 6FE3/6FE4
    victim.set_airplane(true);

    AttackerKit kit(public_knowledge(sim), sim.air_tap(), attacker, sim.draw());
    auto card = victim.remove_card();
    std::optional<ExtractedFiles> loot;
    try
    {
        loot = kit.card_reader_extract(card, kit.knowledge().default_pins.front());
        r.evidence.extraction = "ok";
    }
    catch (const Error &err)
    {
        if (err.code() != Errc::AccessDenied)
            throw;
        r.evidence.extraction = "access_denied";
        r.evidence.failure = err.what();
    }
    victim.insert_card(std::move(card));

    for (unsigned i = 0; i < opt.victim_reregistrations; i++)
    {
        victim.set_airplane(false);
        require_registered(victim.register_to(net, g4, kBsA), "victim");
        victim.set_airplane(true);
    }

    if (!loot)
    {
        r.window_start = r.window_end = sim.clock().now();
        snapshot_trace(sim, r);
        return r;
    }

    sim.clock().advance(opt.attack_delay);
    r.window_start = sim.clock().now() + 1;

    auto supi = to_text(loot->imsi);
    attacker.insert_card(kit.program_fake_card(fake_files(*loot), supi));
    attacker.power_on();
    auto out = attacker.register_to(net, g4, kBsB);
    r.evidence.attempts = 1;

    if (!out.fast_accepted() && opt.sniff)
    {
        auto stored_guti = nas::parse_loci(loot->loci);
        std::optional<radio::SniffedIdentity> seen;
        try
        {
            seen = radio::sniff_latest_identity(kit.tap(), victim.name());
        }
        catch (const Error &err)
        {
            if (err.code() != Errc::NotObserved)
                throw;
        }
        auto ctx = nas::parse_context(loot->nsc);
        if (seen && ctx && stored_guti && seen->guti != *stored_guti)
        {
            // the GUTI changed since extraction; rewrite the fake card with
            // what went over the air
            ctx->ngksi = seen->ngksi;
            ctx->ul_count = std::max(ctx->ul_count, seen->ul_count.value_or(0));
            loot->loci = nas::serialize_loci(seen->guti);
            loot->nsc = nas::serialize_context(*ctx);
            attacker.set_airplane(true);
            attacker.remove_card();
            attacker.insert_card(kit.program_fake_card(fake_files(*loot), supi));
            attacker.set_airplane(false);
            out = attacker.register_to(net, g4, kBsB);
            r.evidence.attempts = 2;
        }
    }
    r.window_end = sim.clock().now();
    evaluate(sim, r, out, genuine_iccid, {victim.name()});

    if (opt.victim_reconnects)
    {
        victim.set_airplane(false);
        auto back = victim.register_to(net, g4, kBsA);
        r.evidence.reconnect = describe_reconnect(sim, r, back);
    }
    snapshot_trace(sim, r);
    return r;
}

AttackReport scenario_baseband_impersonation(Simulation &sim, const std::string &victim_supi, const S2Options &opt)
{
    constexpr auto g5 = nas::Generation::G5;
    auto r = new_report(sim, ScenarioId::BasebandImpersonation, victim_supi);
    auto &net = sim.network();
    // the victim's handset; it ends up in the attacker's hands
    auto &handset = sim.add_phone("handset");
    r.attacker_endpoint = handset.name();
    r.evidence.victim_bs = kBsA;

    auto genuine = sim.issue_card(victim_supi);
    const auto genuine_iccid = genuine.iccid();
    handset.insert_card(std::move(genuine));
    handset.power_on();
    require_registered(handset.register_to(net, g5, kBsA), "victim");
    // the card has no 5G context files, so this parks the context in the baseband
    handset.set_airplane(true);

    Knowledge known = public_knowledge(sim);
    known.victim_supi = radio::sniff_imsi(sim.air_tap(), handset.name());
    AttackerKit kit(std::move(known), sim.air_tap(), handset, sim.draw());
    if (!kit.knowledge().victim_supi)
    {
        r.evidence.supi_source = "unavailable";
        r.evidence.failure = "victim SUPI not observable";
        r.window_start = r.window_end = sim.clock().now();
        snapshot_trace(sim, r);
        return r;
    }
    r.evidence.supi_source = "sniffed_imsi";

    sim.clock().advance(opt.attack_delay);
    r.window_start = sim.clock().now() + 1;

    if (opt.swap == SwapState::PoweredOff)
        handset.power_off();
    else if (opt.swap == SwapState::PoweredOn)
        handset.set_airplane(false);
    auto victim_card = handset.remove_card();
    handset.insert_card(kit.program_fake_card({}, *kit.knowledge().victim_supi));
    if (opt.swap == SwapState::PoweredOff)
        handset.power_on();
    else if (opt.swap == SwapState::Airplane)
        handset.set_airplane(false);

    auto out = handset.register_to(net, g5, kBsB);
    r.evidence.attempts = 1;
    r.window_end = sim.clock().now();
    evaluate(sim, r, out, genuine_iccid, {});

    if (opt.victim_reconnects)
    {
        // the victim puts the genuine card into another phone
        auto &spare = sim.add_phone("victim-ue");
        r.victim_endpoint = spare.name();
        spare.insert_card(std::move(victim_card));
        spare.power_on();
        auto back = spare.register_to(net, g5, kBsA);
        r.evidence.reconnect = describe_reconnect(sim, r, back);
    }
    snapshot_trace(sim, r);
    return r;
}

namespace
{

AttackReport downstream(const AttackReport &base, ScenarioId id)
{
    if (!base.succeeded)
        fail(Errc::PrerequisiteFailed,
             "base scenario " + std::string(to_string(base.scenario)) + " did not succeed");
    auto r = base;
    r.scenario = id;
    r.succeeded = false;
    r.evidence.failure.clear();
    return r;
}

} // namespace

AttackReport scenario_one_tap_bypass(Simulation &sim, const AttackReport &base)
{
    auto r = downstream(base, ScenarioId::OneTapBypass);
    try
    {
        auto token = sim.amf().one_tap_token(base.attacker_endpoint);
        r.evidence.token_supi = token.supi;
        r.succeeded = token.supi == base.victim_supi;
        if (!r.succeeded)
            r.evidence.failure = "token bound to another subscriber";
    }
    catch (const Error &err)
    {
        if (err.code() != Errc::NotRegistered)
            throw;
        r.evidence.failure = err.what();
    }
    snapshot_trace(sim, r);
    return r;
}

AttackReport scenario_location_spoof(Simulation &sim, const AttackReport &base)
{
    auto r = downstream(base, ScenarioId::LocationSpoof);
    try
    {
        auto where = sim.amf().locate(base.victim_supi);
        r.evidence.location = where;
        r.succeeded = where == kBsB && where != base.evidence.victim_bs;
        if (!r.succeeded)
            r.evidence.failure = "network places the victim at " + where;
    }
    catch (const Error &err)
    {
        if (err.code() != Errc::NotRegistered)
            throw;
        r.evidence.failure = err.what();
    }
    snapshot_trace(sim, r);
    return r;
}

RunResult run(const RunSpec &spec)
{
    Simulation sim(spec.setup, spec.seed);

    unsigned n = 0;
    for (const auto &supi : spec.bystanders)
    {
        auto &phone = sim.add_phone("bystander-" + std::to_string(++n));
        phone.insert_card(sim.issue_card(supi));
        phone.power_on();
        require_registered(phone.register_to(sim.network(), nas::Generation::G5, kBsA), phone.name());
    }

    auto impersonate = [&](ScenarioId id) {
        if (id == ScenarioId::UsimImpersonation)
            return scenario_usim_impersonation(sim, spec.victim_supi, spec.s1);
        if (id == ScenarioId::BasebandImpersonation)
            return scenario_baseband_impersonation(sim, spec.victim_supi, spec.s2);
        fail(Errc::ConfigError, "base scenario must be s1 or s2");
    };

    AttackReport report;
    if (spec.attack == ScenarioId::UsimImpersonation || spec.attack == ScenarioId::BasebandImpersonation)
        report = impersonate(spec.attack);
    else
    {
        auto base = impersonate(spec.base);
        if (!base.succeeded)
        {
            report = base;
            report.scenario = spec.attack;
            report.evidence.failure = "prerequisite_failed: " + std::string(to_string(spec.base)) + ": " +
                                      (base.evidence.failure.empty() ? "-" : base.evidence.failure);
        }
        else if (spec.attack == ScenarioId::OneTapBypass)
            report = scenario_one_tap_bypass(sim, base);
        else
            report = scenario_location_spoof(sim, base);
    }

    RunResult result;
    result.report = std::move(report);
    result.trace = join(result.report.trace, "\n") + (result.report.trace.empty() ? "" : "\n");
    result.events = sim.events().dump();
    return result;
}

std::vector<MatrixRow> run_matrix(const std::vector<profile::OperatorProfile> &profiles,
                                  const profile::Countermeasures &cm, std::uint64_t seed)
{
    std::vector<MatrixRow> rows;
    for (const auto &p : profiles)
    {
        RunSpec spec;
        spec.setup = profile::make_setup(p, cm);
        spec.seed = seed;

        auto verdict = [&](ScenarioId attack, ScenarioId base) {
            spec.attack = attack;
            spec.base = base;
            return run(spec).report.succeeded;
        };
        // downstream attacks ride on whichever impersonation works
        auto either = [&](ScenarioId attack) {
            return verdict(attack, ScenarioId::BasebandImpersonation) ||
                   verdict(attack, ScenarioId::UsimImpersonation);
        };

        MatrixRow row;
        row.profile = p.name;
        row.usim_vulnerable = verdict(ScenarioId::UsimImpersonation, ScenarioId::UsimImpersonation);
        row.baseband_vulnerable = verdict(ScenarioId::BasebandImpersonation, ScenarioId::BasebandImpersonation);
        row.impersonation = row.usim_vulnerable || row.baseband_vulnerable;
        row.auth_bypass = either(ScenarioId::OneTapBypass);
        row.location_spoofing = either(ScenarioId::LocationSpoof);
        rows.push_back(row);
    }
    return rows;
}

std::string format_matrix(const std::vector<MatrixRow> &rows)
{
    auto cell = [](bool b) { return b ? "Yes" : "No"; };
    std::ostringstream os;
    os << "operator | usim | baseband | impersonation | auth-bypass | location-spoofing\n";
    for (const auto &r : rows)
        os << r.profile << " | " << cell(r.usim_vulnerable) << " | " << cell(r.baseband_vulnerable) << " | "
           << cell(r.impersonation) << " | " << cell(r.auth_bypass) << " | " << cell(r.location_spoofing) << "\n";
    return os.str();
}

} // namespace ctxsim::attack
