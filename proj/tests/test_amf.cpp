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

#include <doctest.h>

#include <set>

#include "ctxsim/error.hpp"
#include "world.hpp"

using namespace ctxsim;

namespace
{

const auto g5 = nas::Generation::G5;

std::vector<nas::RegistrationRequestFast> fast_requests(const test::World &w, const std::string &flow)
{
    std::vector<nas::RegistrationRequestFast> out;
    for (const auto &env : w.link.captured())
        if (env.flow == flow)
            if (auto *f = std::get_if<nas::RegistrationRequestFast>(&env.msg))
                out.push_back(*f);
    return out;
}

std::vector<std::string> fallback_reasons(const test::World &w)
{
    std::vector<std::string> out;
    for (const auto *e : w.events.named("fast_path_fallback"))
        out.push_back(e->field("reason"));
    return out;
}

bool trace_has(const me::RegistrationOutcome &o, std::string_view type)
{
    for (const auto &obs : o.trace)
        if (obs.type == type)
            return true;
    return false;
}

} // namespace

TEST_CASE("subscriber management")
{
    test::World w;
    w.card("001010000000100");
    CHECK(w.amf.subscriber("001010000000100") != nullptr);
    CHECK(w.amf.subscriber("001010000000101") == nullptr);
    CHECK_THROWS_AS(w.amf.add_subscriber("001010000000100", w.hn), Error);
    CHECK_THROWS_AS(w.amf.add_subscriber("001010000000102", crypto::kdf(w.hn, crypto::label::kAmf)), Error);
}

TEST_CASE("initial registration runs AKA, then the cached context is accepted without AKA")
{
    test::World w(2);
    auto &ue = w.phone("ue");
    ue.insert_card(w.card("001010000000200"));
    ue.power_on();

    auto first = ue.register_to(w.net, g5, "BS-A");
    CHECK(first.accepted);
    CHECK(first.aka_ran);
    CHECK_FALSE(first.fast_attempted);
    CHECK(trace_has(first, "AuthenticationRequest"));
    CHECK(trace_has(first, "SecurityModeCommand"));
    CHECK(w.events.named("key_derived").size() == 5);
    ue.deregister();

    auto second = ue.register_to(w.net, g5, "BS-B");
    CHECK(second.fast_accepted());
    CHECK_FALSE(trace_has(second, "AuthenticationRequest"));
    CHECK_FALSE(trace_has(second, "IdentityRequest"));
    CHECK(second.trace.size() == 2);
    CHECK(w.amf.locate("001010000000200") == "BS-B");
    CHECK(w.events.named(event::kAmfVerify).size() == 1);
}

TEST_CASE("replayed fast requests are rejected as not fresh")
{
    test::World w(3);
    auto &ue = w.phone("ue");
    ue.insert_card(w.card("001010000000300"));
    ue.power_on();
    for (int i = 0; i < 4; i++)
    {
        REQUIRE(ue.register_to(w.net, g5, "BS-A").accepted);
        ue.deregister();
    }
    auto requests = fast_requests(w, "ue");
    REQUIRE(requests.size() == 3);
    auto verifies = w.events.named(event::kAmfVerify).size();

    w.net.join("replayer");
    for (const auto &req : requests)
    {
        auto reply = w.net.transact("replayer", "BS-B", req);
        REQUIRE(reply.has_value());
        CHECK_FALSE(std::holds_alternative<nas::RegistrationAccept>(*reply));
        CHECK(std::holds_alternative<nas::AuthRequest>(*reply));
    }
    CHECK(w.events.named(event::kAmfVerify).size() == verifies);
    for (const auto &r : fallback_reasons(w))
        CHECK(r == "count_not_fresh");
    CHECK(fallback_reasons(w).size() == requests.size());
}

TEST_CASE("verify_fast classification")
{
    test::World w(4);
    auto &ue = w.phone("ue");
    ue.insert_card(w.card("001010000000400"));
    ue.power_on();
    REQUIRE(ue.register_to(w.net, g5, "BS-A").accepted);
    ue.deregister();
    REQUIRE(ue.register_to(w.net, g5, "BS-A").fast_accepted());
    ue.deregister();

    auto old = fast_requests(w, "ue").front();
    std::string supi;
    CHECK(w.amf.verify_fast(old, &supi) == amf::FastCheck::CountNotFresh);
    CHECK(supi == "001010000000400");

    const auto &[key, entry] = *w.amf.contexts().begin();
    auto keys = crypto::derive_nas_keys(entry.ctx.k_amf);
    auto build = [&](nas::Guti guti, std::uint32_t ul) {
        nas::RegistrationRequestFast r;
        r.ies = {guti, key.ngksi, ul};
        auto ies = r.ies.encode();
        r.container = crypto::senc(ies, keys.enc);
        r.mac = crypto::mac_compute(ies, r.container, keys.integrity);
        return r;
    };
    CHECK(w.amf.verify_fast(build(key.guti, entry.ctx.ul_count + 1)) == amf::FastCheck::Ok);
    CHECK(w.amf.verify_fast(build(key.guti, entry.ctx.ul_count)) == amf::FastCheck::CountNotFresh);
    CHECK(w.amf.verify_fast(build(old.ies.guti, entry.ctx.ul_count + 5)) == amf::FastCheck::StaleGuti);
    CHECK(w.amf.verify_fast(build(nas::Guti{12345}, 99)) == amf::FastCheck::UnknownContext);

    auto bad_mac = build(key.guti, entry.ctx.ul_count + 1);
    bad_mac.mac.tag[0] ^= 1;
    CHECK(w.amf.verify_fast(bad_mac) == amf::FastCheck::MacMismatch);

    auto bad_container = build(key.guti, entry.ctx.ul_count + 1);
    bad_container.container = crypto::senc(to_bytes("other"), keys.enc);
    bad_container.mac = crypto::mac_compute(bad_container.ies.encode(), bad_container.container, keys.integrity);
    CHECK(w.amf.verify_fast(bad_container) == amf::FastCheck::ContainerMismatch);
}

TEST_CASE("unknown GUTI falls back to identity procedure")
{
    test::World w(5);
    auto &ue = w.phone("ue");
    ue.insert_card(w.card("001010000000500"));
    ue.power_on();
    REQUIRE(ue.register_to(w.net, g5, "BS-A").accepted);
    ue.deregister();

    w.net.join("stranger");
    nas::RegistrationRequestFast r;
    r.ies = {nas::Guti{0x5555}, 1, 9};
    auto reply = w.net.transact("stranger", "BS-A", r);
    REQUIRE(reply.has_value());
    CHECK(std::holds_alternative<nas::IdentityRequest>(*reply));
    CHECK(fallback_reasons(w).back() == "unknown_context");

    // an identity response for an unknown subscriber is rejected
    auto r2 = w.net.transact("stranger", "BS-A",
                             nas::IdentityResponse{{nas::MobileIdentity::Type::Imsi, to_bytes("999999999999999")}, {}});
    REQUIRE(r2.has_value());
    CHECK(std::holds_alternative<nas::RegistrationReject>(*r2));
    // out of sequence
    auto r3 = w.net.transact("stranger", "BS-A", nas::AuthResponse{Bytes(8)});
    REQUIRE(r3.has_value());
    CHECK(std::holds_alternative<nas::RegistrationReject>(*r3));
}

TEST_CASE("wrong RES is answered with an authentication reject")
{
    test::World w(6);
    w.card("001010000000600");
    w.net.join("guesser");
    auto r1 = w.net.transact(
        "guesser", "BS-A",
        nas::RegistrationRequestInitial{{nas::MobileIdentity::Type::Imsi, to_bytes("001010000000600")}, {}});
    REQUIRE(r1.has_value());
    REQUIRE(std::holds_alternative<nas::AuthRequest>(*r1));
    auto r2 = w.net.transact("guesser", "BS-A", nas::AuthResponse{Bytes(crypto::kResLength, 0)});
    REQUIRE(r2.has_value());
    CHECK(std::holds_alternative<nas::AuthReject>(*r2));
    CHECK(w.amf.contexts().empty());
    CHECK(w.events.named("aka_reject").size() == 1);
}

TEST_CASE("a new AKA run replaces the subscriber's context")
{
    test::World w(7);
    auto card = w.card("001010000000700");
    auto copy = card;
    auto &a = w.phone("ue-a");
    auto &b = w.phone("ue-b");
    a.insert_card(std::move(card));
    b.insert_card(std::move(copy));
    a.power_on();
    b.power_on();

    REQUIRE(a.register_to(w.net, g5, "BS-A").aka_ran);
    auto first = w.amf.contexts().begin()->first;
    REQUIRE(b.register_to(w.net, g5, "BS-B").aka_ran);
    CHECK(w.amf.contexts().size() == 1);
    auto second = w.amf.contexts().begin()->first;
    CHECK(second.guti != first.guti);
    CHECK(second.ngksi != first.ngksi);
    CHECK(w.amf.contexts().begin()->second.supi == "001010000000700");

    // a deregistration of the superseded context from a does not touch b's session
    a.deregister();
    CHECK(w.amf.locate("001010000000700") == "BS-B");
}

TEST_CASE("issued GUTIs are unique")
{
    test::World w(8);
    std::vector<me::MobileEquipment *> ues;
    for (int i = 0; i < 5; i++)
    {
        auto &ue = w.phone("ue-" + std::to_string(i));
        ue.insert_card(w.card("00101000000080" + std::to_string(i)));
        ue.power_on();
        ues.push_back(&ue);
    }
    for (int round = 0; round < 20; round++)
        for (auto *ue : ues)
        {
            REQUIRE(ue->register_to(w.net, g5, "BS-A").accepted);
            ue->deregister();
        }
    const auto &issued = w.amf.issued_gutis();
    CHECK(issued.size() == 100);
    CHECK(std::set<nas::Guti>(issued.begin(), issued.end()).size() == issued.size());
    CHECK(w.amf.contexts().size() == 5);
}

TEST_CASE("token and location queries need a registered session")
{
    test::World w(9);
    auto &ue = w.phone("ue");
    ue.insert_card(w.card("001010000000900"));
    ue.power_on();
    CHECK_THROWS_AS(w.amf.one_tap_token("ue"), Error);
    CHECK_THROWS_AS(w.amf.locate("001010000000900"), Error);
    REQUIRE(ue.register_to(w.net, g5, "BS-C").accepted);
    auto t1 = w.amf.one_tap_token("ue");
    auto t2 = w.amf.one_tap_token("ue");
    CHECK(t1.supi == "001010000000900");
    CHECK(t1.nonce != t2.nonce);
    CHECK(w.amf.locate("001010000000900") == "BS-C");
    ue.deregister();
    try
    {
        w.amf.one_tap_token("ue");
        FAIL("expected NotRegistered");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == Errc::NotRegistered);
    }
    CHECK_THROWS_AS(w.amf.locate("001010000000900"), Error);
}

TEST_CASE("fast path disabled or context expired forces AKA")
{
    test::World off(10, false);
    auto &ue = off.phone("ue");
    ue.insert_card(off.card("001010000001000"));
    ue.power_on();
    REQUIRE(ue.register_to(off.net, g5, "BS-A").accepted);
    ue.deregister();
    auto o = ue.register_to(off.net, g5, "BS-A");
    CHECK(o.accepted);
    CHECK(o.fell_back);
    CHECK(o.aka_ran);
    CHECK(fallback_reasons(off).back() == "fast_registration_disabled");

    test::World periodic(11, true, 30);
    auto &p = periodic.phone("ue");
    p.insert_card(periodic.card("001010000001001"));
    p.power_on();
    REQUIRE(p.register_to(periodic.net, g5, "BS-A").accepted);
    p.deregister();
    CHECK(p.register_to(periodic.net, g5, "BS-A").fast_accepted());
    p.deregister();
    periodic.clock.advance(30);
    auto late = p.register_to(periodic.net, g5, "BS-A");
    CHECK(late.accepted);
    CHECK(late.aka_ran);
    CHECK(fallback_reasons(periodic).back() == "context_expired");
}
