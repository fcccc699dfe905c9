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

#include "ctxsim/error.hpp"
#include "ctxsim/usim.hpp"
#include "support.hpp"

using namespace ctxsim;
using namespace ctxsim::usim;

namespace
{

constexpr FileId kProbe{0x1234};

crypto::Key some_key(std::uint64_t seed)
{
    std::mt19937_64 g(seed);
    return test::key_of(test::random_block(g), crypto::KeyKind::Permanent);
}

enum class PinMode
{
    Disabled,
    Unverified,
    Verified,
    Locked,
};

// reference access semantics, written from the rule text
bool expected_allowed(Access cond, PinMode pin, Origin origin)
{
    switch (cond)
    {
    case Access::Alw:
        return true;
    case Access::Nev:
        return false;
    case Access::Adm:
        return origin == Origin::Baseband;
    case Access::Pin:
        if (pin == PinMode::Locked)
            return false;
        return pin == PinMode::Disabled || pin == PinMode::Verified || origin == Origin::Baseband;
    }
    return false;
}

} // namespace

TEST_CASE("PinState validation")
{
    CHECK(PinState::well_formed("1234"));
    CHECK(PinState::well_formed("12345678"));
    CHECK_FALSE(PinState::well_formed("123"));
    CHECK_FALSE(PinState::well_formed("123456789"));
    CHECK_FALSE(PinState::well_formed("12a4"));
    CHECK_THROWS_AS(PinState("12", true), Error);
    CHECK_THROWS_AS(PinState("1234", true, 3, 4), Error);
    PinState p("1234", true, 3, 0);
    CHECK(p.locked());
}

TEST_CASE("exhaustive access-control matrix")
{
    const Access conds[] = {Access::Alw, Access::Pin, Access::Adm, Access::Nev};
    const PinMode modes[] = {PinMode::Disabled, PinMode::Unverified, PinMode::Verified, PinMode::Locked};
    const Origin origins[] = {Origin::Baseband, Origin::Reader};
    int checked = 0;

    for (auto read : conds)
        for (auto update : conds)
            for (auto mode : modes)
                for (auto origin : origins)
                {
                    FileMap files;
                    files[kProbe] = {{read, update}, to_bytes("probe")};
                    CardImage card("89000000000000000001", "001010000000001", some_key(1), files,
                                   PinState("1234", mode != PinMode::Disabled));
                    CardSession s(origin);
                    if (mode == PinMode::Verified)
                        REQUIRE(card.verify_pin(s, "1234").ok());
                    if (mode == PinMode::Locked)
                        for (int i = 0; i < 3; i++)
                            card.verify_pin(s, "9999");
                    CAPTURE(to_string(read));
                    CAPTURE(to_string(update));
                    CAPTURE(static_cast<int>(mode));
                    CAPTURE(static_cast<int>(origin));

                    auto r = card.execute(s, Apdu::read(kProbe));
                    bool want_read = expected_allowed(read, mode, origin);
                    CHECK(r.ok() == want_read);
                    CHECK((r.status == Status::SecurityNotSatisfied) == !want_read);
                    if (want_read)
                        CHECK(r.payload == to_bytes("probe"));
                    else
                        CHECK(r.payload.empty());

                    auto u = card.execute(s, Apdu::update(kProbe, to_bytes("new")));
                    CHECK(u.ok() == expected_allowed(update, mode, origin));
                    CHECK(u.payload.empty());
                    checked++;
                }
    CHECK(checked == 4 * 4 * 4 * 2);
}

TEST_CASE("READ of the standard files")
{
    auto card = CardImage::issue("8900000000000000002", "001010000000002", some_key(2), PinState("1234", false), false,
                                 false);
    CardSession reader(Origin::Reader);
    auto imsi = card.execute(reader, Apdu::read(file::kImsi));
    CHECK(imsi.ok());
    CHECK(to_text(imsi.payload) == "001010000000002");
    CHECK(card.execute(reader, Apdu::read(FileId{0xFFFF})).status == Status::FileNotFound);
    CHECK(card.execute(reader, Apdu::select(FileId{0xFFFF})).status == Status::FileNotFound);
    CHECK(card.execute(reader, Apdu::select(file::kEpsNsc)).ok());

    auto locked_down = CardImage::issue("8900000000000000003", "001010000000003", some_key(3), PinState("1234", true),
                                        false, false);
    CardSession r2(Origin::Reader);
    CHECK(locked_down.execute(r2, Apdu::read(file::kEpsNsc)).status == Status::SecurityNotSatisfied);
}

TEST_CASE("hardened card escalates context reads to ADM")
{
    auto card = CardImage::issue("8900000000000000004", "001010000000004", some_key(4), PinState("1234", false), true,
                                 true);
    CardSession reader(Origin::Reader);
    CHECK(card.execute(reader, Apdu::read(file::kImsi)).ok());
    CHECK(card.execute(reader, Apdu::read(file::kEpsLoci)).ok());
    CHECK(card.execute(reader, Apdu::read(file::kEpsNsc)).status == Status::SecurityNotSatisfied);
    CHECK(card.execute(reader, Apdu::read(file::k5gsNsc)).status == Status::SecurityNotSatisfied);
    CardSession baseband(Origin::Baseband);
    CHECK(card.execute(baseband, Apdu::read(file::kEpsNsc)).ok());
}

TEST_CASE("PIN verification, lockout and retry reset")
{
    auto card = CardImage::issue("8900000000000000005", "001010000000005", some_key(5), PinState("1234", true), false,
                                 false);
    CardSession s(Origin::Reader);
    CHECK(card.verify_pin(s, "1234").ok());
    CHECK(s.pin_verified());

    CHECK(card.verify_pin(s, "0000").status == Status::SecurityNotSatisfied);
    CHECK_FALSE(s.pin_verified());
    CHECK(card.pin().retries_left() == 2);
    CHECK(card.verify_pin(s, "1234").ok());
    CHECK(card.pin().retries_left() == 3);

    // malformed candidates do not burn a retry
    CHECK(card.verify_pin(s, "12").status == Status::SecurityNotSatisfied);
    CHECK(card.pin().retries_left() == 3);

    CHECK(card.verify_pin(s, "1111").status == Status::SecurityNotSatisfied);
    CHECK(card.verify_pin(s, "2222").status == Status::SecurityNotSatisfied);
    CHECK(card.verify_pin(s, "3333").status == Status::PinBlocked);
    CHECK(card.pin().locked());

    // permanent within the run
    for (int i = 0; i < 20; i++)
    {
        CHECK(card.verify_pin(s, "1234").status == Status::PinBlocked);
        CHECK_FALSE(card.execute(s, Apdu::read(file::kEpsNsc)).ok());
        CardSession fresh(Origin::Reader);
        CHECK_FALSE(card.execute(fresh, Apdu::read(file::kImsi)).ok());
    }

    auto open = CardImage::issue("8900000000000000006", "001010000000006", some_key(6), PinState("1234", false), false,
                                 false);
    CHECK(open.verify_pin(s, "9999").ok());
    CHECK(open.pin().retries_left() == 3);
}

TEST_CASE("configurable retry limit")
{
    auto card = CardImage::issue("8900000000000000007", "001010000000007", some_key(7), PinState("1234", true, 5),
                                 false, false);
    CardSession s(Origin::Reader);
    for (int i = 0; i < 4; i++)
        CHECK(card.verify_pin(s, "0000").status == Status::SecurityNotSatisfied);
    CHECK(card.verify_pin(s, "0000").status == Status::PinBlocked);
}

TEST_CASE("AUTHENTICATE")
{
    auto k = some_key(8);
    auto card = CardImage::issue("8900000000000000008", "001010000000008", k, PinState("1234", false), false, false);
    CardSession s(Origin::Baseband);

    auto v1 = crypto::gen_auth_vector(k, 1);
    auto r1 = card.execute(s, Apdu::authenticate(v1.rand, v1.autn));
    REQUIRE(r1.ok());
    auto a1 = decode_aka_response(r1.payload);
    REQUIRE(a1.has_value());
    CHECK(a1->res == v1.xres);
    CHECK(card.seq() == 1);

    auto v2 = crypto::gen_auth_vector(k, 2);
    auto a2 = decode_aka_response(card.execute(s, Apdu::authenticate(v2.rand, v2.autn)).payload);
    REQUIRE(a2.has_value());
    CHECK(a2->ck != a1->ck);
    CHECK(a2->ik != a1->ik);

    auto foreign = crypto::gen_auth_vector(some_key(99), 1);
    CHECK(card.execute(s, Apdu::authenticate(foreign.rand, foreign.autn)).status == Status::AuthFailure);
    CHECK(card.execute(s, Apdu::authenticate(Bytes(3), Bytes(3))).status == Status::AuthFailure);
}

TEST_CASE("context file storage per generation")
{
    auto card = CardImage::issue("8900000000000000009", "001010000000009", some_key(9), PinState("1234", false), false,
                                 false);
    card.store_context_files(to_bytes("loci4"), to_bytes("nsc4"), nas::Generation::G4);
    auto f = card.load_context_files(nas::Generation::G4);
    CHECK(f.loci == to_bytes("loci4"));
    CHECK(f.nsc == to_bytes("nsc4"));
    CHECK_THROWS_AS(card.load_context_files(nas::Generation::G5), Error);
    CHECK_THROWS_AS(card.store_context_files({}, {}, nas::Generation::G5), Error);

    auto five = CardImage::issue("8900000000000000010", "001010000000010", some_key(10), PinState("1234", false), true,
                                 false);
    five.store_context_files(to_bytes("l"), to_bytes("n"), nas::Generation::G4);
    CHECK(five.files().at(file::k5gsLoci).body.empty());
    CHECK(five.files().at(file::k5gsNsc).body.empty());
    five.store_context_files(to_bytes("l5"), to_bytes("n5"), nas::Generation::G5);
    CHECK(five.load_context_files(nas::Generation::G5).nsc == to_bytes("n5"));
    CHECK(five.load_context_files(nas::Generation::G4).nsc == to_bytes("n"));
}

TEST_CASE("card image invariants")
{
    FileMap files;
    files[file::kImsi] = {{Access::Pin, Access::Adm}, to_bytes("001019999999999")};
    CHECK_THROWS_AS(CardImage("8900", "001010000000001", some_key(1), files, PinState("1234", false)), Error);
    CHECK_THROWS_AS(CardImage("8900", "001010000000001", some_key(1), {}, PinState("1234", false), 0, true), Error);
    CHECK_THROWS_AS(CardImage("", "001010000000001", some_key(1), {}, PinState("1234", false)), Error);

    // a programmable card enforces conditions once built
    FileMap fake;
    fake[file::kEpsNsc] = {{Access::Nev, Access::Nev}, to_bytes("x")};
    CardImage card("8999", "001010000000001", some_key(1), fake, PinState("1234", false), 0, false, true);
    CardSession reader(Origin::Reader);
    CHECK_FALSE(card.execute(reader, Apdu::read(file::kEpsNsc)).ok());
    CHECK_FALSE(card.execute(reader, Apdu::update(file::kEpsNsc, {})).ok());
    CHECK(card.execute(reader, Apdu::read(file::kImsi)).ok());
}

TEST_CASE("fake card with victim files is indistinguishable over IMSI, context and registration use")
{
    auto k = some_key(12);
    auto real = CardImage::issue("8900000000000000012", "001010000000012", k, PinState("1234", false), false, false);
    real.store_context_files(to_bytes("loci"), to_bytes("nsc"), nas::Generation::G4);

    FileMap copy;
    for (auto id : {file::kImsi, file::kEpsLoci, file::kEpsNsc})
        copy[id] = real.files().at(id);
    CardImage fake("8999000000000000001", real.supi(), some_key(13), copy, PinState("0000", false), 0, false, true);

    CardSession a(Origin::Baseband), b(Origin::Baseband);
    CHECK(real.execute(a, Apdu::read(file::kImsi)).payload == fake.execute(b, Apdu::read(file::kImsi)).payload);
    CHECK(real.load_context_files(nas::Generation::G4).loci == fake.load_context_files(nas::Generation::G4).loci);
    CHECK(real.load_context_files(nas::Generation::G4).nsc == fake.load_context_files(nas::Generation::G4).nsc);
    CHECK(real.supports(nas::Generation::G4) == fake.supports(nas::Generation::G4));

    // but it cannot answer a challenge for the victim's key
    auto v = crypto::gen_auth_vector(k, 1);
    CHECK(fake.execute(b, Apdu::authenticate(v.rand, v.autn)).status == Status::AuthFailure);
}
