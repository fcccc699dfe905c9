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

#include "ctxsim/bytes.hpp"
#include "ctxsim/nas.hpp"
#include "support.hpp"

using namespace ctxsim;

TEST_CASE("hex and big-endian helpers")
{
    CHECK(to_hex(Bytes{0x00, 0xab, 0xff}) == "00abff");
    CHECK(from_hex("00ABff") == Bytes{0x00, 0xab, 0xff});
    CHECK_FALSE(from_hex("abc").has_value());
    CHECK_FALSE(from_hex("zz").has_value());

    Bytes b;
    append_be32(b, 0x01020304);
    append_be64(b, 0x1122334455667788ULL);
    CHECK(read_be32(b) == 0x01020304);
    CHECK(read_be64(ByteView(b).subspan(4)) == 0x1122334455667788ULL);
}

TEST_CASE("Rng is seed-determined")
{
    Rng a(9), b(9), c(10);
    CHECK(a.bytes(16) == b.bytes(16));
    CHECK(a.digits(12) == b.digits(12));
    CHECK(Rng(9).next_u64() != c.next_u64());
    for (int i = 0; i < 1000; i++)
        CHECK(a.below(7) < 7);
}

TEST_CASE("security context and LOCI serialization round trip")
{
    std::mt19937_64 g(1);
    for (int i = 0; i < 200; i++)
    {
        nas::SecurityContext ctx;
        ctx.k_amf = test::key_of(test::random_block(g), crypto::KeyKind::AMF);
        ctx.ngksi = static_cast<std::uint8_t>(g() % 7);
        ctx.ue_sec_caps = test::random_bytes(g, g() % 6);
        ctx.ul_count = static_cast<std::uint32_t>(g());
        ctx.dl_count = static_cast<std::uint32_t>(g());
        auto bytes = nas::serialize_context(ctx);
        CHECK(nas::parse_context(bytes) == ctx);
        bytes.pop_back();
        CHECK_FALSE(nas::parse_context(bytes).has_value());

        nas::Guti guti{g()};
        CHECK(nas::parse_loci(nas::serialize_loci(guti)) == guti);
    }
    CHECK_FALSE(nas::parse_loci({}).has_value());
    CHECK_FALSE(nas::parse_context({}).has_value());
}

TEST_CASE("cleartext IEs and accept payload encode/decode")
{
    nas::ClearTextIes ies{nas::Guti{0x0102030405060708ULL}, 3, 42};
    auto enc = ies.encode();
    CHECK(to_hex(enc) == "0102030405060708030000002a");
    CHECK(nas::ClearTextIes::decode(enc) == ies);

    auto p = nas::encode_accept_payload(nas::Guti{7}, 9);
    auto d = nas::decode_accept_payload(p);
    REQUIRE(d.has_value());
    CHECK(d->first == nas::Guti{7});
    CHECK(d->second == 9u);
}

TEST_CASE("SUCI concealment is invertible only with the home-network key")
{
    std::mt19937_64 g(2);
    auto hn = test::key_of(test::random_block(g), crypto::KeyKind::Permanent);
    auto other = test::key_of(test::random_block(g), crypto::KeyKind::Permanent);
    auto suci = nas::conceal_supi("001010123456789", hn, Bytes(8, 1));
    CHECK(to_text(suci).find("001010123456789") == std::string::npos);
    CHECK(nas::reveal_supi(suci, hn) == std::string("001010123456789"));
    CHECK_FALSE(nas::reveal_supi(suci, other).has_value());
    // fresh nonce, fresh concealment
    CHECK(nas::conceal_supi("001010123456789", hn, Bytes(8, 2)) != suci);
}

TEST_CASE("observable projection of a fast request hides the container")
{
    std::mt19937_64 g(3);
    auto kamf = test::key_of(test::random_block(g), crypto::KeyKind::AMF);
    auto keys = crypto::derive_nas_keys(kamf);
    nas::RegistrationRequestFast req;
    req.ies = {nas::Guti{0xabcdef}, 2, 5};
    auto ies = req.ies.encode();
    req.container = crypto::senc(ies, keys.enc);
    req.mac = crypto::mac_compute(ies, req.container, keys.integrity);

    auto fields = nas::observable_fields(req);
    std::string all;
    for (const auto &[k, v] : fields)
        all += k + "=" + v + " ";
    CHECK(all.find("guti=0000000000abcdef") != std::string::npos);
    CHECK(all.find("ngksi=2") != std::string::npos);
    CHECK(all.find("ul_count=5") != std::string::npos);
    CHECK(all.find(to_hex(req.container)) == std::string::npos);
    CHECK(all.find(to_hex(kamf.view())) == std::string::npos);
    CHECK(nas::message_type(req) == "RegistrationRequest(fast)");
}
