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

#include "ctxsim/nas.hpp"

#include <cstdio>
#include <type_traits>

namespace ctxsim::nas
{

namespace
{

void append_field(Bytes &out, ByteView body)
{
    append_u8(out, static_cast<std::uint8_t>(body.size()));
    append(out, body);
}

std::string join_caps(const std::vector<std::uint8_t> &caps)
{
    std::string out;
    for (auto c : caps)
    {
        if (!out.empty())
            out += ',';
        out += to_hex(ByteView(&c, 1));
    }
    return out.empty() ? "-" : out;
}

std::string byte_count(const Bytes &b)
{
    return std::to_string(b.size()) + "B";
}

constexpr std::size_t kSuciNonceLength = 8;

} // namespace

std::string_view to_string(Generation g)
{
    return g == Generation::G4 ? "4G" : "5G";
}

std::string Guti::to_string() const
{
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::vector<std::uint8_t> default_ue_capabilities()
{
    return {alg::kEa0, alg::kEa1, alg::kEa2, alg::kIa1, alg::kIa2};
}

Bytes serialize_context(const SecurityContext &ctx)
{
    Bytes out;
    append_field(out, ctx.k_amf.view());
    append_field(out, ByteView(&ctx.ngksi, 1));
    append_field(out, ctx.ue_sec_caps);
    Bytes counter;
    append_be32(counter, ctx.ul_count);
    append_field(out, counter);
    counter.clear();
    append_be32(counter, ctx.dl_count);
    append_field(out, counter);
    return out;
}

std::optional<SecurityContext> parse_context(ByteView data)
{
    ByteReader r(data);
    auto key = r.field();
    auto ksi = r.field();
    auto caps = r.field();
    auto ul = r.field();
    auto dl = r.field();
    if (!key || !ksi || !caps || !ul || !dl || !r.at_end())
        return std::nullopt;
    if (key->size() != crypto::kKeyLength || ksi->size() != 1 || ul->size() != 4 || dl->size() != 4)
        return std::nullopt;

    SecurityContext ctx;
    ctx.k_amf = crypto::Key::from(*key, crypto::KeyKind::AMF);
    ctx.ngksi = (*ksi)[0];
    ctx.ue_sec_caps.assign(caps->begin(), caps->end());
    ctx.ul_count = read_be32(*ul);
    ctx.dl_count = read_be32(*dl);
    return ctx;
}

Bytes serialize_loci(const Guti &guti)
{
    Bytes body;
    append_be64(body, guti.value);
    Bytes out;
    append_field(out, body);
    return out;
}

std::optional<Guti> parse_loci(ByteView data)
{
    ByteReader r(data);
    auto body = r.field();
    if (!body || body->size() != 8 || !r.at_end())
        return std::nullopt;
    return Guti{read_be64(*body)};
}

Bytes ClearTextIes::encode() const
{
    Bytes out;
    append_be64(out, guti.value);
    append_u8(out, ngksi);
    append_be32(out, ul_count);
    return out;
}

std::optional<ClearTextIes> ClearTextIes::decode(ByteView data)
{
    ByteReader r(data);
    auto g = r.be64();
    auto k = r.u8();
    auto c = r.be32();
    if (!g || !k || !c || !r.at_end())
        return std::nullopt;
    return ClearTextIes{Guti{*g}, *k, *c};
}

Bytes SecurityModeCommand::protected_part() const
{
    return Bytes{cipher_alg, integrity_alg, ngksi};
}

Bytes smc_complete_ies(std::uint8_t ngksi)
{
    Bytes out = to_bytes("SMC-COMPLETE");
    append_u8(out, ngksi);
    return out;
}

std::string message_type(const NasMessage &msg)
{
    return std::visit(
        [](const auto &m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RegistrationRequestFast>)
                return "RegistrationRequest(fast)";
            else if constexpr (std::is_same_v<T, RegistrationRequestInitial>)
                return "RegistrationRequest(initial)";
            else if constexpr (std::is_same_v<T, IdentityRequest>)
                return "IdentityRequest";
            else if constexpr (std::is_same_v<T, IdentityResponse>)
                return "IdentityResponse";
            else if constexpr (std::is_same_v<T, AuthRequest>)
                return "AuthenticationRequest";
            else if constexpr (std::is_same_v<T, AuthResponse>)
                return "AuthenticationResponse";
            else if constexpr (std::is_same_v<T, AuthFailure>)
                return "AuthenticationFailure";
            else if constexpr (std::is_same_v<T, AuthReject>)
                return "AuthenticationReject";
            else if constexpr (std::is_same_v<T, SecurityModeCommand>)
                return "SecurityModeCommand";
            else if constexpr (std::is_same_v<T, SecurityModeComplete>)
                return "SecurityModeComplete";
            else if constexpr (std::is_same_v<T, RegistrationAccept>)
                return "RegistrationAccept";
            else if constexpr (std::is_same_v<T, RegistrationReject>)
                return "RegistrationReject";
            else
                return "DeregistrationRequest";
        },
        msg);
}

std::vector<Field> observable_fields(const NasMessage &msg)
{
    return std::visit(
        [](const auto &m) -> std::vector<Field> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RegistrationRequestFast>)
                return {{"guti", m.ies.guti.to_string()},
                        {"ngksi", std::to_string(m.ies.ngksi)},
                        {"ul_count", std::to_string(m.ies.ul_count)},
                        {"container", byte_count(m.container)},
                        {"mac", to_hex(m.mac.tag)}};
            else if constexpr (std::is_same_v<T, RegistrationRequestInitial> || std::is_same_v<T, IdentityResponse>)
            {
                if (m.identity.type == MobileIdentity::Type::Imsi)
                    return {{"identity", "imsi"}, {"imsi", to_text(m.identity.value)}, {"caps", join_caps(m.ue_sec_caps)}};
                return {{"identity", "suci"}, {"suci", byte_count(m.identity.value)}, {"caps", join_caps(m.ue_sec_caps)}};
            }
            else if constexpr (std::is_same_v<T, AuthRequest>)
                return {{"ngksi", std::to_string(m.ngksi)}, {"rand", to_hex(m.rand)}, {"autn", to_hex(m.autn)}};
            else if constexpr (std::is_same_v<T, AuthResponse>)
                return {{"res", to_hex(m.res)}};
            else if constexpr (std::is_same_v<T, SecurityModeCommand>)
                return {{"ngksi", std::to_string(m.ngksi)},
                        {"cipher", to_hex(ByteView(&m.cipher_alg, 1))},
                        {"integrity", to_hex(ByteView(&m.integrity_alg, 1))},
                        {"mac", to_hex(m.mac.tag)}};
            else if constexpr (std::is_same_v<T, SecurityModeComplete>)
                return {{"mac", to_hex(m.mac.tag)}};
            else if constexpr (std::is_same_v<T, RegistrationAccept>)
                return {{"ciphered", byte_count(m.ciphered)}};
            else if constexpr (std::is_same_v<T, RegistrationReject>)
                return {{"cause", m.cause}};
            else if constexpr (std::is_same_v<T, Deregistration>)
                return {{"guti", m.guti.to_string()}, {"ngksi", std::to_string(m.ngksi)}};
            else
                return {};
        },
        msg);
}

Bytes encode_accept_payload(const Guti &guti, std::uint32_t dl_count)
{
    Bytes out;
    append_be64(out, guti.value);
    append_be32(out, dl_count);
    return out;
}

std::optional<std::pair<Guti, std::uint32_t>> decode_accept_payload(ByteView data)
{
    ByteReader r(data);
    auto g = r.be64();
    auto dl = r.be32();
    if (!g || !dl || !r.at_end())
        return std::nullopt;
    return std::make_pair(Guti{*g}, *dl);
}

Bytes conceal_supi(const std::string &supi, const crypto::Key &home_network_key, ByteView nonce)
{
    Bytes plain(nonce.begin(), nonce.end());
    plain.resize(kSuciNonceLength, 0);
    append(plain, supi);
    return crypto::senc(plain, home_network_key);
}

std::optional<std::string> reveal_supi(ByteView suci, const crypto::Key &home_network_key)
{
    auto plain = crypto::sdec(suci, home_network_key);
    if (!plain || plain->size() < kSuciNonceLength)
        return std::nullopt;
    return to_text(ByteView(*plain).subspan(kSuciNonceLength));
}

} // namespace ctxsim::nas
