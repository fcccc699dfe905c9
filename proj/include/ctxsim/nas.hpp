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
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ctxsim/bytes.hpp"
#include "ctxsim/crypto.hpp"

namespace ctxsim::nas
{

enum class Generation
{
    G4,
    G5,
};

std::string_view to_string(Generation g);

constexpr std::uint8_t kNoKeySet = 7;
constexpr std::uint8_t kMaxKeySet = 6;

/// Temporary identity allocated by the network. Opaque outside the AMF.
struct Guti
{
    std::uint64_t value = 0;

    std::string to_string() const;
    auto operator<=>(const Guti &) const = default;
};

// Algorithm identifiers carried in the UE security capabilities.
namespace alg
{
constexpr std::uint8_t kEa0 = 0x00;
constexpr std::uint8_t kEa1 = 0x01;
constexpr std::uint8_t kEa2 = 0x02;
constexpr std::uint8_t kIa1 = 0x11;
constexpr std::uint8_t kIa2 = 0x12;
} // namespace alg

std::vector<std::uint8_t> default_ue_capabilities();

struct SecurityContext
{
    crypto::Key k_amf{{}, crypto::KeyKind::AMF};
    std::uint8_t ngksi = kNoKeySet;
    std::vector<std::uint8_t> ue_sec_caps;
    std::uint32_t ul_count = 0;
    std::uint32_t dl_count = 0;

    bool valid() const
    {
        return ngksi <= kMaxKeySet;
    }

    bool operator==(const SecurityContext &) const = default;
};

/// NSC file body: each field length-prefixed (one octet), declaration order,
/// counters big-endian.
Bytes serialize_context(const SecurityContext &ctx);
std::optional<SecurityContext> parse_context(ByteView data);

/// LOCI file body: the GUTI as a length-prefixed big-endian field.
Bytes serialize_loci(const Guti &guti);
std::optional<Guti> parse_loci(ByteView data);

struct ClearTextIes
{
    Guti guti;
    std::uint8_t ngksi = kNoKeySet;
    std::uint32_t ul_count = 0;

    Bytes encode() const;
    static std::optional<ClearTextIes> decode(ByteView data);
    bool operator==(const ClearTextIes &) const = default;
};

struct MobileIdentity
{
    enum class Type
    {
        Imsi,
        Suci,
    };

    Type type = Type::Imsi;
    // IMSI digits in clear, or the concealed blob for SUCI
    Bytes value;

    bool operator==(const MobileIdentity &) const = default;
};

struct RegistrationRequestFast
{
    ClearTextIes ies;
    Bytes container;
    crypto::MacTag mac;
};

struct RegistrationRequestInitial
{
    MobileIdentity identity;
    std::vector<std::uint8_t> ue_sec_caps;
};

struct IdentityRequest
{
};

struct IdentityResponse
{
    MobileIdentity identity;
    std::vector<std::uint8_t> ue_sec_caps;
};

struct AuthRequest
{
    Bytes rand;
    Bytes autn;
    std::uint8_t ngksi = kNoKeySet;
};

struct AuthResponse
{
    Bytes res;
};

/// The USIM rejected AUTN.
struct AuthFailure
{
};

struct AuthReject
{
};

struct SecurityModeCommand
{
    std::uint8_t cipher_alg = alg::kEa0;
    std::uint8_t integrity_alg = alg::kIa1;
    std::uint8_t ngksi = kNoKeySet;
    crypto::MacTag mac;

    Bytes protected_part() const;
};

struct SecurityModeComplete
{
    crypto::MacTag mac;
};

/// What the UE integrity-protects in SecurityModeComplete.
Bytes smc_complete_ies(std::uint8_t ngksi);

struct RegistrationAccept
{
    // senc(guti || dl_count, K_NASenc)
    Bytes ciphered;
};

struct RegistrationReject
{
    std::string cause;
};

/// Carries the cleartext identity of the context being parked.
struct Deregistration
{
    Guti guti;
    std::uint8_t ngksi = kNoKeySet;
};

using NasMessage =
    std::variant<RegistrationRequestFast, RegistrationRequestInitial, IdentityRequest, IdentityResponse, AuthRequest,
                 AuthResponse, AuthFailure, AuthReject, SecurityModeCommand, SecurityModeComplete, RegistrationAccept,
                 RegistrationReject, Deregistration>;

std::string message_type(const NasMessage &msg);

using Field = std::pair<std::string, std::string>;

/// The projection of a message an eavesdropper on the air interface sees.
/// Ciphered and MAC'd parts are reduced to their lengths and tags.
std::vector<Field> observable_fields(const NasMessage &msg);

Bytes encode_accept_payload(const Guti &guti, std::uint32_t dl_count);
std::optional<std::pair<Guti, std::uint32_t>> decode_accept_payload(ByteView data);

/// Opaque, network-invertible SUPI concealment.
Bytes conceal_supi(const std::string &supi, const crypto::Key &home_network_key, ByteView nonce);
std::optional<std::string> reveal_supi(ByteView suci, const crypto::Key &home_network_key);

} // namespace ctxsim::nas
