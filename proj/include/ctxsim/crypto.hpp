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

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "ctxsim/bytes.hpp"

// Simulator-grade primitives. Everything here is built from a single keyed
// PRF, AES-128-CMAC. None of it is 3GPP MILENAGE or NAS ciphering; the
// attacks modeled by this project are logic attacks, so the only property
// that matters is that nobody without the key can compute or invert.
namespace ctxsim::crypto
{

constexpr std::size_t kKeyLength = 16;
constexpr std::size_t kMacLength = 8;
constexpr std::size_t kRandLength = 16;
constexpr std::size_t kAutnLength = 16;
constexpr std::size_t kResLength = 8;
constexpr std::size_t kSivLength = 16;

enum class KeyKind : std::uint8_t
{
    Permanent,
    CK,
    IK,
    AUSF,
    SEAF,
    AMF,
    NASenc,
    NASint,
};

std::string_view to_string(KeyKind kind);

using KeyBytes = std::array<std::uint8_t, kKeyLength>;

struct Key
{
    KeyBytes bytes{};
    KeyKind kind = KeyKind::Permanent;

    // throws InvalidArgument unless data is exactly kKeyLength octets
    static Key from(ByteView data, KeyKind kind);

    ByteView view() const
    {
        return bytes;
    }

    bool operator==(const Key &) const = default;
};

struct MacTag
{
    std::array<std::uint8_t, kMacLength> tag{};

    bool operator==(const MacTag &) const = default;
};

struct AuthVector
{
    Bytes rand;
    Bytes autn;
    Bytes xres;
    Key ck;
    Key ik;
};

/// What the USIM hands back to the ME after a successful AKA challenge.
struct AkaResult
{
    Bytes res;
    Key ck;
    Key ik;
    std::uint64_t seq = 0;
};

/// Raw AES-128-CMAC, the one PRF everything else is built on.
std::array<std::uint8_t, 16> prf(const KeyBytes &key, ByteView message);

/// Labels accepted by kdf(). The chain is
///   K_permanent -> {CK, IK}            (AKA only)
///   CK || IK    -> K_AUSF              ("AUSF")
///   K_AUSF      -> K_SEAF              ("SEAF")
///   K_SEAF      -> K_AMF               ("AMF")
///   K_AMF       -> K_NASenc, K_NASint  ("NASenc", "NASint")
namespace label
{
constexpr std::string_view kAusf = "AUSF";
constexpr std::string_view kSeaf = "SEAF";
constexpr std::string_view kAmf = "AMF";
constexpr std::string_view kNasEnc = "NASenc";
constexpr std::string_view kNasInt = "NASint";
} // namespace label

/// Child kind for (parent, label), or nullopt if the chain does not admit it.
std::optional<KeyKind> child_kind(KeyKind parent, std::string_view label);

/// Single-parent derivation. Throws ChainViolation for labels the parent
/// kind does not admit (including every label under CK/IK, which need the
/// two-parent form, and every label under the NAS leaf keys).
Key kdf(const Key &parent, std::string_view label);

/// CK || IK -> K_AUSF.
Key kdf(const Key &ck, const Key &ik, std::string_view label);

struct NasKeys
{
    Key enc;
    Key integrity;
};

/// Walks CK/IK all the way down to K_AMF.
Key derive_kamf(const Key &ck, const Key &ik);
NasKeys derive_nas_keys(const Key &kamf);

/// Deterministic authenticated encryption (SIV construction over the PRF):
/// output is a 16-octet synthetic IV followed by the ciphertext.
Bytes senc(ByteView plaintext, const Key &key);
/// nullopt on wrong key, truncation or tampering.
std::optional<Bytes> sdec(ByteView ciphertext, const Key &key);

/// Throws WrongKeyKind unless key.kind == NASint.
MacTag mac_compute(ByteView ies, ByteView container, const Key &key);
bool mac_verify(ByteView ies, ByteView container, const Key &key, const MacTag &tag);

/// Random challenge derived from (k_perm, seq) for callers without an RNG.
Bytes derive_rand(const Key &k_perm, std::uint64_t seq);

/// Throws WrongKeyKind unless k_perm.kind == Permanent and InvalidArgument
/// if rand is not kRandLength octets.
AuthVector gen_auth_vector(const Key &k_perm, std::uint64_t seq, ByteView rand);
AuthVector gen_auth_vector(const Key &k_perm, std::uint64_t seq);

/// USIM-side verification of AUTN. nullopt means MAC failure, i.e. the
/// challenge was not produced under this permanent key.
std::optional<AkaResult> check_autn(const Key &k_perm, ByteView rand, ByteView autn);

} // namespace ctxsim::crypto
