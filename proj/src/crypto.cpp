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

#include "ctxsim/crypto.hpp"

#include <memory>

#include <openssl/core_names.h>
#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/params.h>

#include "ctxsim/error.hpp"

namespace ctxsim::crypto
{

namespace
{

struct MacDeleter
{
    void operator()(EVP_MAC *mac) const
    {
        EVP_MAC_free(mac);
    }
};

struct MacCtxDeleter
{
    void operator()(EVP_MAC_CTX *ctx) const
    {
        EVP_MAC_CTX_free(ctx);
    }
};

EVP_MAC *cmac_algorithm()
{
    static std::unique_ptr<EVP_MAC, MacDeleter> mac{EVP_MAC_fetch(nullptr, "CMAC", nullptr)};
    if (!mac)
        throw std::runtime_error("OpenSSL CMAC implementation unavailable");
    return mac.get();
}

Bytes labeled(std::string_view label, ByteView data = {})
{
    Bytes out;
    append(out, label);
    append(out, data);
    return out;
}

Key make_key(const std::array<std::uint8_t, 16> &raw, KeyKind kind)
{
    Key k;
    k.bytes = raw;
    k.kind = kind;
    return k;
}

constexpr std::uint64_t kMaxSeq = (std::uint64_t{1} << 48) - 1;
constexpr std::uint8_t kAmfField[2] = {0x80, 0x00};

Bytes encode_sqn(std::uint64_t seq)
{
    Bytes out;
    for (int shift = 40; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>(seq >> shift));
    return out;
}

Bytes autn_mac(const Key &k_perm, ByteView rand, ByteView sqn, ByteView amf_field)
{
    Bytes msg = labeled("AUTN", rand);
    append(msg, sqn);
    append(msg, amf_field);
    auto full = prf(k_perm.bytes, msg);
    return Bytes(full.begin(), full.begin() + kMacLength);
}

} // namespace

std::string_view to_string(KeyKind kind)
{
    switch (kind)
    {
    case KeyKind::Permanent:
        return "K";
    case KeyKind::CK:
        return "CK";
    case KeyKind::IK:
        return "IK";
    case KeyKind::AUSF:
        return "K_AUSF";
    case KeyKind::SEAF:
        return "K_SEAF";
    case KeyKind::AMF:
        return "K_AMF";
    case KeyKind::NASenc:
        return "K_NASenc";
    case KeyKind::NASint:
        return "K_NASint";
    }
    return "?";
}

Key Key::from(ByteView data, KeyKind kind)
{
    if (data.size() != kKeyLength)
        fail(Errc::InvalidArgument, "key must be 16 octets, got " + std::to_string(data.size()));
    Key k;
    std::copy(data.begin(), data.end(), k.bytes.begin());
    k.kind = kind;
    return k;
}

std::array<std::uint8_t, 16> prf(const KeyBytes &key, ByteView message)
{
    std::unique_ptr<EVP_MAC_CTX, MacCtxDeleter> ctx{EVP_MAC_CTX_new(cmac_algorithm())};
    char cipher[] = "AES-128-CBC";
    OSSL_PARAM params[] = {
        OSSL_PARAM_construct_utf8_string(OSSL_MAC_PARAM_CIPHER, cipher, 0),
        OSSL_PARAM_construct_end(),
    };
    std::array<std::uint8_t, 16> out{};
    std::size_t written = 0;
    if (!ctx || EVP_MAC_init(ctx.get(), key.data(), key.size(), params) != 1 ||
        EVP_MAC_update(ctx.get(), message.data(), message.size()) != 1 ||
        EVP_MAC_final(ctx.get(), out.data(), &written, out.size()) != 1 || written != out.size())
        throw std::runtime_error("AES-CMAC computation failed");
    return out;
}

std::optional<KeyKind> child_kind(KeyKind parent, std::string_view label)
{
    switch (parent)
    {
    case KeyKind::AUSF:
        if (label == label::kSeaf)
            return KeyKind::SEAF;
        break;
    case KeyKind::SEAF:
        if (label == label::kAmf)
            return KeyKind::AMF;
        break;
    case KeyKind::AMF:
        if (label == label::kNasEnc)
            return KeyKind::NASenc;
        if (label == label::kNasInt)
            return KeyKind::NASint;
        break;
    default:
        break;
    }
    return std::nullopt;
}

Key kdf(const Key &parent, std::string_view label)
{
    auto kind = child_kind(parent.kind, label);
    if (!kind)
        fail(Errc::ChainViolation, std::string(to_string(parent.kind)) + " has no child \"" + std::string(label) + "\"");

    Bytes msg = labeled("KDF");
    append_u8(msg, static_cast<std::uint8_t>(label.size()));
    append(msg, label);
    return make_key(prf(parent.bytes, msg), *kind);
}

Key kdf(const Key &ck, const Key &ik, std::string_view label)
{
    if (ck.kind != KeyKind::CK || ik.kind != KeyKind::IK || label != label::kAusf)
        fail(Errc::ChainViolation, "only CK || IK with label AUSF derives K_AUSF");

    Bytes msg = labeled("KDF");
    append_u8(msg, static_cast<std::uint8_t>(label.size()));
    append(msg, label);
    append(msg, ik.view());
    return make_key(prf(ck.bytes, msg), KeyKind::AUSF);
}

Key derive_kamf(const Key &ck, const Key &ik)
{
    Key kausf = kdf(ck, ik, label::kAusf);
    Key kseaf = kdf(kausf, label::kSeaf);
    return kdf(kseaf, label::kAmf);
}

NasKeys derive_nas_keys(const Key &kamf)
{
    return NasKeys{kdf(kamf, label::kNasEnc), kdf(kamf, label::kNasInt)};
}

namespace
{

void apply_keystream(const KeyBytes &ctr_key, ByteView iv, ByteView in, Bytes &out)
{
    std::uint32_t block = 0;
    for (std::size_t offset = 0; offset < in.size(); offset += 16, block++)
    {
        Bytes counter(iv.begin(), iv.end());
        append_be32(counter, block);
        auto ks = prf(ctr_key, counter);
        for (std::size_t i = 0; i < 16 && offset + i < in.size(); i++)
            out.push_back(in[offset + i] ^ ks[i]);
    }
}

} // namespace

Bytes senc(ByteView plaintext, const Key &key)
{
    auto siv_key = prf(key.bytes, to_bytes("SENC-SIV"));
    auto ctr_key = prf(key.bytes, to_bytes("SENC-CTR"));
    auto iv = prf(siv_key, plaintext);

    Bytes out(iv.begin(), iv.end());
    apply_keystream(ctr_key, iv, plaintext, out);
    return out;
}

std::optional<Bytes> sdec(ByteView ciphertext, const Key &key)
{
    if (ciphertext.size() < kSivLength)
        return std::nullopt;
    auto siv_key = prf(key.bytes, to_bytes("SENC-SIV"));
    auto ctr_key = prf(key.bytes, to_bytes("SENC-CTR"));
    auto iv = ciphertext.first(kSivLength);

    Bytes plain;
    plain.reserve(ciphertext.size() - kSivLength);
    apply_keystream(ctr_key, iv, ciphertext.subspan(kSivLength), plain);

    auto expected = prf(siv_key, plain);
    if (CRYPTO_memcmp(expected.data(), iv.data(), kSivLength) != 0)
        return std::nullopt;
    return plain;
}

MacTag mac_compute(ByteView ies, ByteView container, const Key &key)
{
    if (key.kind != KeyKind::NASint)
        fail(Errc::WrongKeyKind, "NAS MAC requires K_NASint, got " + std::string(to_string(key.kind)));

    Bytes msg = labeled("MAC");
    append_be32(msg, static_cast<std::uint32_t>(ies.size()));
    append(msg, ies);
    append(msg, container);
    auto full = prf(key.bytes, msg);

    MacTag tag;
    std::copy_n(full.begin(), kMacLength, tag.tag.begin());
    return tag;
}

bool mac_verify(ByteView ies, ByteView container, const Key &key, const MacTag &tag)
{
    auto expected = mac_compute(ies, container, key);
    return CRYPTO_memcmp(expected.tag.data(), tag.tag.data(), kMacLength) == 0;
}

Bytes derive_rand(const Key &k_perm, std::uint64_t seq)
{
    Bytes msg = labeled("RAND");
    append_be64(msg, seq);
    auto r = prf(k_perm.bytes, msg);
    return Bytes(r.begin(), r.end());
}

AuthVector gen_auth_vector(const Key &k_perm, std::uint64_t seq, ByteView rand)
{
    if (k_perm.kind != KeyKind::Permanent)
        fail(Errc::WrongKeyKind, "auth vectors require the permanent key");
    if (rand.size() != kRandLength)
        fail(Errc::InvalidArgument, "RAND must be 16 octets");
    if (seq > kMaxSeq)
        fail(Errc::InvalidArgument, "sequence number exceeds 48 bits");

    AuthVector v;
    v.rand.assign(rand.begin(), rand.end());

    Bytes sqn = encode_sqn(seq);
    v.autn = sqn;
    append(v.autn, ByteView(kAmfField, 2));
    append(v.autn, autn_mac(k_perm, rand, sqn, ByteView(kAmfField, 2)));

    auto res = prf(k_perm.bytes, labeled("RES", rand));
    v.xres.assign(res.begin(), res.begin() + kResLength);
    v.ck = make_key(prf(k_perm.bytes, labeled("CK", rand)), KeyKind::CK);
    v.ik = make_key(prf(k_perm.bytes, labeled("IK", rand)), KeyKind::IK);
    return v;
}

AuthVector gen_auth_vector(const Key &k_perm, std::uint64_t seq)
{
    return gen_auth_vector(k_perm, seq, derive_rand(k_perm, seq));
}

std::optional<AkaResult> check_autn(const Key &k_perm, ByteView rand, ByteView autn)
{
    if (k_perm.kind != KeyKind::Permanent)
        fail(Errc::WrongKeyKind, "AUTN check requires the permanent key");
    if (rand.size() != kRandLength || autn.size() != kAutnLength)
        return std::nullopt;

    auto sqn = autn.first(6);
    auto expected = autn_mac(k_perm, rand, sqn, autn.subspan(6, 2));
    if (CRYPTO_memcmp(expected.data(), autn.data() + 8, kMacLength) != 0)
        return std::nullopt;

    AkaResult out;
    for (auto b : sqn)
        out.seq = (out.seq << 8) | b;
    auto res = prf(k_perm.bytes, labeled("RES", rand));
    out.res.assign(res.begin(), res.begin() + kResLength);
    out.ck = make_key(prf(k_perm.bytes, labeled("CK", rand)), KeyKind::CK);
    out.ik = make_key(prf(k_perm.bytes, labeled("IK", rand)), KeyKind::IK);
    return out;
}

} // namespace ctxsim::crypto
