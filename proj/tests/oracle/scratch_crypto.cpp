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

#include "scratch_crypto.hpp"

#include <stdexcept>
#include <string>

namespace oracle
{

namespace
{

std::uint8_t xtime(std::uint8_t x)
{
    return static_cast<std::uint8_t>((x << 1) ^ ((x & 0x80) ? 0x1b : 0));
}

std::uint8_t gmul(std::uint8_t a, std::uint8_t b)
{
    std::uint8_t p = 0;
    while (b)
    {
        if (b & 1)
            p ^= a;
        a = xtime(a);
        b >>= 1;
    }
    return p;
}

// S-box from the field inverse and affine map rather than a pasted table
std::array<std::uint8_t, 256> make_sbox()
{
    std::array<std::uint8_t, 256> s{};
    for (int x = 0; x < 256; x++)
    {
        std::uint8_t inv = 0;
        if (x)
            for (int y = 1; y < 256; y++)
                if (gmul(static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y)) == 1)
                {
                    inv = static_cast<std::uint8_t>(y);
                    break;
                }
        std::uint8_t b = inv, r = inv;
        for (int i = 0; i < 4; i++)
        {
            b = static_cast<std::uint8_t>((b << 1) | (b >> 7));
            r ^= b;
        }
        s[x] = r ^ 0x63;
    }
    return s;
}

const std::array<std::uint8_t, 256> &sbox()
{
    static const auto s = make_sbox();
    return s;
}

Block dbl(const Block &in)
{
    Block out{};
    for (int i = 0; i < 16; i++)
        out[i] = static_cast<std::uint8_t>((in[i] << 1) | (i < 15 ? in[i + 1] >> 7 : 0));
    if (in[0] & 0x80)
        out[15] ^= 0x87;
    return out;
}

Block block_of(const Octets &o)
{
    if (o.size() != 16)
        throw std::logic_error("expected 16 octets");
    Block b{};
    std::copy(o.begin(), o.end(), b.begin());
    return b;
}

void append(Octets &out, const Octets &in)
{
    out.insert(out.end(), in.begin(), in.end());
}

} // namespace

Block aes128_encrypt(const Block &key, const Block &plain)
{
    const auto &S = sbox();
    std::array<std::uint8_t, 176> w{};
    std::copy(key.begin(), key.end(), w.begin());
    std::uint8_t rcon = 1;
    for (int i = 16; i < 176; i += 4)
    {
        std::uint8_t t[4] = {w[i - 4], w[i - 3], w[i - 2], w[i - 1]};
        if (i % 16 == 0)
        {
            std::uint8_t first = t[0];
            t[0] = S[t[1]] ^ rcon;
            t[1] = S[t[2]];
            t[2] = S[t[3]];
            t[3] = S[first];
            rcon = xtime(rcon);
        }
        for (int j = 0; j < 4; j++)
            w[i + j] = w[i - 16 + j] ^ t[j];
    }

    Block s = plain;
    auto add_round_key = [&](int round) {
        for (int i = 0; i < 16; i++)
            s[i] ^= w[round * 16 + i];
    };
    add_round_key(0);
    for (int round = 1; round <= 10; round++)
    {
        for (auto &b : s)
            b = S[b];
        // state is column-major: s[c*4 + r]
        Block t = s;
        for (int r = 1; r < 4; r++)
            for (int c = 0; c < 4; c++)
                s[c * 4 + r] = t[((c + r) % 4) * 4 + r];
        if (round != 10)
            for (int c = 0; c < 4; c++)
            {
                std::uint8_t a0 = s[c * 4], a1 = s[c * 4 + 1], a2 = s[c * 4 + 2], a3 = s[c * 4 + 3];
                s[c * 4] = gmul(a0, 2) ^ gmul(a1, 3) ^ a2 ^ a3;
                s[c * 4 + 1] = a0 ^ gmul(a1, 2) ^ gmul(a2, 3) ^ a3;
                s[c * 4 + 2] = a0 ^ a1 ^ gmul(a2, 2) ^ gmul(a3, 3);
                s[c * 4 + 3] = gmul(a0, 3) ^ a1 ^ a2 ^ gmul(a3, 2);
            }
        add_round_key(round);
    }
    return s;
}

Block cmac(const Block &key, const Octets &msg)
{
    Block l = aes128_encrypt(key, Block{});
    Block k1 = dbl(l), k2 = dbl(k1);

    std::size_t n = msg.empty() ? 1 : (msg.size() + 15) / 16;
    bool complete = !msg.empty() && msg.size() % 16 == 0;
    Block x{};
    for (std::size_t i = 0; i < n; i++)
    {
        Block m{};
        std::size_t off = i * 16;
        if (i + 1 < n)
            std::copy(msg.begin() + off, msg.begin() + off + 16, m.begin());
        else if (complete)
        {
            std::copy(msg.begin() + off, msg.end(), m.begin());
            for (int j = 0; j < 16; j++)
                m[j] ^= k1[j];
        }
        else
        {
            std::size_t rest = msg.size() - off;
            std::copy(msg.begin() + off, msg.end(), m.begin());
            m[rest] = 0x80;
            for (int j = 0; j < 16; j++)
                m[j] ^= k2[j];
        }
        for (int j = 0; j < 16; j++)
            x[j] ^= m[j];
        x = aes128_encrypt(key, x);
    }
    return x;
}

Octets hex(std::string_view t)
{
    auto nib = [](char c) -> int {
        if (c >= '0' && c <= '9')
            return c - '0';
        if (c >= 'a' && c <= 'f')
            return c - 'a' + 10;
        if (c >= 'A' && c <= 'F')
            return c - 'A' + 10;
        throw std::invalid_argument("bad hex");
    };
    Octets out;
    for (std::size_t i = 0; i + 1 < t.size(); i += 2)
        out.push_back(static_cast<std::uint8_t>(nib(t[i]) << 4 | nib(t[i + 1])));
    return out;
}

std::string to_hex(const Octets &data)
{
    static const char *digits = "0123456789abcdef";
    std::string s;
    for (auto b : data)
    {
        s += digits[b >> 4];
        s += digits[b & 15];
    }
    return s;
}

Octets octets(const Block &b)
{
    return Octets(b.begin(), b.end());
}

Octets text(std::string_view s)
{
    return Octets(s.begin(), s.end());
}

Block kdf(const Block &parent, std::string_view label)
{
    Octets m = text("KDF");
    m.push_back(static_cast<std::uint8_t>(label.size()));
    append(m, text(label));
    return cmac(parent, m);
}

Block kdf_ausf(const Block &ck, const Block &ik)
{
    Octets m = text("KDF");
    m.push_back(4);
    append(m, text("AUSF"));
    append(m, octets(ik));
    return cmac(ck, m);
}

Block kamf(const Block &ck, const Block &ik)
{
    return kdf(kdf(kdf_ausf(ck, ik), "SEAF"), "AMF");
}

Octets senc(const Block &key, const Octets &plain)
{
    Block siv = cmac(key, text("SENC-SIV"));
    Block ctr = cmac(key, text("SENC-CTR"));
    Block iv = cmac(siv, plain);
    Octets out = octets(iv);
    for (std::size_t off = 0, blk = 0; off < plain.size(); off += 16, blk++)
    {
        Octets c = octets(iv);
        for (int sh = 24; sh >= 0; sh -= 8)
            c.push_back(static_cast<std::uint8_t>(blk >> sh));
        Block ks = cmac(ctr, c);
        for (std::size_t i = 0; i < 16 && off + i < plain.size(); i++)
            out.push_back(plain[off + i] ^ ks[i]);
    }
    return out;
}

Octets mac(const Block &k, const Octets &ies, const Octets &container)
{
    Octets m = text("MAC");
    for (int sh = 24; sh >= 0; sh -= 8)
        m.push_back(static_cast<std::uint8_t>(ies.size() >> sh));
    append(m, ies);
    append(m, container);
    Block full = cmac(k, m);
    return Octets(full.begin(), full.begin() + 8);
}

Octets rand_for(const Block &k, std::uint64_t seq)
{
    Octets m = text("RAND");
    for (int sh = 56; sh >= 0; sh -= 8)
        m.push_back(static_cast<std::uint8_t>(seq >> sh));
    return octets(cmac(k, m));
}

Vector auth_vector(const Block &k, std::uint64_t seq, const Octets &rand)
{
    Vector v;
    v.rand = rand;
    Octets sqn;
    for (int sh = 40; sh >= 0; sh -= 8)
        sqn.push_back(static_cast<std::uint8_t>(seq >> sh));
    Octets amf{0x80, 0x00};
    Octets m = text("AUTN");
    append(m, rand);
    append(m, sqn);
    append(m, amf);
    Block mac_a = cmac(k, m);
    v.autn = sqn;
    append(v.autn, amf);
    v.autn.insert(v.autn.end(), mac_a.begin(), mac_a.begin() + 8);

    auto with = [&](std::string_view label) {
        Octets msg = text(label);
        append(msg, rand);
        return cmac(k, msg);
    };
    Block res = with("RES");
    v.xres.assign(res.begin(), res.begin() + 8);
    v.ck = with("CK");
    v.ik = with("IK");
    return v;
}

} // namespace oracle
