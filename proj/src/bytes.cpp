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

#include "ctxsim/bytes.hpp"

namespace ctxsim
{

namespace
{

int hex_value(char c)
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

} // namespace

std::string to_hex(ByteView data)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (auto b : data)
    {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0F]);
    }
    return out;
}

std::optional<Bytes> from_hex(std::string_view hex)
{
    if (hex.size() % 2 != 0)
        return std::nullopt;
    Bytes out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2)
    {
        int hi = hex_value(hex[i]);
        int lo = hex_value(hex[i + 1]);
        if (hi < 0 || lo < 0)
            return std::nullopt;
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

Bytes to_bytes(std::string_view text)
{
    return Bytes(text.begin(), text.end());
}

std::string to_text(ByteView data)
{
    return std::string(data.begin(), data.end());
}

void append(Bytes &out, ByteView data)
{
    out.insert(out.end(), data.begin(), data.end());
}

void append(Bytes &out, std::string_view text)
{
    out.insert(out.end(), text.begin(), text.end());
}

void append_u8(Bytes &out, std::uint8_t v)
{
    out.push_back(v);
}

void append_be32(Bytes &out, std::uint32_t v)
{
    for (int shift = 24; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void append_be64(Bytes &out, std::uint64_t v)
{
    for (int shift = 56; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint32_t read_be32(ByteView data)
{
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < 4; i++)
        v = (v << 8) | data[i];
    return v;
}

std::uint64_t read_be64(ByteView data)
{
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < 8; i++)
        v = (v << 8) | data[i];
    return v;
}

std::optional<std::uint8_t> ByteReader::u8()
{
    if (m_pos + 1 > m_data.size())
        return std::nullopt;
    return m_data[m_pos++];
}

std::optional<std::uint32_t> ByteReader::be32()
{
    auto raw = take(4);
    if (!raw)
        return std::nullopt;
    return read_be32(*raw);
}

std::optional<std::uint64_t> ByteReader::be64()
{
    auto raw = take(8);
    if (!raw)
        return std::nullopt;
    return read_be64(*raw);
}

std::optional<ByteView> ByteReader::take(std::size_t n)
{
    if (n > m_data.size() - m_pos)
        return std::nullopt;
    auto view = m_data.subspan(m_pos, n);
    m_pos += n;
    return view;
}

std::optional<ByteView> ByteReader::field()
{
    auto len = u8();
    if (!len)
        return std::nullopt;
    return take(*len);
}

std::uint64_t Rng::below(std::uint64_t bound)
{
    // rejection sampling keeps the result independent of the library's
    // distribution implementation
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do
    {
        v = m_engine();
    } while (v >= limit);
    return v % bound;
}

Bytes Rng::bytes(std::size_t n)
{
    Bytes out(n);
    for (auto &b : out)
        b = static_cast<std::uint8_t>(m_engine() >> 56);
    return out;
}

std::string Rng::digits(std::size_t n)
{
    std::string out(n, '0');
    for (auto &c : out)
        c = static_cast<char>('0' + below(10));
    return out;
}

} // namespace ctxsim
