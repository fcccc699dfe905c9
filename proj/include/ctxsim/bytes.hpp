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

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ctxsim
{

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

std::string to_hex(ByteView data);
std::optional<Bytes> from_hex(std::string_view hex);

Bytes to_bytes(std::string_view text);
std::string to_text(ByteView data);

void append(Bytes &out, ByteView data);
void append(Bytes &out, std::string_view text);
void append_u8(Bytes &out, std::uint8_t v);
void append_be32(Bytes &out, std::uint32_t v);
void append_be64(Bytes &out, std::uint64_t v);

std::uint32_t read_be32(ByteView data);
std::uint64_t read_be64(ByteView data);

/// Sequential reader over a byte buffer. Every read is bounds-checked and
/// reports failure through ok() instead of throwing.
class ByteReader
{
  public:
    explicit ByteReader(ByteView data) : m_data(data)
    {
    }

    std::optional<std::uint8_t> u8();
    std::optional<std::uint32_t> be32();
    std::optional<std::uint64_t> be64();
    std::optional<ByteView> take(std::size_t n);
    // one-octet length prefix followed by the field body
    std::optional<ByteView> field();

    bool at_end() const
    {
        return m_pos == m_data.size();
    }

  private:
    ByteView m_data;
    std::size_t m_pos = 0;
};

/// Deterministic random source shared by a simulation run.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : m_engine(seed)
    {
    }

    std::uint64_t next_u64()
    {
        return m_engine();
    }

    // uniform in [0, bound) for bound > 0
    std::uint64_t below(std::uint64_t bound);
    Bytes bytes(std::size_t n);
    std::string digits(std::size_t n);

  private:
    std::mt19937_64 m_engine;
};

} // namespace ctxsim
