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

// Test-side reference for the simulator's crypto: a from-scratch AES-128
// and CMAC, and the derivation layouts rebuilt on top of them. Shares no
// code with the library.

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace oracle
{

using Block = std::array<std::uint8_t, 16>;
using Octets = std::vector<std::uint8_t>;

Block aes128_encrypt(const Block &key, const Block &plain);
Block cmac(const Block &key, const Octets &msg);

Octets hex(std::string_view text);
std::string to_hex(const Octets &data);
Octets octets(const Block &b);
Octets text(std::string_view s);

Block kdf(const Block &parent, std::string_view label);
Block kdf_ausf(const Block &ck, const Block &ik);
Block kamf(const Block &ck, const Block &ik);
Octets senc(const Block &key, const Octets &plain);
Octets mac(const Block &k_nasint, const Octets &ies, const Octets &container);

struct Vector
{
    Octets rand, autn, xres;
    Block ck, ik;
};
Octets rand_for(const Block &k, std::uint64_t seq);
Vector auth_vector(const Block &k, std::uint64_t seq, const Octets &rand);

} // namespace oracle
