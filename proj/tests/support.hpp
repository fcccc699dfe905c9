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

#include <random>

#include "ctxsim/bytes.hpp"
#include "ctxsim/crypto.hpp"
#include "scratch_crypto.hpp"

namespace test
{

inline ctxsim::Bytes random_bytes(std::mt19937_64 &g, std::size_t n)
{
    ctxsim::Bytes b(n);
    for (auto &x : b)
        x = static_cast<std::uint8_t>(g());
    return b;
}

inline oracle::Block random_block(std::mt19937_64 &g)
{
    oracle::Block b{};
    for (auto &x : b)
        x = static_cast<std::uint8_t>(g());
    return b;
}

inline ctxsim::crypto::Key key_of(const oracle::Block &b, ctxsim::crypto::KeyKind kind)
{
    return ctxsim::crypto::Key::from(b, kind);
}

inline oracle::Octets octets(ctxsim::ByteView v)
{
    return oracle::Octets(v.begin(), v.end());
}

} // namespace test
