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

#include <stdexcept>
#include <string>
#include <string_view>

namespace ctxsim
{

enum class Errc
{
    InvalidArgument,
    InvalidState,
    // crypto
    ChainViolation,
    WrongKeyKind,
    // usim
    UnsupportedGeneration,
    // mobile equipment
    SlotEmpty,
    SlotOccupied,
    NoCard,
    NotRegistered,
    // network
    UnknownSubscriber,
    UnknownEndpoint,
    NotObserved,
    // attack harness
    AccessDenied,
    PrerequisiteFailed,
    // io
    ParseError,
    ConfigError,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error
{
  public:
    Error(Errc code, const std::string &what) : std::runtime_error(what), m_code(code)
    {
    }

    Errc code() const noexcept
    {
        return m_code;
    }

  private:
    Errc m_code;
};

[[noreturn]] void fail(Errc code, const std::string &what);

} // namespace ctxsim
