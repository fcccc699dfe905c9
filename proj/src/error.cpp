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

#include "ctxsim/error.hpp"

namespace ctxsim
{

std::string_view to_string(Errc code)
{
    switch (code)
    {
    case Errc::InvalidArgument:
        return "InvalidArgument";
    case Errc::InvalidState:
        return "InvalidState";
    case Errc::ChainViolation:
        return "ChainViolation";
    case Errc::WrongKeyKind:
        return "WrongKeyKind";
    case Errc::UnsupportedGeneration:
        return "UnsupportedGeneration";
    case Errc::SlotEmpty:
        return "SlotEmpty";
    case Errc::SlotOccupied:
        return "SlotOccupied";
    case Errc::NoCard:
        return "NoCard";
    case Errc::NotRegistered:
        return "NotRegistered";
    case Errc::UnknownSubscriber:
        return "UnknownSubscriber";
    case Errc::UnknownEndpoint:
        return "UnknownEndpoint";
    case Errc::NotObserved:
        return "NotObserved";
    case Errc::AccessDenied:
        return "AccessDenied";
    case Errc::PrerequisiteFailed:
        return "PrerequisiteFailed";
    case Errc::ParseError:
        return "ParseError";
    case Errc::ConfigError:
        return "ConfigError";
    }
    return "Unknown";
}

void fail(Errc code, const std::string &what)
{
    throw Error(code, std::string(to_string(code)) + ": " + what);
}

} // namespace ctxsim
