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
#include <string_view>

namespace ctxsim::text
{

std::string_view trim(std::string_view s);

/// on/off, yes/no, true/false, 1/0
std::optional<bool> parse_flag(std::string_view s);
std::optional<std::uint64_t> parse_u64(std::string_view s);

} // namespace ctxsim::text
