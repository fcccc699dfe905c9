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

#include <filesystem>
#include <string>
#include <string_view>

#include "ctxsim/usim.hpp"

// Text image of a card, used by the CLI to persist real and fake cards:
//
//   usim-card-image 1
//   iccid <digits>
//   supi <digits>
//   k_permanent <32 hex>
//   pin <digits> enabled=<0|1> retries=<left>/<limit>
//   seq <n>
//   supports_5g_context <0|1>
//   programmable <0|1>
//   files <count>
//   <file-id-hex> <read-cond> <update-cond> <body-hex or ->
//   ...
//   end
//
// File lines are emitted in ascending id order, so editing one file body
// changes exactly one line.
namespace ctxsim::usim
{

std::string save_card_image(const CardImage &card);

/// Throws ParseError naming the line and byte offset of the first problem.
CardImage load_card_image(std::string_view text);

void write_card_image(const std::filesystem::path &path, const CardImage &card);
CardImage read_card_image(const std::filesystem::path &path);

} // namespace ctxsim::usim
