// Copyright 2026 The z2lpg Authors
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


// Named experiment bundles. The YAML sources live in tools/presets and are
// compiled into the binary.

#pragma once

#include <span>
#include <string_view>

namespace z2lpg::cli {

struct Preset {
  std::string_view name;
  std::string_view yaml;
};

std::span<const Preset> presets();
/// nullptr when no preset has that name.
const Preset* find_preset(std::string_view name);

}  // namespace z2lpg::cli
