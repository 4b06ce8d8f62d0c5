// Copyright 2026 The cyclip Authors. All Rights Reserved.
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

// Flat `key = value` run configuration shared by every CLI subcommand.
//
//   # comment
//   variant = cyclip
//   epochs = 30
//   children_per_parent = 4        # or one entry per superclass: 3,4,5
//
// Keys may appear in any order; unknown and duplicate keys are errors.
// `variant` selects the named lambda pair, and explicit `lambda1` /
// `lambda2` keys override it regardless of where they appear.

#ifndef CYCLIP_RUN_CONFIG_H_
#define CYCLIP_RUN_CONFIG_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cyclip/datagen.h"
#include "cyclip/metrics.h"
#include "cyclip/training.h"

namespace cyclip {

struct RunConfig {
  GeneratorConfig data;
  TrainConfig train;
  LinearProbeConfig probe;

  bool operator==(const RunConfig& other) const = default;
};

// Every key the parser accepts, in serialization order.
const std::vector<std::string_view>& RunConfigKeys();

// Throws kParseError (syntax, unknown or duplicate key, malformed value) and
// kBadConfig (values out of range).
RunConfig ParseRunConfig(std::string_view text);
std::string SerializeRunConfig(const RunConfig& cfg);

RunConfig LoadRunConfig(const std::filesystem::path& path);
void SaveRunConfig(const std::filesystem::path& path, const RunConfig& cfg);

}  // namespace cyclip

#endif  // CYCLIP_RUN_CONFIG_H_
