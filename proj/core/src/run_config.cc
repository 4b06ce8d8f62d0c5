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

#include "cyclip/run_config.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <type_traits>
#include <sstream>

#include "cyclip/csv.h"
#include "cyclip/error.h"

namespace cyclip {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void BadValue(std::string_view key, std::string_view value) {
  throw Error(ErrorCode::kParseError,
              "bad value '" + std::string(value) + "' for key '" + std::string(key) + "'");
}

template <typename T>
T ParseNumber(std::string_view key, std::string_view value) {
  T out{};
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) BadValue(key, value);
  return out;
}

std::vector<std::size_t> ParseSizeList(std::string_view key, std::string_view value) {
  std::vector<std::size_t> out;
  while (true) {
    const auto comma = value.find(',');
    out.push_back(ParseNumber<std::size_t>(key, Trim(value.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

std::string FormatSizeList(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

struct Field {
  std::string_view key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

// Binds `key` to a numeric member reached through `access`.
template <typename T, typename Access>
Field NumField(std::string_view key, Access access) {
  return {key,
          [key, access](RunConfig& c, std::string_view v) {
            access(c) = ParseNumber<T>(key, v);
          },
          [access](const RunConfig& c) {
            if constexpr (std::is_floating_point_v<T>) {
              return FormatDouble(access(const_cast<RunConfig&>(c)));
            } else {
              return std::to_string(access(const_cast<RunConfig&>(c)));
            }
          }};
}

const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = [] {
    std::vector<Field> f;
    f.push_back({"variant",
                 [](RunConfig& c, std::string_view v) {
                   const auto parsed = ParseVariant(v);
                   if (!parsed) BadValue("variant", v);
                   c.train.SetVariant(*parsed);
                 },
                 [](const RunConfig& c) { return std::string(VariantName(c.train.variant)); }});
    f.push_back(NumField<double>("lambda1", [](RunConfig& c) -> double& {
      return c.train.weights.lambda1;
    }));
    f.push_back(NumField<double>("lambda2", [](RunConfig& c) -> double& {
      return c.train.weights.lambda2;
    }));
    f.push_back(NumField<std::size_t>("epochs", [](RunConfig& c) -> std::size_t& {
      return c.train.epochs;
    }));
    f.push_back(NumField<std::size_t>("batch_size", [](RunConfig& c) -> std::size_t& {
      return c.train.batch_size;
    }));
    f.push_back(NumField<double>("base_lr", [](RunConfig& c) -> double& {
      return c.train.base_lr;
    }));
    f.push_back(NumField<double>("adam_beta1", [](RunConfig& c) -> double& {
      return c.train.adam_beta1;
    }));
    f.push_back(NumField<double>("adam_beta2", [](RunConfig& c) -> double& {
      return c.train.adam_beta2;
    }));
    f.push_back(NumField<double>("adam_eps", [](RunConfig& c) -> double& {
      return c.train.adam_eps;
    }));
    f.push_back(NumField<double>("weight_decay", [](RunConfig& c) -> double& {
      return c.train.weight_decay;
    }));
    f.push_back(NumField<std::uint64_t>("warmup_steps", [](RunConfig& c) -> std::uint64_t& {
      return c.train.warmup_steps;
    }));
    f.push_back(NumField<std::uint64_t>("seed", [](RunConfig& c) -> std::uint64_t& {
      return c.train.seed;
    }));
    f.push_back(NumField<std::size_t>("hidden_dim", [](RunConfig& c) -> std::size_t& {
      return c.train.hidden_dim;
    }));
    f.push_back(NumField<std::size_t>("embed_dim", [](RunConfig& c) -> std::size_t& {
      return c.train.embed_dim;
    }));
    f.push_back(NumField<double>("init_logit_scale", [](RunConfig& c) -> double& {
      return c.train.init_logit_scale;
    }));
    f.push_back(NumField<std::size_t>("num_superclasses", [](RunConfig& c) -> std::size_t& {
      return c.data.num_superclasses;
    }));
    f.push_back({"children_per_parent",
                 [](RunConfig& c, std::string_view v) {
                   c.data.children_per_parent = ParseSizeList("children_per_parent", v);
                 },
                 [](const RunConfig& c) { return FormatSizeList(c.data.children_per_parent); }});
    f.push_back(NumField<std::size_t>("latent_dim", [](RunConfig& c) -> std::size_t& {
      return c.data.latent_dim;
    }));
    f.push_back(NumField<std::size_t>("image_dim", [](RunConfig& c) -> std::size_t& {
      return c.data.image_dim;
    }));
    f.push_back(NumField<std::size_t>("text_dim", [](RunConfig& c) -> std::size_t& {
      return c.data.text_dim;
    }));
    f.push_back(NumField<std::size_t>("num_templates", [](RunConfig& c) -> std::size_t& {
      return c.data.num_templates;
    }));
    f.push_back(NumField<double>("noise_sigma", [](RunConfig& c) -> double& {
      return c.data.noise_sigma;
    }));
    f.push_back(NumField<double>("parent_sigma", [](RunConfig& c) -> double& {
      return c.data.parent_sigma;
    }));
    f.push_back(NumField<double>("child_sigma", [](RunConfig& c) -> double& {
      return c.data.child_sigma;
    }));
    f.push_back(NumField<std::size_t>("train_size", [](RunConfig& c) -> std::size_t& {
      return c.data.train_size;
    }));
    f.push_back(NumField<std::size_t>("test_size", [](RunConfig& c) -> std::size_t& {
      return c.data.test_size;
    }));
    f.push_back(NumField<std::uint64_t>("data_seed", [](RunConfig& c) -> std::uint64_t& {
      return c.data.seed;
    }));
    f.push_back(NumField<std::size_t>("probe_epochs", [](RunConfig& c) -> std::size_t& {
      return c.probe.epochs;
    }));
    f.push_back(NumField<std::size_t>("probe_batch_size", [](RunConfig& c) -> std::size_t& {
      return c.probe.batch_size;
    }));
    f.push_back(NumField<double>("probe_lr", [](RunConfig& c) -> double& {
      return c.probe.learning_rate;
    }));
    f.push_back(NumField<double>("probe_weight_decay", [](RunConfig& c) -> double& {
      return c.probe.weight_decay;
    }));
    f.push_back(NumField<std::uint64_t>("probe_seed", [](RunConfig& c) -> std::uint64_t& {
      return c.probe.seed;
    }));
    return f;
  }();
  return fields;
}

}  // namespace

const std::vector<std::string_view>& RunConfigKeys() {
  static const std::vector<std::string_view> keys = [] {
    std::vector<std::string_view> k;
    for (const auto& f : Fields()) k.push_back(f.key);
    return k;
  }();
  return keys;
}

RunConfig ParseRunConfig(std::string_view text) {
  std::map<std::string, std::string, std::less<>> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(Trim(line.substr(0, eq)));
    const std::string value(Trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": empty key or value");
    }
    const auto& keys = RunConfigKeys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (!entries.emplace(key, value).second) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }

  // Field order puts `variant` before the lambda overrides.
  RunConfig cfg;
  for (const auto& f : Fields()) {
    if (auto it = entries.find(f.key); it != entries.end()) f.set(cfg, it->second);
  }
  cfg.data.Validate();
  cfg.train.Validate();
  return cfg;
}

std::string SerializeRunConfig(const RunConfig& cfg) {
  std::string out;
  for (const auto& f : Fields()) {
    out += f.key;
    out += " = ";
    out += f.get(cfg);
    out += '\n';
  }
  return out;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseRunConfig(ss.str());
}

void SaveRunConfig(const std::filesystem::path& path, const RunConfig& cfg) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  out << SerializeRunConfig(cfg);
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

}  // namespace cyclip
