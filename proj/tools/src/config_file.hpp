/*
 * Copyright 2026 The rddce Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rddce/sim.hpp"

namespace rddce::cli {

using Override = std::pair<std::string, std::string>;

/// Splits "key=value"; throws ConfigError when there is no '='.
Override parse_override(std::string_view text);

/// Applies `key = value` lines (with # comments) to `cfg`. Unknown or repeated keys throw ConfigError.
void apply_config_text(std::string_view text, sim::SimConfig& cfg);
void apply_setting(std::string_view key, std::string_view value, sim::SimConfig& cfg);

/// Defaults, then the file (if any), then the overrides; the result is validated.
sim::SimConfig parse_config(const std::string& path, const std::vector<Override>& overrides);

/// Every key in file syntax. Feeding the text back through apply_config_text restores `cfg`.
std::string format_config(const sim::SimConfig& cfg);
std::vector<std::pair<std::string, std::string>> config_entries(const sim::SimConfig& cfg);

std::string format_double(double value);
double parse_double(std::string_view key, std::string_view text);

}  // namespace rddce::cli
