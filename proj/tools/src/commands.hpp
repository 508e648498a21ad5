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

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "config_file.hpp"

namespace rddce::cli {

enum class Format { csv, json };

struct Invocation {
  std::string subcommand;
  std::string config_path;
  std::vector<Override> overrides;
  /// Empty writes to standard output.
  std::string output_path;
  Format format = Format::csv;
  std::size_t threads = 0;
  std::vector<double> snr_db;
  std::vector<double> lambdas;
  std::vector<std::string> methods;
  std::vector<std::string> channels;
  std::vector<std::string> metrics;
  std::size_t groups = 1000;
};

enum ExitCode : int { kSuccess = 0, kConfigError = 1, kRuntimeAbort = 2 };

/// Runs one subcommand. Diagnostics go to `err`; results go to the output path or `out`.
int execute(const Invocation& invocation, std::ostream& out, std::ostream& err);

}  // namespace rddce::cli
