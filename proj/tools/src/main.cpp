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


#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "rddce/errors.hpp"

namespace {

void add_common(CLI::App* sub, rddce::cli::Invocation& inv, std::vector<std::string>& overrides) {
  sub->add_option("-c,--config", inv.config_path, "Configuration file (key = value lines)")
      ->check(CLI::ExistingFile);
  sub->add_option("-o,--output", inv.output_path, "Output file (default: standard output)");
  sub->add_option("-f,--format", inv.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, rddce::cli::Format>{{"csv", rddce::cli::Format::csv},
                                                    {"json", rddce::cli::Format::json}}));
  sub->add_option("-j,--threads", inv.threads, "Worker threads (0 = all cores)");
  sub->add_option("overrides", overrides, "Configuration overrides as key=value");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision-directed OFDM channel tracking simulator"};
  app.require_subcommand(1);
  rddce::cli::Invocation inv;
  std::vector<std::string> overrides;

  auto* run = app.add_subcommand("run", "Per-frame Acc and channel MSE of one configuration");
  add_common(run, inv, overrides);
  run->add_option("--methods", inv.methods, "Methods to run (default: the configured method)")
      ->delimiter(',');

  auto* sweep = app.add_subcommand("sweep", "Mean Acc over a grid of channels, methods, metrics, lambda and SNR");
  add_common(sweep, inv, overrides);
  sweep->add_option("--channels", inv.channels)->delimiter(',');
  sweep->add_option("--methods", inv.methods)->delimiter(',');
  sweep->add_option("--metrics", inv.metrics)->delimiter(',');
  sweep->add_option("--lambda", inv.lambdas)->delimiter(',');
  sweep->add_option("--snr", inv.snr_db)->delimiter(',');

  auto* scatter = app.add_subcommand("scatter", "Raw and denoised group observations on a frozen channel");
  add_common(scatter, inv, overrides);
  scatter->add_option("--groups", inv.groups, "Groups per SNR level");
  scatter->add_option("--snr", inv.snr_db, "Noisy SNR levels (a noise-free level is always added)")
      ->delimiter(',');

  auto* compare = app.add_subcommand("compare-metrics", "Mean Acc of the M and alpha metrics over SNR");
  add_common(compare, inv, overrides);
  compare->add_option("--snr", inv.snr_db)->delimiter(',');

  auto* profiles = app.add_subcommand("profiles", "Tap profiles and their quantized form");
  add_common(profiles, inv, overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : rddce::cli::kConfigError;
  }

  inv.subcommand = app.get_subcommands().front()->get_name();
  try {
    for (const auto& text : overrides) inv.overrides.push_back(rddce::cli::parse_override(text));
  } catch (const rddce::Error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return rddce::cli::kConfigError;
  }
  return rddce::cli::execute(inv, std::cout, std::cerr);
}
