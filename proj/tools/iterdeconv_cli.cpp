/*
 Copyright 2026 The iterdeconv Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "iterdeconv/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"iterdeconv: iterative deconvolution experiments"};
  app.require_subcommand(1);

  iterdeconv::CommandOptions options;
  std::string config;
  std::string snapshots;
  int oversampling = 0;

  for (const char* name : {"calibrate", "sweep", "stability", "ramsey"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("config", config, "experiment file")->required();
    sub->add_option("--out", options.out_dir, "output directory")->default_val(".");
    sub->add_option("--snapshots", snapshots, "AWG snapshots to keep")
        ->check(CLI::IsMember({"all", "sparse"}));
    sub->add_option("--oversampling", oversampling, "fine steps per AWG period")
        ->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : iterdeconv::kExitConfigError;
  }

  if (!snapshots.empty())
    options.snapshots = snapshots == "all" ? iterdeconv::SnapshotPolicy::kAll
                                           : iterdeconv::SnapshotPolicy::kSparse;
  if (oversampling > 0) options.oversampling = oversampling;

  const std::string command = app.get_subcommands().front()->get_name();
  return iterdeconv::run_command(command, config, options, std::cout, std::cerr);
}
