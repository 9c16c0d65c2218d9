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
#ifndef ITERDECONV_EXPERIMENT_HPP
#define ITERDECONV_EXPERIMENT_HPP

#include <filesystem>
#include <optional>
#include <ostream>
#include <string_view>

#include "iterdeconv/config.hpp"

namespace iterdeconv {

/// Command-line overrides applied on top of the config file.
struct CommandOptions {
  std::filesystem::path out_dir = ".";
  std::optional<SnapshotPolicy> snapshots;
  std::optional<int> oversampling;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfigError = 2;

// Each command writes its CSVs into options.out_dir, progress to `log` and
// problems to `err`, and returns an exit code. Divergence is a result (0).
int cmd_calibrate(const std::filesystem::path& config_path, const CommandOptions& options,
                  std::ostream& log, std::ostream& err);
int cmd_sweep(const std::filesystem::path& config_path, const CommandOptions& options,
              std::ostream& log, std::ostream& err);
int cmd_stability(const std::filesystem::path& config_path, const CommandOptions& options,
                  std::ostream& log, std::ostream& err);
int cmd_ramsey(const std::filesystem::path& config_path, const CommandOptions& options,
               std::ostream& log, std::ostream& err);

/// Dispatches on "calibrate", "sweep", "stability" or "ramsey".
int run_command(std::string_view command, const std::filesystem::path& config_path,
                const CommandOptions& options, std::ostream& log, std::ostream& err);

}  // namespace iterdeconv

#endif  // ITERDECONV_EXPERIMENT_HPP
