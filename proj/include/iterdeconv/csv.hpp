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
#ifndef ITERDECONV_CSV_HPP
#define ITERDECONV_CSV_HPP

#include <filesystem>
#include <functional>
#include <ostream>
#include <string>

#include "iterdeconv/signal.hpp"

namespace iterdeconv {

/// 17 significant digits; round-trips every double.
std::string format_real(double value);

/// Columns `t,value`.
void write_csv(std::ostream& os, const FineTrajectory& traj);
/// Columns `k,t_start,value`.
void write_csv(std::ostream& os, const AwgSignal& awg);

/// Opens `path` for writing (creating parent directories), hands the stream to
/// `body`, and throws std::runtime_error if anything fails.
void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body);

}  // namespace iterdeconv

#endif  // ITERDECONV_CSV_HPP
