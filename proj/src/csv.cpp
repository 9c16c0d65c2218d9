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
#include "iterdeconv/csv.hpp"

#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace iterdeconv {

std::string format_real(double value) { return fmt::format("{:.17g}", value); }

void write_csv(std::ostream& os, const FineTrajectory& traj) {
  os << "t,value\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    os << format_real(traj.time(i)) << ',' << format_real(traj[i]) << '\n';
  }
}

void write_csv(std::ostream& os, const AwgSignal& awg) {
  os << "k,t_start,value\n";
  for (int k = 0; k < awg.periods(); ++k) {
    os << k << ',' << format_real(k * awg.period()) << ',' << format_real(awg[k]) << '\n';
  }
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  body(out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace iterdeconv
