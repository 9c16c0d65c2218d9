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
#include "iterdeconv/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "iterdeconv/csv.hpp"

namespace iterdeconv {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

class Parser {
 public:
  Parser(const std::string& source) : source_(source) {}

  [[noreturn]] void fail(int line, const std::string& field, const std::string& msg) const {
    if (field.empty()) throw ConfigError(fmt::format("{}:{}: {}", source_, line, msg));
    throw ConfigError(fmt::format("{}:{}: {}: {}", source_, line, field, msg));
  }

  double real(int line, const std::string& key, const std::string& v) const {
    double out = 0.0;
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (v.empty() || ec != std::errc() || ptr != end || !std::isfinite(out))
      fail(line, key, fmt::format("expected a finite number, got '{}'", v));
    return out;
  }

  long long integer(int line, const std::string& key, const std::string& v) const {
    long long out = 0;
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (v.empty() || ec != std::errc() || ptr != end)
      fail(line, key, fmt::format("expected an integer, got '{}'", v));
    return out;
  }

  std::vector<double> list(int line, const std::string& key, const std::string& v) const {
    std::vector<double> out;
    if (v.empty()) return out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(real(line, key, trim(item)));
    if (v.back() == ',') fail(line, key, "trailing comma");
    return out;
  }

 private:
  std::string source_;
};

bool valid_name(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-' || c == '.';
  });
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_real(v[i]);
  }
  return out;
}

void write_model(std::ostream& os, const ModelSpec& m) {
  if (m.uses_coefficients()) {
    os << "numerator = " << join(m.numerator) << '\n';
    os << "denominator = " << join(m.denominator) << '\n';
  } else {
    os << "poles = " << join(m.poles) << '\n';
    os << "zeros = " << join(m.zeros) << '\n';
    os << "gain = " << format_real(m.gain) << '\n';
  }
}

struct ModelKeys {
  int line = 0;
  bool factored = false;
  bool coefficients = false;
};

}  // namespace

TransferFunction ModelSpec::build() const {
  if (uses_coefficients()) return TransferFunction(numerator, denominator);
  return TransferFunction::from_time_constants(zeros, poles, gain);
}

Plant ExperimentConfig::build_plant() const {
  Plant p = Plant::linear_only(plant.build());
  if (saturation) p.nonlinearity = Nonlinearity::saturation(*saturation);
  p.placement = placement;
  return p;
}

AwgSignal ExperimentConfig::initial_awg(double tau_, int horizon_) const {
  switch (initial) {
    case InitialWaveform::kZero:
      return AwgSignal::constant(0.0, horizon_, tau_);
    case InitialWaveform::kRandom: {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> dist(0.0, 2.0 * amplitude);
      std::vector<double> v(horizon_);
      for (auto& x : v) x = dist(rng);
      return AwgSignal(std::move(v), tau_);
    }
    case InitialWaveform::kStep:
      break;
  }
  return DesiredSignal::step(amplitude).staircase(tau_, horizon_);
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  Parser p(source);
  ExperimentConfig c;
  bool have_plant = false;
  std::optional<double> duration;
  int duration_line = 0;
  bool have_horizon = false;

  std::string section;
  int section_line = 0;
  ModelSpec* model = nullptr;
  ModelKeys keys;
  std::set<std::string> seen_keys;
  std::set<std::string> seen_sections;

  auto finish_model = [&] {
    if (!model) return;
    if (!keys.factored && !keys.coefficients)
      p.fail(section_line, "", fmt::format("[{}] needs poles or denominator", section));
    if (keys.coefficients && model->numerator.empty())
      p.fail(section_line, "numerator", "missing");
    try {
      (void)model->build();
    } catch (const std::exception& e) {
      p.fail(section_line, "", fmt::format("[{}]: {}", section, e.what()));
    }
    model = nullptr;
  };

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') p.fail(line, "", "unterminated section header");
      finish_model();
      const std::string head = trim(std::string_view(s).substr(1, s.size() - 2));
      const auto space = head.find_first_of(" \t");
      const std::string kind = head.substr(0, space);
      const std::string name = space == std::string::npos ? "" : trim(head.substr(space));
      section = head;
      section_line = line;
      seen_keys.clear();
      if (kind == "summary") {
        section = "summary";
        continue;
      }
      if (kind != "reference" && !name.empty())
        p.fail(line, "", fmt::format("section [{}] takes no name", kind));
      if (kind == "plant") {
        if (have_plant) p.fail(line, "", "duplicate [plant] section");
        have_plant = true;
        model = &c.plant;
        c.plant.name = "plant";
      } else if (kind == "reference") {
        ModelSpec m;
        m.name = name.empty() ? fmt::format("reference{}", c.references.size() + 1) : name;
        if (!valid_name(m.name)) p.fail(line, "", fmt::format("invalid reference name '{}'", m.name));
        for (const auto& r : c.references)
          if (r.name == m.name) p.fail(line, "", fmt::format("duplicate reference '{}'", m.name));
        c.references.push_back(std::move(m));
        model = &c.references.back();
      } else if (kind == "experiment" || kind == "sweep" || kind == "ramsey") {
        if (!seen_sections.insert(kind).second)
          p.fail(line, "", fmt::format("duplicate [{}] section", kind));
      } else {
        p.fail(line, "", fmt::format("unknown section [{}]", kind));
      }
      section = kind;
      keys = {};
      continue;
    }

    if (section == "summary") continue;
    if (section.empty()) p.fail(line, "", "key outside of any section");
    const auto eq = s.find('=');
    if (eq == std::string::npos) p.fail(line, "", "expected 'key = value'");
    const std::string key = trim(std::string_view(s).substr(0, eq));
    const std::string val = trim(std::string_view(s).substr(eq + 1));
    if (key.empty()) p.fail(line, "", "empty key");
    if (!seen_keys.insert(key).second) p.fail(line, key, "duplicate key");

    const auto positive = [&](double v) {
      if (!(v > 0.0)) p.fail(line, key, "must be > 0");
      return v;
    };
    const auto positive_list = [&](std::vector<double> v) {
      if (v.empty()) p.fail(line, key, "needs at least one value");
      for (double x : v)
        if (!(x > 0.0)) p.fail(line, key, fmt::format("value {} must be > 0", format_real(x)));
      return v;
    };

    if (model) {
      if (key == "poles" || key == "zeros" || key == "gain") {
        if (keys.coefficients) p.fail(line, key, "cannot mix time constants with coefficients");
        keys.factored = true;
        if (key == "poles") model->poles = p.list(line, key, val);
        else if (key == "zeros") model->zeros = p.list(line, key, val);
        else model->gain = p.real(line, key, val);
      } else if (key == "numerator" || key == "denominator") {
        if (keys.factored) p.fail(line, key, "cannot mix coefficients with time constants");
        keys.coefficients = true;
        auto v = p.list(line, key, val);
        if (v.empty()) p.fail(line, key, "needs at least one coefficient");
        (key == "numerator" ? model->numerator : model->denominator) = std::move(v);
      } else if (model == &c.plant && key == "saturation") {
        c.saturation = positive(p.real(line, key, val));
      } else if (model == &c.plant && key == "placement") {
        if (val == "post") c.placement = Placement::kPostLinear;
        else if (val == "pre") c.placement = Placement::kPreLinear;
        else p.fail(line, key, "expected post or pre");
      } else {
        p.fail(line, key, fmt::format("unknown key in [{}]", section));
      }
      continue;
    }

    auto& cal = c.calibration;
    if (section == "experiment") {
      if (key == "tau") c.tau = positive(p.real(line, key, val));
      else if (key == "horizon") {
        const auto n = p.integer(line, key, val);
        if (n < 1 || n > 1'000'000) p.fail(line, key, "must be in [1, 1000000]");
        c.horizon = static_cast<int>(n);
        have_horizon = true;
      } else if (key == "duration") {
        duration = positive(p.real(line, key, val));
        duration_line = line;
      } else if (key == "oversampling") {
        const auto m = p.integer(line, key, val);
        if (m < 1 || m > 100'000) p.fail(line, key, "must be in [1, 100000]");
        cal.oversampling = static_cast<int>(m);
      } else if (key == "learning_rate") cal.learning_rate = positive(p.real(line, key, val));
      else if (key == "max_iterations") {
        const auto m = p.integer(line, key, val);
        if (m < 1 || m > 10'000'000) p.fail(line, key, "must be in [1, 10000000]");
        cal.max_iterations = static_cast<int>(m);
      } else if (key == "tolerance") {
        cal.sample_error_tolerance = p.real(line, key, val);
        if (cal.sample_error_tolerance < 0.0) p.fail(line, key, "must be >= 0");
      } else if (key == "divergence_factor") cal.divergence_factor = positive(p.real(line, key, val));
      else if (key == "amplitude_guard") cal.amplitude_guard = positive(p.real(line, key, val));
      else if (key == "amplitude") c.amplitude = p.real(line, key, val);
      else if (key == "initial") {
        if (val == "step") c.initial = InitialWaveform::kStep;
        else if (val == "zero") c.initial = InitialWaveform::kZero;
        else if (val == "random") c.initial = InitialWaveform::kRandom;
        else p.fail(line, key, "expected step, zero or random");
      } else if (key == "inverse") {
        if (val == "minimum_phase") cal.inverse = InverseMode::kMinimumPhase;
        else if (val == "exact") cal.inverse = InverseMode::kExact;
        else p.fail(line, key, "expected minimum_phase or exact");
      } else if (key == "seed") {
        const auto s2 = p.integer(line, key, val);
        if (s2 < 0) p.fail(line, key, "must be >= 0");
        c.seed = static_cast<std::uint64_t>(s2);
      } else if (key == "snapshots") {
        if (val == "sparse") cal.snapshots = SnapshotPolicy::kSparse;
        else if (val == "all") cal.snapshots = SnapshotPolicy::kAll;
        else p.fail(line, key, "expected sparse or all");
      } else {
        p.fail(line, key, "unknown key in [experiment]");
      }
    } else if (section == "sweep") {
      if (key == "T1") c.sweep_T1 = positive_list(p.list(line, key, val));
      else if (key == "T2") c.sweep_T2 = positive_list(p.list(line, key, val));
      else p.fail(line, key, "unknown key in [sweep]");
    } else if (section == "ramsey") {
      if (key == "taus") c.ramsey_taus = positive_list(p.list(line, key, val));
      else if (key == "duration") c.ramsey_duration = positive(p.real(line, key, val));
      else p.fail(line, key, "unknown key in [ramsey]");
    }
  }
  finish_model();

  if (!have_plant) p.fail(line, "", "missing [plant] section");
  if (duration) {
    if (have_horizon) p.fail(duration_line, "duration", "give either horizon or duration, not both");
    const double n = std::round(*duration / c.tau);
    if (n < 1.0 || n > 1'000'000.0)
      p.fail(duration_line, "duration", "must span between 1 and 1000000 periods");
    c.horizon = static_cast<int>(n);
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  if (path.empty()) throw ConfigError("no config file given");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("{}: cannot read config file", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

std::string to_string(const ExperimentConfig& c) {
  std::ostringstream os;
  const auto& cal = c.calibration;
  os << "[experiment]\n";
  os << "tau = " << format_real(c.tau) << '\n';
  os << "horizon = " << c.horizon << '\n';
  os << "oversampling = " << cal.oversampling << '\n';
  os << "learning_rate = " << format_real(cal.learning_rate) << '\n';
  os << "max_iterations = " << cal.max_iterations << '\n';
  os << "tolerance = " << format_real(cal.sample_error_tolerance) << '\n';
  os << "divergence_factor = " << format_real(cal.divergence_factor) << '\n';
  os << "amplitude_guard = " << format_real(cal.amplitude_guard) << '\n';
  os << "initial = "
     << (c.initial == InitialWaveform::kStep   ? "step"
         : c.initial == InitialWaveform::kZero ? "zero"
                                               : "random")
     << '\n';
  os << "amplitude = " << format_real(c.amplitude) << '\n';
  os << "inverse = " << (cal.inverse == InverseMode::kExact ? "exact" : "minimum_phase") << '\n';
  os << "seed = " << c.seed << '\n';
  os << "snapshots = " << (cal.snapshots == SnapshotPolicy::kAll ? "all" : "sparse") << '\n';

  os << "\n[plant]\n";
  write_model(os, c.plant);
  if (c.saturation) os << "saturation = " << format_real(*c.saturation) << '\n';
  os << "placement = " << (c.placement == Placement::kPreLinear ? "pre" : "post") << '\n';

  for (const auto& r : c.references) {
    os << "\n[reference " << r.name << "]\n";
    write_model(os, r);
  }
  if (!c.sweep_T1.empty() || !c.sweep_T2.empty()) {
    os << "\n[sweep]\n";
    if (!c.sweep_T1.empty()) os << "T1 = " << join(c.sweep_T1) << '\n';
    if (!c.sweep_T2.empty()) os << "T2 = " << join(c.sweep_T2) << '\n';
  }
  if (!c.ramsey_taus.empty()) {
    os << "\n[ramsey]\n";
    os << "taus = " << join(c.ramsey_taus) << '\n';
    os << "duration = " << format_real(c.ramsey_duration) << '\n';
  }
  return os.str();
}

}  // namespace iterdeconv
