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
#ifndef ITERDECONV_CONFIG_HPP
#define ITERDECONV_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iterdeconv/ilc.hpp"
#include "iterdeconv/lti.hpp"
#include "iterdeconv/plant.hpp"

namespace iterdeconv {

/// Malformed experiment file. The message names the line and the field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A transfer function given either as time constants or as raw coefficients
/// (ascending powers of s). Kept in its written form so it serializes back
/// without rounding.
struct ModelSpec {
  std::string name;
  std::vector<double> poles;
  std::vector<double> zeros;
  double gain = 1.0;
  std::vector<double> numerator;
  std::vector<double> denominator;

  bool uses_coefficients() const { return !denominator.empty(); }
  TransferFunction build() const;
};

enum class InitialWaveform { kStep, kZero, kRandom };

struct ExperimentConfig {
  ModelSpec plant;
  std::optional<double> saturation;
  Placement placement = Placement::kPostLinear;
  std::vector<ModelSpec> references;

  double tau = 0.002;
  int horizon = 50;
  double amplitude = 1.0;
  InitialWaveform initial = InitialWaveform::kStep;
  std::uint64_t seed = 1;
  CalibrationConfig calibration;

  std::vector<double> sweep_T1;
  std::vector<double> sweep_T2;

  std::vector<double> ramsey_taus;
  double ramsey_duration = 0.1;

  Plant build_plant() const;
  AwgSignal initial_awg(double tau, int horizon) const;
};

/**
 * Parses the experiment format:
 *
 *   # comment
 *   [experiment]   tau, horizon | duration, oversampling, learning_rate,
 *                  max_iterations, tolerance, divergence_factor,
 *                  amplitude_guard, initial (step|zero|random), amplitude,
 *                  inverse (minimum_phase|exact), seed, snapshots (sparse|all)
 *   [plant]        poles, zeros, gain | numerator, denominator;
 *                  saturation, placement (post|pre)
 *   [reference NAME]  same model keys as [plant]; may repeat
 *   [sweep]        T1, T2
 *   [ramsey]       taus, duration
 *
 * Lists are comma separated. A [summary ...] section is skipped so that
 * summary files can be fed back in.
 */
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<string>");
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(to_string(c)) reproduces c exactly.
std::string to_string(const ExperimentConfig& config);

}  // namespace iterdeconv

#endif  // ITERDECONV_CONFIG_HPP
