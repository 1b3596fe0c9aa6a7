#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vtrsim/assessment.hpp"
#include "vtrsim/sensitivity.hpp"

namespace vtrsim {

// Eight Physics scenarios. The first is the VTR rule itself (one product per
// four researchers), which covered 4.6% of Physics output.
std::vector<ScenarioSpec> physics_sweep_specs();
// Eight Biology scenarios, 8.9% to 60% of output.
std::vector<ScenarioSpec> biology_sweep_specs();

struct Preset {
  std::string name;
  std::string description;
  std::optional<SelectionRate> rate;
  std::optional<std::vector<ScenarioSpec>> sweep;
  std::optional<std::string> uda;  // UDA a sweep preset targets by default
  double min_fte = 5.0;
  Rounding rounding = Rounding::half_up;
};

// "vtr", "uniform-8.9", "benchmark", "physics-sweep", "biology-sweep".
const std::vector<Preset>& presets();
// Throws ConfigError for an unknown name.
const Preset& find_preset(std::string_view name);

}  // namespace vtrsim
