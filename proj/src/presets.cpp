#include "vtrsim/presets.hpp"

#include "vtrsim/error.hpp"

namespace vtrsim {

namespace {

ScenarioSpec share(const char* label, double value) {
  return {label, SelectionRate::share_of_output(value)};
}

}  // namespace

std::vector<ScenarioSpec> physics_sweep_specs() {
  return {
      {"4.6%", SelectionRate::per_researcher(0.25)},
      share("8.9%", kVtrOverallShare),
      share("10%", 0.10),
      share("20%", 0.20),
      share("30%", 0.30),
      share("40%", 0.40),
      share("50%", 0.50),
      share("60%", 0.60),
  };
}

std::vector<ScenarioSpec> biology_sweep_specs() {
  return {
      share("8.9%", kVtrOverallShare),
      share("10%", 0.10),
      share("15%", 0.15),
      share("20%", 0.20),
      share("30%", 0.30),
      share("40%", 0.40),
      share("50%", 0.50),
      share("60%", 0.60),
  };
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = [] {
    std::vector<Preset> p;
    p.push_back({"vtr", "one product per four FTE researchers, eligibility 5 FTE, half-up",
                 SelectionRate::per_researcher(0.25), std::nullopt, std::nullopt});
    p.push_back({"uniform-8.9", "every UDA evaluated on 8.9% of its output (7,513 / 84,289)",
                 SelectionRate::share_of_output(kVtrOverallShare), std::nullopt, std::nullopt});
    p.push_back({"benchmark", "every publication of every eligible university",
                 SelectionRate::share_of_output(1.0), std::nullopt, std::nullopt});
    p.push_back({"physics-sweep", "eight Physics scenarios from the VTR rate to 60% of output",
                 std::nullopt, physics_sweep_specs(), std::string("PHYS")});
    p.push_back({"biology-sweep", "eight Biology scenarios from 8.9% to 60% of output",
                 std::nullopt, biology_sweep_specs(), std::string("BIO")});
    return p;
  }();
  return all;
}

const Preset& find_preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

}  // namespace vtrsim
