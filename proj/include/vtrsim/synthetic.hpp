#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vtrsim/corpus.hpp"

namespace vtrsim {

struct SyntheticUda {
  std::string id;
  double fertility = 1.0;  // mean publications per FTE over the whole period
};

struct SyntheticConfig {
  std::uint64_t seed = 1;
  int n_universities = 50;
  std::vector<SyntheticUda> udas;
  double staff_min = 5.0;
  double staff_max = 150.0;
  // Smaller values give heavier tails: citations are floor(scale * exp(s Z)),
  // Z standard normal, with log-dispersion s = 1 / citation_shape.
  double citation_shape = 1.0;
  std::vector<int> years{2001, 2002, 2003};
  int categories_per_uda = 4;

  // Spread (log-sd) of the latent research quality of each university in a UDA.
  double quality_dispersion = 1.0;
  // Probability that a university is active in a given UDA.
  double presence_rate = 0.9;
  // Probability that a publication gets a second university affiliation.
  double coauthor_rate = 0.1;
  // Probability that a publication carries a second category of its UDA.
  double multi_category_rate = 0.15;

  // Throws ConfigError on any out-of-range field.
  void validate() const;
};

// Eight hard-science areas with fertility taken from the 2001-2003 Italian
// totals (publications / FTE).
std::vector<SyntheticUda> italian_hard_science_udas();

// Seed-stable synthetic corpus:
//  - staff: log-uniform FTE in [staff_min, staff_max], rounded to 0.1;
//  - publications per (university, UDA): Poisson(fte * fertility);
//  - citations: floor(cell_scale * age_factor * exp(quality + s Z - s^2/2)),
//    where cell_scale is drawn per (year, category) and quality per
//    (university, UDA).
// Only the boost::random distribution implementations are used, so output
// does not depend on the standard library vendor.
Corpus generate_synthetic(const SyntheticConfig& config);

}  // namespace vtrsim
