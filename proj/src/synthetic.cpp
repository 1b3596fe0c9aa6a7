#include "vtrsim/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>
#include <boost/random/uniform_01.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <fmt/format.h>

#include "vtrsim/error.hpp"

namespace vtrsim {

void SyntheticConfig::validate() const {
  if (n_universities <= 0) throw ConfigError("n_universities must be positive");
  if (udas.empty()) throw ConfigError("at least one UDA is required");
  std::set<std::string> seen;
  for (const auto& u : udas) {
    if (u.id.empty() || u.id.find_first_of(";:,") != std::string::npos) {
      throw ConfigError("invalid UDA id '" + u.id + "'");
    }
    if (!seen.insert(u.id).second) throw ConfigError("duplicate UDA id " + u.id);
    if (!(u.fertility > 0) || !std::isfinite(u.fertility)) {
      throw ConfigError("fertility of " + u.id + " must be positive");
    }
  }
  if (!(staff_min > 0) || !(staff_max > 0) || staff_min > staff_max || !std::isfinite(staff_max)) {
    throw ConfigError("staff range must satisfy 0 < min <= max");
  }
  if (!(citation_shape > 0) || !std::isfinite(citation_shape)) {
    throw ConfigError("citation_shape must be positive");
  }
  if (years.empty()) throw ConfigError("at least one year is required");
  if (categories_per_uda <= 0) throw ConfigError("categories_per_uda must be positive");
  if (!(quality_dispersion >= 0)) throw ConfigError("quality_dispersion must be >= 0");
  auto prob = [](double p, const char* name) {
    if (!(p >= 0 && p <= 1)) throw ConfigError(std::string(name) + " must be in [0, 1]");
  };
  prob(presence_rate, "presence_rate");
  prob(coauthor_rate, "coauthor_rate");
  prob(multi_category_rate, "multi_category_rate");
}

std::vector<SyntheticUda> italian_hard_science_udas() {
  return {
      {"MATH", 6722.0 / 3069.0}, {"PHYS", 12919.0 / 2508.0}, {"CHEM", 8991.0 / 3139.0},
      {"EARTH", 3827.0 / 1281.0}, {"BIO", 8103.0 / 4827.0},  {"MED", 27577.0 / 10452.0},
      {"AGR", 2650.0 / 2946.0},   {"ENG", 13500.0 / 4335.0},
  };
}

Corpus generate_synthetic(const SyntheticConfig& config) {
  config.validate();
  boost::random::mt19937_64 rng(config.seed);
  boost::random::uniform_01<double> unit;
  boost::random::normal_distribution<double> normal(0.0, 1.0);

  const int n_cats = config.categories_per_uda;
  const int last_year = *std::max_element(config.years.begin(), config.years.end());
  const double sigma = 1.0 / config.citation_shape;

  std::vector<std::string> universities;
  for (int i = 1; i <= config.n_universities; ++i) universities.push_back(fmt::format("U{:03}", i));

  auto category_id = [](const std::string& uda, int k) { return fmt::format("{}-C{:02}", uda, k); };

  CategoryMap category_map;
  for (const auto& uda : config.udas) {
    for (int k = 1; k <= n_cats; ++k) category_map.emplace(category_id(uda.id, k), uda.id);
  }

  // Mean citations of each (year, category) cell before quality effects.
  std::map<std::pair<int, std::string>, double> cell_scale;
  for (const auto& uda : config.udas) {
    for (int k = 1; k <= n_cats; ++k) {
      for (int year : config.years) {
        const double age = 1.0 + 0.5 * (last_year - year);
        cell_scale[{year, category_id(uda.id, k)}] = age * std::exp(std::log(6.0) + 0.3 * normal(rng));
      }
    }
  }

  std::vector<StaffEntry> staff;
  std::map<std::string, std::vector<std::string>> active;  // uda -> universities
  const double log_min = std::log(config.staff_min);
  const double log_max = std::log(config.staff_max);
  for (const auto& uda : config.udas) {
    for (const auto& u : universities) {
      if (unit(rng) >= config.presence_rate) continue;
      double fte = std::exp(log_min + (log_max - log_min) * unit(rng));
      fte = std::clamp(std::round(fte * 10.0) / 10.0, config.staff_min, config.staff_max);
      staff.push_back({u, uda.id, fte});
      active[uda.id].push_back(u);
    }
  }

  std::vector<Publication> pubs;
  std::size_t next_id = 1;
  for (const auto& uda : config.udas) {
    const auto& members = active[uda.id];
    for (const auto& entry : staff) {
      if (entry.uda_id != uda.id) continue;
      const double quality = config.quality_dispersion * normal(rng);
      boost::random::poisson_distribution<long, double> count_dist(entry.fte * uda.fertility);
      const long n = count_dist(rng);
      for (long j = 0; j < n; ++j) {
        Publication p;
        p.id = fmt::format("P{:07}", next_id++);
        const auto year_idx = boost::random::uniform_int_distribution<std::size_t>(
            0, config.years.size() - 1)(rng);
        p.year = config.years[year_idx];
        const int cat = boost::random::uniform_int_distribution<int>(1, n_cats)(rng);
        p.categories.push_back(category_id(uda.id, cat));
        if (n_cats > 1 && unit(rng) < config.multi_category_rate) {
          int other = boost::random::uniform_int_distribution<int>(1, n_cats - 1)(rng);
          if (other >= cat) ++other;
          p.categories.push_back(category_id(uda.id, other));
        }
        const double scale = cell_scale.at({p.year, p.categories.front()});
        const double draw = scale * std::exp(quality + sigma * normal(rng) - 0.5 * sigma * sigma);
        p.citations = static_cast<std::int64_t>(std::floor(std::min(draw, 1e9)));
        p.affiliations.push_back({entry.university_id, uda.id});
        if (members.size() > 1 && unit(rng) < config.coauthor_rate) {
          auto pick = boost::random::uniform_int_distribution<std::size_t>(0, members.size() - 2)(rng);
          const auto self = std::find(members.begin(), members.end(), entry.university_id) -
                            members.begin();
          if (static_cast<std::ptrdiff_t>(pick) >= self) ++pick;
          p.affiliations.push_back({members[pick], uda.id});
        }
        pubs.push_back(std::move(p));
      }
    }
  }

  return Corpus(std::move(pubs), std::move(staff), std::move(category_map));
}

}  // namespace vtrsim
