#include "vtrsim/corpus.hpp"

#include <algorithm>
#include <cmath>

#include "vtrsim/error.hpp"

namespace vtrsim {

namespace {

const std::vector<std::size_t> kNoPublications;
const std::vector<std::string> kNoUniversities;

}  // namespace

std::set<std::string> resolve_udas(const Publication& pub, const CategoryMap& category_map) {
  if (pub.uda_override) return {*pub.uda_override};
  std::set<std::string> out;
  for (const auto& cat : pub.categories) {
    if (auto it = category_map.find(cat); it != category_map.end()) out.insert(it->second);
  }
  return out;
}

Corpus::Corpus(std::vector<Publication> publications, std::vector<StaffEntry> staff,
               CategoryMap category_map)
    : publications_(std::move(publications)),
      staff_(std::move(staff)),
      category_map_(std::move(category_map)) {
  std::set<std::string> udas;
  std::set<std::string> universities;
  for (const auto& [cat, uda] : category_map_) {
    if (cat.empty() || uda.empty()) throw DataError("category map: empty id");
    udas.insert(uda);
  }

  for (const auto& s : staff_) {
    if (s.university_id.empty() || s.uda_id.empty()) throw DataError("staff: empty id");
    if (!(s.fte >= 0.0) || !std::isfinite(s.fte)) {
      throw DataError("staff: negative or non-finite fte for " + s.university_id + ":" +
                        s.uda_id);
    }
    Key key{s.university_id, s.uda_id};
    if (!fte_.emplace(key, s.fte).second) {
      throw DuplicateIdError("duplicate staff entry " + s.university_id + ":" + s.uda_id);
    }
    uda_fte_[s.uda_id] += s.fte;
    staffed_[s.uda_id].push_back(s.university_id);
    udas.insert(s.uda_id);
    universities.insert(s.university_id);
  }
  for (auto& [uda, list] : staffed_) std::sort(list.begin(), list.end());

  udas_.assign(udas.begin(), udas.end());
  universities_.assign(universities.begin(), universities.end());

  pub_udas_.reserve(publications_.size());
  for (std::size_t i = 0; i < publications_.size(); ++i) {
    const auto& p = publications_[i];
    if (p.id.empty()) throw DataError("publication with empty id");
    if (!pub_index_.emplace(p.id, i).second) {
      throw DuplicateIdError("duplicate publication id " + p.id);
    }
    if (p.citations < 0) throw DataError("publication " + p.id + ": negative citations");
    if (p.categories.empty()) throw DataError("publication " + p.id + ": no categories");
    if (p.affiliations.empty()) throw DataError("publication " + p.id + ": no affiliations");
    for (const auto& cat : p.categories) {
      if (!category_map_.contains(cat)) {
        throw UnknownIdError("publication " + p.id + ": unknown category " + cat);
      }
    }
    for (const auto& a : p.affiliations) {
      if (!universities.contains(a.university_id)) {
        throw UnknownIdError("publication " + p.id + ": unknown university " + a.university_id);
      }
      if (!udas.contains(a.uda_id)) {
        throw UnknownIdError("publication " + p.id + ": unknown uda " + a.uda_id);
      }
    }
    if (p.uda_override && !udas.contains(*p.uda_override)) {
      throw UnknownIdError("publication " + p.id + ": unknown uda_override " + *p.uda_override);
    }

    pub_udas_.push_back(resolve_udas(p, category_map_));
    std::set<std::string> pub_universities;
    for (const auto& a : p.affiliations) pub_universities.insert(a.university_id);
    for (const auto& uda : pub_udas_.back()) {
      uda_pubs_[uda].push_back(i);
      for (const auto& u : pub_universities) portfolios_[{u, uda}].push_back(i);
    }
  }
}

std::optional<std::size_t> Corpus::find_publication(const std::string& id) const {
  if (auto it = pub_index_.find(id); it != pub_index_.end()) return it->second;
  return std::nullopt;
}

std::optional<double> Corpus::fte(const std::string& university_id,
                                  const std::string& uda_id) const {
  if (auto it = fte_.find({university_id, uda_id}); it != fte_.end()) return it->second;
  return std::nullopt;
}

double Corpus::uda_fte(const std::string& uda_id) const {
  auto it = uda_fte_.find(uda_id);
  return it == uda_fte_.end() ? 0.0 : it->second;
}

const std::vector<std::string>& Corpus::staffed_universities(const std::string& uda_id) const {
  auto it = staffed_.find(uda_id);
  return it == staffed_.end() ? kNoUniversities : it->second;
}

const std::vector<std::size_t>& Corpus::portfolio(const std::string& university_id,
                                                  const std::string& uda_id) const {
  auto it = portfolios_.find({university_id, uda_id});
  return it == portfolios_.end() ? kNoPublications : it->second;
}

const std::vector<std::size_t>& Corpus::uda_publications(const std::string& uda_id) const {
  auto it = uda_pubs_.find(uda_id);
  return it == uda_pubs_.end() ? kNoPublications : it->second;
}

}  // namespace vtrsim
