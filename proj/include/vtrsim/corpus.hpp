#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace vtrsim {

struct Affiliation {
  std::string university_id;
  std::string uda_id;

  auto operator<=>(const Affiliation&) const = default;
};

struct Publication {
  std::string id;
  int year = 0;
  std::int64_t citations = 0;
  std::vector<std::string> categories;
  std::vector<Affiliation> affiliations;
  // Manual UDA assignment for multidisciplinary journals; replaces
  // category-based resolution when present.
  std::optional<std::string> uda_override;

  bool operator==(const Publication&) const = default;
};

// Period-average full-time-equivalent research staff of one university in one
// disciplinary area.
struct StaffEntry {
  std::string university_id;
  std::string uda_id;
  double fte = 0.0;

  bool operator==(const StaffEntry&) const = default;
};

using CategoryMap = std::map<std::string, std::string>;

// UDAs a publication is attributed to: the override alone when set, else the
// UDAs of all its categories. Categories missing from the map are skipped; a
// validated corpus never has any.
std::set<std::string> resolve_udas(const Publication& pub, const CategoryMap& category_map);

// Immutable, validated universe for one assessment run.
//
// Attribution uses whole counting: a publication belongs in full to every
// (university, UDA) pair formed by its affiliated universities and its
// resolved UDAs. The UDA half of each affiliation is the authoring unit; it
// is validated but attribution follows subject classification.
class Corpus {
 public:
  // Validates every invariant; throws DuplicateIdError, UnknownIdError or
  // DataError (for value-range violations).
  Corpus(std::vector<Publication> publications, std::vector<StaffEntry> staff,
         CategoryMap category_map);

  const std::vector<Publication>& publications() const { return publications_; }
  const std::vector<StaffEntry>& staff() const { return staff_; }
  const CategoryMap& category_map() const { return category_map_; }

  // Sorted ids. Universities are those in the staff table; UDAs are the union
  // of category-map targets and staff UDAs.
  const std::vector<std::string>& udas() const { return udas_; }
  const std::vector<std::string>& universities() const { return universities_; }

  std::optional<std::size_t> find_publication(const std::string& id) const;
  const std::set<std::string>& udas_of(std::size_t pub_index) const { return pub_udas_[pub_index]; }

  std::optional<double> fte(const std::string& university_id, const std::string& uda_id) const;
  double uda_fte(const std::string& uda_id) const;
  // Universities with a staff entry in the UDA, sorted by id.
  const std::vector<std::string>& staffed_universities(const std::string& uda_id) const;

  // Indices of the publications attributed to (university, UDA), ascending.
  const std::vector<std::size_t>& portfolio(const std::string& university_id,
                                            const std::string& uda_id) const;
  // Indices of the distinct publications attributed to the UDA, ascending.
  const std::vector<std::size_t>& uda_publications(const std::string& uda_id) const;

  bool operator==(const Corpus& other) const {
    return publications_ == other.publications_ && staff_ == other.staff_ &&
           category_map_ == other.category_map_;
  }

 private:
  using Key = std::pair<std::string, std::string>;

  std::vector<Publication> publications_;
  std::vector<StaffEntry> staff_;
  CategoryMap category_map_;
  std::vector<std::string> udas_;
  std::vector<std::string> universities_;

  std::map<std::string, std::size_t> pub_index_;
  std::vector<std::set<std::string>> pub_udas_;
  std::map<Key, double> fte_;
  std::map<std::string, double> uda_fte_;
  std::map<std::string, std::vector<std::string>> staffed_;
  std::map<Key, std::vector<std::size_t>> portfolios_;
  std::map<std::string, std::vector<std::size_t>> uda_pubs_;
};

}  // namespace vtrsim
