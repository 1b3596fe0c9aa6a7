#include "vtrsim/impact.hpp"

#include <cmath>
#include <set>

#include "vtrsim/error.hpp"

namespace vtrsim {

BaselineMode parse_baseline_mode(const std::string& name) {
  if (name == "mean-of-means" || name == "mean_of_means") return BaselineMode::mean_of_means;
  if (name == "pooled") return BaselineMode::pooled;
  throw ConfigError("unknown baseline mode '" + name + "'");
}

const BaselineCell* BaselineTable::find(int year, const std::string& category) const {
  auto it = cells_.find({year, category});
  return it == cells_.end() ? nullptr : &it->second;
}

const BaselineCell& BaselineTable::at(int year, const std::string& category) const {
  if (const auto* cell = find(year, category)) return *cell;
  throw DataError("missing baseline for year " + std::to_string(year) + ", category " + category);
}

void BaselineTable::add(int year, const std::string& category, std::int64_t citations) {
  auto& cell = cells_[{year, category}];
  cell.article_count += 1;
  cell.citation_sum += citations;
  cell.mean_citations =
      static_cast<double>(cell.citation_sum) / static_cast<double>(cell.article_count);
}

BaselineTable compute_baselines(const Corpus& corpus) {
  BaselineTable table;
  for (const auto& p : corpus.publications()) {
    // Repeated categories on one record count once.
    std::set<std::string> cats(p.categories.begin(), p.categories.end());
    for (const auto& c : cats) table.add(p.year, c, p.citations);
  }
  return table;
}

namespace {

// Rounds to 40 significant bits so that indices equal in exact arithmetic but
// reached through different floating-point paths compare equal.
double quantize(double x) {
  if (x == 0.0) return 0.0;
  int exponent = 0;
  std::frexp(x, &exponent);
  const double quantum = std::ldexp(1.0, exponent - 40);
  return std::round(x / quantum) * quantum;
}

double mean_of_means(const Publication& pub, const BaselineTable& baselines) {
  std::set<std::string> cats(pub.categories.begin(), pub.categories.end());
  if (cats.empty()) throw DataError("publication " + pub.id + " has no categories");
  double sum = 0.0;
  for (const auto& c : cats) sum += baselines.at(pub.year, c).mean_citations;
  return sum / static_cast<double>(cats.size());
}

}  // namespace

double article_impact_index(const Publication& pub, const BaselineTable& baselines) {
  const double denom = mean_of_means(pub, baselines);
  if (denom <= 0.0) return 0.0;
  return quantize(static_cast<double>(pub.citations) / denom);
}

ImpactScores::ImpactScores(std::vector<std::string> ids, std::vector<double> values,
                           std::vector<std::string> degenerate)
    : ids_(std::move(ids)), values_(std::move(values)), degenerate_(std::move(degenerate)) {
  for (std::size_t i = 0; i < ids_.size(); ++i) index_.emplace(ids_[i], i);
}

double ImpactScores::at(const std::string& publication_id) const {
  auto it = index_.find(publication_id);
  if (it == index_.end()) throw DataError("no impact score for " + publication_id);
  return values_[it->second];
}

namespace {

// Mean citations over the distinct publications of `year` carrying any of the
// categories in `cats`.
double pooled_denominator(const Corpus& corpus, int year, const std::set<std::string>& cats,
                          const std::map<std::pair<int, std::string>, std::vector<std::size_t>>& cell_members) {
  std::set<std::size_t> members;
  for (const auto& c : cats) {
    auto it = cell_members.find({year, c});
    if (it == cell_members.end()) {
      throw DataError("missing baseline for year " + std::to_string(year) + ", category " + c);
    }
    members.insert(it->second.begin(), it->second.end());
  }
  std::int64_t sum = 0;
  for (auto i : members) sum += corpus.publications()[i].citations;
  return static_cast<double>(sum) / static_cast<double>(members.size());
}

}  // namespace

ImpactScores score_corpus(const Corpus& corpus, BaselineMode mode) {
  const auto& pubs = corpus.publications();
  std::vector<std::string> ids;
  std::vector<double> values;
  std::vector<std::string> degenerate;
  ids.reserve(pubs.size());
  values.reserve(pubs.size());

  if (mode == BaselineMode::mean_of_means) {
    const auto baselines = compute_baselines(corpus);
    for (const auto& p : pubs) {
      const double denom = mean_of_means(p, baselines);
      if (denom <= 0.0) degenerate.push_back(p.id);
      ids.push_back(p.id);
      values.push_back(denom > 0.0 ? quantize(static_cast<double>(p.citations) / denom) : 0.0);
    }
  } else {
    std::map<std::pair<int, std::string>, std::vector<std::size_t>> cell_members;
    for (std::size_t i = 0; i < pubs.size(); ++i) {
      std::set<std::string> cats(pubs[i].categories.begin(), pubs[i].categories.end());
      for (const auto& c : cats) cell_members[{pubs[i].year, c}].push_back(i);
    }
    std::map<std::pair<int, std::set<std::string>>, double> cache;
    for (const auto& p : pubs) {
      std::set<std::string> cats(p.categories.begin(), p.categories.end());
      auto key = std::make_pair(p.year, cats);
      auto it = cache.find(key);
      if (it == cache.end()) {
        it = cache.emplace(key, pooled_denominator(corpus, p.year, cats, cell_members)).first;
      }
      const double denom = it->second;
      double aii = 0.0;
      if (denom > 0.0) {
        aii = quantize(static_cast<double>(p.citations) / denom);
      } else {
        degenerate.push_back(p.id);
      }
      ids.push_back(p.id);
      values.push_back(aii);
    }
  }
  return ImpactScores(std::move(ids), std::move(values), std::move(degenerate));
}

}  // namespace vtrsim
