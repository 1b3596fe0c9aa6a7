#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "vtrsim/corpus.hpp"

namespace vtrsim {

struct BaselineCell {
  double mean_citations = 0.0;
  std::int64_t article_count = 0;
  std::int64_t citation_sum = 0;
};

// Mean citations per (year, category). A publication with several categories
// counts in every one of its cells.
class BaselineTable {
 public:
  using Key = std::pair<int, std::string>;

  const BaselineCell* find(int year, const std::string& category) const;
  // Throws DataError if the cell is missing.
  const BaselineCell& at(int year, const std::string& category) const;
  const std::map<Key, BaselineCell>& cells() const { return cells_; }

  void add(int year, const std::string& category, std::int64_t citations);

 private:
  std::map<Key, BaselineCell> cells_;
};

// How the denominator is formed for a publication in several categories.
enum class BaselineMode {
  mean_of_means,  // arithmetic mean of the per-category cell means (default)
  pooled,         // mean citations over the union of articles in those cells
};

BaselineMode parse_baseline_mode(const std::string& name);

BaselineTable compute_baselines(const Corpus& corpus);

// citations / mean of the cell means over the publication's categories in its
// year, rounded to 40 significant bits. A zero denominator (only possible
// with zero citations) yields 0.
// Throws DataError when a cell is missing.
double article_impact_index(const Publication& pub, const BaselineTable& baselines);

class ImpactScores {
 public:
  ImpactScores() = default;
  ImpactScores(std::vector<std::string> ids, std::vector<double> values,
               std::vector<std::string> degenerate);

  // Score of the publication at corpus index i.
  double operator[](std::size_t i) const { return values_[i]; }
  double at(const std::string& publication_id) const;
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  const std::vector<std::string>& ids() const { return ids_; }
  // Publications whose denominator was zero (reported, scored 0).
  const std::vector<std::string>& degenerate() const { return degenerate_; }

 private:
  std::vector<std::string> ids_;
  std::vector<double> values_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::string> degenerate_;
};

ImpactScores score_corpus(const Corpus& corpus, BaselineMode mode = BaselineMode::mean_of_means);

}  // namespace vtrsim
