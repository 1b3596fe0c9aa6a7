#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vtrsim/corpus.hpp"
#include "vtrsim/impact.hpp"

namespace vtrsim {

// How many products a university must submit in a UDA: a number per FTE
// researcher (0.25 is "one per four researchers"), or a share of the UDA's
// total output that is converted to an equivalent UDA-wide per-researcher rate.
struct SelectionRate {
  enum class Kind { per_researcher, share_of_output };

  Kind kind = Kind::per_researcher;
  double value = 0.25;

  static SelectionRate per_researcher(double products_per_fte);
  static SelectionRate share_of_output(double share);

  // A share of 1.0 is the whole-portfolio benchmark: every publication of every
  // eligible university is evaluated.
  bool full_production() const { return kind == Kind::share_of_output && value == 1.0; }

  void validate() const;
  bool operator==(const SelectionRate&) const = default;
};

// Accepts "0.25", "per_researcher:0.25", "1:4", "share:0.089", "share:8.9%".
SelectionRate parse_selection_rate(std::string_view text);
std::string to_string(const SelectionRate& rate);

enum class Rounding { half_up, half_even, floor, ceil };

Rounding parse_rounding(std::string_view name);
std::string_view rounding_name(Rounding rounding);

// Rounds a non-negative product count. Values within 1e-9 (relative) of an
// integer or half-integer are snapped first so that e.g. 90 * 0.25 is an exact
// half-case regardless of floating-point noise.
std::int64_t round_count(double x, Rounding rounding);

using QuartileWeights = std::array<double, 4>;
inline constexpr QuartileWeights kVtrWeights{1.0, 0.8, 0.6, 0.2};

struct AssessmentConfig {
  SelectionRate rate = SelectionRate::per_researcher(0.25);
  std::map<std::string, SelectionRate> uda_rates;  // overrides `rate` per UDA
  double min_fte = 5.0;                            // eligibility, inclusive
  Rounding rounding = Rounding::half_up;
  QuartileWeights weights = kVtrWeights;
  // Floor on the requirement of an eligible university, so that low rates do
  // not silently drop small universities from the ranking.
  std::int64_t min_required = 1;
  BaselineMode baseline_mode = BaselineMode::mean_of_means;

  const SelectionRate& rate_for(const std::string& uda_id) const;
  void validate() const;
};

struct UdaTotals {
  std::int64_t publications = 0;  // distinct publications attributed to the UDA
  double fte = 0.0;               // staff of every university in the UDA
};

UdaTotals uda_totals(const Corpus& corpus, const std::string& uda_id);

// Products per FTE implied by `rate` in a UDA. For a share s this is
// round(s * publications) / fte. Throws DataError for a share on a UDA with
// no staff.
double per_researcher_equivalent(const SelectionRate& rate, const UdaTotals& totals,
                                 Rounding rounding);

std::int64_t required_selection_count(double fte, const SelectionRate& rate,
                                      const UdaTotals& totals, Rounding rounding);

// Universities with fte >= min_fte in the UDA, sorted.
std::vector<std::string> eligible_universities(const Corpus& corpus, const std::string& uda_id,
                                               double min_fte);

// The min(n_required, available) highest-AII publications of (university, UDA),
// ordered by AII descending then id ascending. Returns corpus indices.
std::vector<std::size_t> select_best_indices(const Corpus& corpus, const ImpactScores& scores,
                                             const std::string& university_id,
                                             const std::string& uda_id, std::int64_t n_required);
std::vector<std::string> select_best(const Corpus& corpus, const ImpactScores& scores,
                                     const std::string& university_id, const std::string& uda_id,
                                     std::int64_t n_required);

// Lower bounds of the top three tiers. Each is a nearest-rank order statistic
// counted from the top: with the pool sorted descending, tier k (k = 1..3)
// starts at position ceil(k * n / 4). A pool of n distinct values divisible by
// 4 therefore splits into four tiers of n / 4.
struct QuartileThresholds {
  double first = 0.0;
  double second = 0.0;
  double third = 0.0;
};

QuartileThresholds quartile_thresholds(std::span<const double> pool);

// Rating of every instance in the pool, aligned with the input. Equal values
// always get equal ratings. Throws DataError on an empty pool.
std::vector<double> quartile_ratings(std::span<const double> pool, const QuartileWeights& weights);

// Mean rating, quantized to 1e-12 so that mathematically equal averages
// compare equal. Throws DataError when there are no ratings.
double university_score(std::span<const double> ratings);

struct RankingEntry {
  std::string university_id;
  double score = 0.0;
  int rank = 0;
  std::int64_t n_selected = 0;
  std::int64_t n_required = 0;

  bool operator==(const RankingEntry&) const = default;
};

// Eligible university without any publication to evaluate.
struct UnrankedEntry {
  std::string university_id;
  std::int64_t n_required = 0;

  bool operator==(const UnrankedEntry&) const = default;
};

struct Ranking {
  std::string uda_id;
  std::vector<RankingEntry> entries;  // score descending, competition ranks
  std::vector<UnrankedEntry> unranked;

  const RankingEntry* find(const std::string& university_id) const;
  bool operator==(const Ranking&) const = default;
};

// Sorts by score descending (university id breaks display ties) and assigns
// standard competition ranks: equal scores share the lowest rank and the next
// distinct score takes its 1-based position.
Ranking rank_universities(std::string uda_id, std::vector<RankingEntry> entries);

struct SelectionRecord {
  std::string university_id;
  double fte = 0.0;
  std::int64_t n_required = 0;
  std::int64_t available = 0;
  std::vector<std::size_t> selected;  // corpus indices
  std::vector<double> ratings;        // aligned with `selected`
};

struct UdaAssessment {
  Ranking ranking;
  std::vector<SelectionRecord> selections;  // eligible universities, sorted by id
  QuartileThresholds thresholds;
  std::size_t pool_size = 0;
};

// One UDA: eligibility, requirements, selection, national quartile pool of
// selection instances, averages and ranking.
UdaAssessment assess_uda(const Corpus& corpus, const ImpactScores& scores,
                         const std::string& uda_id, const SelectionRate& rate,
                         const AssessmentConfig& config);

std::map<std::string, UdaAssessment> run_assessment_detailed(const Corpus& corpus,
                                                             const ImpactScores& scores,
                                                             const AssessmentConfig& config);

std::map<std::string, Ranking> run_assessment(const Corpus& corpus, const AssessmentConfig& config);

// Percentage rounded half-up to one decimal, computed in integer arithmetic.
double percent_1dp(std::int64_t numerator, std::int64_t denominator);

struct UniversityRepresentativeness {
  std::string university_id;
  double fte = 0.0;
  bool eligible = false;
  std::int64_t n_required = 0;
  std::int64_t n_selected = 0;
  std::int64_t total_publications = 0;
  std::optional<double> sampling_rate_pct;  // required / total, absent when total = 0
  std::optional<double> share_pct;          // selected / total
};

struct UdaRepresentativeness {
  std::string uda_id;
  std::int64_t selected = 0;
  std::int64_t total = 0;
  double share_pct = 0.0;
  std::vector<UniversityRepresentativeness> universities;
};

struct RepresentativenessReport {
  std::vector<UdaRepresentativeness> udas;
  std::int64_t selected = 0;
  std::int64_t total = 0;
  double share_pct = 0.0;
  // Publication counting rule behind every per-university total.
  std::string counting = "whole";
};

struct UdaCount {
  std::string uda_id;
  std::int64_t selected = 0;
  std::int64_t total = 0;
};

// UDA rows and the aggregate row from (selected, total) pairs alone.
RepresentativenessReport summarize_representativeness(std::span<const UdaCount> counts);

// Per-UDA and per-university representativeness of the submission rule. Every
// staffed university is listed (eligible or not), since the submission rule
// applies to all of them.
RepresentativenessReport representativeness_report(const Corpus& corpus,
                                                   const AssessmentConfig& config);

}  // namespace vtrsim
