#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vtrsim/assessment.hpp"
#include "vtrsim/corpus.hpp"

namespace vtrsim {

// Overall representativeness of the 2001-2003 Italian exercise: 7,513 of
// 84,289 publications ("8.9%").
inline constexpr double kVtrOverallShare = 7513.0 / 84289.0;

struct UdaSummary {
  std::string uda_id;
  std::int64_t publications = 0;
  double fte = 0.0;
};

UdaSummary summarize_uda(const Corpus& corpus, const std::string& uda_id);

// Researchers per product rounded to one decimal with a trailing ".0" dropped:
// 5.1235 -> "1 : 5.1", 3.97 -> "1 : 4".
std::string ratio_display(double researchers_per_product);

struct UniformShareRow {
  std::string uda_id;
  std::int64_t total_publications = 0;
  std::int64_t to_select = 0;
  double fte = 0.0;
  SelectionRate rate;  // per researcher
  double researchers_per_product = 0.0;
  std::string display;
};

struct UniformShareTable {
  double share = 0.0;
  std::vector<UniformShareRow> rows;
  // Aggregate row computed from the grand totals, not the sum of rounded rows.
  UniformShareRow total;
};

// Per-UDA per-researcher rates that make every UDA's subset the same share of
// its own output. Throws DataError for a UDA without staff or publications,
// or when the share selects nothing.
UniformShareTable uniform_share_rates(std::span<const UdaSummary> udas, double share,
                                      Rounding rounding = Rounding::half_up);
UniformShareTable uniform_share_rates(const Corpus& corpus, double share,
                                      Rounding rounding = Rounding::half_up);

struct ScenarioSpec {
  std::string label;
  SelectionRate rate;
};

std::vector<ScenarioSpec> shares_to_specs(std::span<const double> shares);

struct Scenario {
  std::string label;
  std::string uda_id;
  SelectionRate rate;
  std::optional<double> derived_per_researcher;  // set for share rates
  std::int64_t pubs_to_select = 0;               // UDA-wide
  double share = 0.0;                            // pubs_to_select / UDA output
  double researchers_per_product = 0.0;
  std::string display;
};

std::vector<Scenario> build_scenarios(const UdaSummary& uda, std::span<const ScenarioSpec> specs,
                                      Rounding rounding = Rounding::half_up);
std::vector<Scenario> build_scenarios(const Corpus& corpus, const std::string& uda_id,
                                      std::span<const ScenarioSpec> specs,
                                      Rounding rounding = Rounding::half_up);
std::vector<Scenario> build_scenarios(const Corpus& corpus, const std::string& uda_id,
                                      std::span<const double> shares,
                                      Rounding rounding = Rounding::half_up);

enum class CorrelationKind { spearman, kendall };

CorrelationKind parse_correlation_kind(std::string_view name);
std::string_view correlation_name(CorrelationKind kind);

// 1-based fractional ranks of ascending values; ties get the mean position.
std::vector<double> average_ranks(std::span<const double> values);
// Pearson correlation of the average ranks. Two constant inputs give 1, one
// constant input gives 0.
double spearman_correlation(std::span<const double> x, std::span<const double> y);
// Kendall tau-b, with the same conventions for constant inputs.
double kendall_tau_b(std::span<const double> x, std::span<const double> y);

struct RankShiftStats {
  CorrelationKind kind = CorrelationKind::spearman;
  double correlation = 1.0;
  std::int64_t n_changed = 0;
  std::int64_t n_total = 0;
  // Over every shared university, unchanged ones included.
  double mean_shift = 0.0;
  double median_shift = 0.0;
  int max_shift = 0;
  // Over the universities whose rank changed only (0 when none did).
  double mean_shift_changed = 0.0;
  double median_shift_changed = 0.0;
  // Universities present in only one of the rankings.
  std::int64_t n_dropped = 0;

  bool operator==(const RankShiftStats&) const = default;
};

// Shifts are |rank_a - rank_b| over the universities ranked in both; the
// correlation is computed on the same pairs. Throws DataError when no
// university is shared.
RankShiftStats compare_rankings(const Ranking& a, const Ranking& b,
                                CorrelationKind kind = CorrelationKind::spearman);

// ceil(10 * rank / n)
int decile_of(int rank, int n);

struct DecileRow {
  std::string university_id;
  std::array<int, 10> counts{};
  int modal_decile = 0;
  double mean_decile = 0.0;
};

struct DecileMatrix {
  std::string uda_id;
  int n_scenarios = 0;
  std::vector<DecileRow> rows;  // by modal decile, then mean decile, then id
};

// Throws DataError unless every ranking covers the same UDA and university set.
DecileMatrix decile_frequency(std::span<const Ranking> rankings);

struct ConvergencePoint {
  std::string label;
  double share = 0.0;
  double correlation_to_benchmark = 1.0;
  double median_shift_to_benchmark = 0.0;
  double cost_index = 0.0;  // cost_per_product * pubs_to_select
  std::int64_t pubs_to_select = 0;
};

// Each scenario's ranking against the whole-portfolio benchmark.
std::vector<ConvergencePoint> convergence_curve(const Corpus& corpus, const std::string& uda_id,
                                                std::span<const ScenarioSpec> specs,
                                                double cost_per_product,
                                                const AssessmentConfig& config = {},
                                                CorrelationKind kind = CorrelationKind::spearman);
std::vector<ConvergencePoint> convergence_curve(const Corpus& corpus, const std::string& uda_id,
                                                std::span<const double> shares,
                                                double cost_per_product,
                                                const AssessmentConfig& config = {},
                                                CorrelationKind kind = CorrelationKind::spearman);

ScenarioSpec vtr_reference();

struct SweepOptions {
  AssessmentConfig assessment;
  ScenarioSpec reference = vtr_reference();
  CorrelationKind correlation = CorrelationKind::spearman;
  double cost_per_product = 1.0;
  // Also compare every ordered pair of scenarios (diagonal included).
  bool pairwise = false;
};

struct PairwiseStats {
  std::string first;
  std::string second;
  RankShiftStats stats;
};

struct SweepResult {
  std::string uda_id;
  std::vector<Scenario> scenarios;
  std::vector<Ranking> rankings;  // aligned with scenarios
  Scenario reference_scenario;
  Ranking reference;
  Ranking benchmark;
  std::vector<RankShiftStats> vs_reference;  // aligned with scenarios
  std::vector<PairwiseStats> pairwise;
  DecileMatrix deciles;
  std::vector<ConvergencePoint> convergence;  // aligned with scenarios
};

SweepResult run_sweep(const Corpus& corpus, const std::string& uda_id,
                      std::span<const ScenarioSpec> specs, const SweepOptions& options = {});

}  // namespace vtrsim
