#include "vtrsim/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "vtrsim/error.hpp"

namespace vtrsim {

UdaSummary summarize_uda(const Corpus& corpus, const std::string& uda_id) {
  const auto totals = uda_totals(corpus, uda_id);
  return {uda_id, totals.publications, totals.fte};
}

namespace {

std::string one_decimal(double value) {
  const double r = std::round(value * 10.0) / 10.0;
  if (r == std::floor(r)) return fmt::format("{:.0f}", r);
  return fmt::format("{:.1f}", r);
}

UniformShareRow uniform_row(const UdaSummary& uda, double share, Rounding rounding) {
  if (!(uda.fte > 0.0)) throw DataError("UDA " + uda.uda_id + " has no research staff");
  if (uda.publications <= 0) throw DataError("UDA " + uda.uda_id + " has no publications");
  UniformShareRow row;
  row.uda_id = uda.uda_id;
  row.total_publications = uda.publications;
  row.fte = uda.fte;
  row.to_select = round_count(share * static_cast<double>(uda.publications), rounding);
  if (row.to_select <= 0) {
    throw DataError("share " + fmt::format("{}", share) + " selects nothing in UDA " + uda.uda_id);
  }
  row.rate = SelectionRate::per_researcher(static_cast<double>(row.to_select) / uda.fte);
  row.researchers_per_product = uda.fte / static_cast<double>(row.to_select);
  row.display = ratio_display(row.researchers_per_product);
  return row;
}

void check_share(double share) {
  if (!(share > 0.0 && share <= 1.0)) {
    throw ConfigError(fmt::format("share must be in (0, 1], got {}", share));
  }
}

}  // namespace

std::string ratio_display(double researchers_per_product) {
  return "1 : " + one_decimal(researchers_per_product);
}

UniformShareTable uniform_share_rates(std::span<const UdaSummary> udas, double share,
                                      Rounding rounding) {
  check_share(share);
  UniformShareTable table;
  table.share = share;
  UdaSummary grand{"total", 0, 0.0};
  for (const auto& uda : udas) {
    table.rows.push_back(uniform_row(uda, share, rounding));
    grand.publications += uda.publications;
    grand.fte += uda.fte;
  }
  if (!udas.empty()) table.total = uniform_row(grand, share, rounding);
  return table;
}

UniformShareTable uniform_share_rates(const Corpus& corpus, double share, Rounding rounding) {
  std::vector<UdaSummary> udas;
  for (const auto& uda : corpus.udas()) udas.push_back(summarize_uda(corpus, uda));
  return uniform_share_rates(udas, share, rounding);
}

std::vector<ScenarioSpec> shares_to_specs(std::span<const double> shares) {
  std::vector<ScenarioSpec> specs;
  for (double s : shares) {
    check_share(s);
    specs.push_back({one_decimal(s * 100.0) + "%", SelectionRate::share_of_output(s)});
  }
  return specs;
}

std::vector<Scenario> build_scenarios(const UdaSummary& uda, std::span<const ScenarioSpec> specs,
                                      Rounding rounding) {
  std::vector<Scenario> out;
  std::set<std::string> labels;
  for (const auto& spec : specs) {
    spec.rate.validate();
    if (!labels.insert(spec.label).second) {
      throw ConfigError("duplicate scenario label '" + spec.label + "'");
    }
    Scenario s;
    s.label = spec.label;
    s.uda_id = uda.uda_id;
    s.rate = spec.rate;
    if (spec.rate.kind == SelectionRate::Kind::share_of_output) {
      const auto row = uniform_row(uda, spec.rate.value, rounding);
      s.derived_per_researcher = row.rate.value;
      s.pubs_to_select = row.to_select;
      s.researchers_per_product = row.researchers_per_product;
    } else {
      if (uda.publications <= 0) throw DataError("UDA " + uda.uda_id + " has no publications");
      s.pubs_to_select = round_count(spec.rate.value * uda.fte, rounding);
      s.researchers_per_product = 1.0 / spec.rate.value;
    }
    s.share = std::min(1.0, static_cast<double>(s.pubs_to_select) /
                                static_cast<double>(uda.publications));
    s.display = ratio_display(s.researchers_per_product);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Scenario> build_scenarios(const Corpus& corpus, const std::string& uda_id,
                                      std::span<const ScenarioSpec> specs, Rounding rounding) {
  return build_scenarios(summarize_uda(corpus, uda_id), specs, rounding);
}

std::vector<Scenario> build_scenarios(const Corpus& corpus, const std::string& uda_id,
                                      std::span<const double> shares, Rounding rounding) {
  const auto specs = shares_to_specs(shares);
  return build_scenarios(corpus, uda_id, specs, rounding);
}

CorrelationKind parse_correlation_kind(std::string_view name) {
  if (name == "spearman") return CorrelationKind::spearman;
  if (name == "kendall") return CorrelationKind::kendall;
  throw ConfigError("unknown correlation '" + std::string(name) + "' (spearman or kendall)");
}

std::string_view correlation_name(CorrelationKind kind) {
  return kind == CorrelationKind::spearman ? "spearman" : "kendall";
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double mean_pos = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_pos;
    i = j + 1;
  }
  return ranks;
}

double spearman_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DataError("correlation of vectors of different length");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(rx.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 && syy == 0.0) return 1.0;
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DataError("correlation of vectors of different length");
  std::int64_t concordant = 0, discordant = 0, pairs_x = 0, pairs_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx != 0) ++pairs_x;
      if (dy != 0) ++pairs_y;
      if (dx == 0 || dy == 0) continue;
      if ((dx > 0) == (dy > 0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  if (pairs_x == 0 && pairs_y == 0) return 1.0;
  if (pairs_x == 0 || pairs_y == 0) return 0.0;
  const double tau = static_cast<double>(concordant - discordant) /
                     std::sqrt(static_cast<double>(pairs_x) * static_cast<double>(pairs_y));
  return std::clamp(tau, -1.0, 1.0);
}

namespace {

double median_of(std::vector<int> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean_of(const std::vector<int>& v) {
  if (v.empty()) return 0.0;
  return static_cast<double>(std::accumulate(v.begin(), v.end(), std::int64_t{0})) /
         static_cast<double>(v.size());
}

}  // namespace

RankShiftStats compare_rankings(const Ranking& a, const Ranking& b, CorrelationKind kind) {
  std::map<std::string, int> ranks_b;
  for (const auto& e : b.entries) ranks_b.emplace(e.university_id, e.rank);

  std::vector<double> xa, xb;
  std::vector<int> shifts, changed;
  for (const auto& e : a.entries) {
    auto it = ranks_b.find(e.university_id);
    if (it == ranks_b.end()) continue;
    xa.push_back(e.rank);
    xb.push_back(it->second);
    const int shift = std::abs(e.rank - it->second);
    shifts.push_back(shift);
    if (shift > 0) changed.push_back(shift);
  }
  if (shifts.empty()) throw DataError("rankings share no university");

  RankShiftStats s;
  s.kind = kind;
  s.correlation = kind == CorrelationKind::spearman ? spearman_correlation(xa, xb)
                                                    : kendall_tau_b(xa, xb);
  s.n_total = static_cast<std::int64_t>(shifts.size());
  s.n_changed = static_cast<std::int64_t>(changed.size());
  s.mean_shift = mean_of(shifts);
  s.median_shift = median_of(shifts);
  s.max_shift = *std::max_element(shifts.begin(), shifts.end());
  s.mean_shift_changed = mean_of(changed);
  s.median_shift_changed = median_of(changed);
  s.n_dropped = static_cast<std::int64_t>(a.entries.size() + b.entries.size()) - 2 * s.n_total;
  return s;
}

int decile_of(int rank, int n) {
  if (n <= 0 || rank < 1 || rank > n) {
    throw DataError(fmt::format("rank {} outside 1..{}", rank, n));
  }
  return (10 * rank + n - 1) / n;
}

DecileMatrix decile_frequency(std::span<const Ranking> rankings) {
  if (rankings.empty()) throw DataError("decile frequency needs at least one ranking");
  const auto& first = rankings.front();
  std::set<std::string> members;
  for (const auto& e : first.entries) members.insert(e.university_id);

  std::map<std::string, std::array<int, 10>> counts;
  for (const auto& r : rankings) {
    if (r.uda_id != first.uda_id) throw DataError("rankings from different UDAs");
    std::set<std::string> these;
    for (const auto& e : r.entries) these.insert(e.university_id);
    if (these != members || these.size() != r.entries.size()) {
      throw DataError("rankings cover different university sets");
    }
    const int n = static_cast<int>(r.entries.size());
    for (const auto& e : r.entries) counts[e.university_id][decile_of(e.rank, n) - 1] += 1;
  }

  DecileMatrix m;
  m.uda_id = first.uda_id;
  m.n_scenarios = static_cast<int>(rankings.size());
  for (const auto& [id, c] : counts) {
    DecileRow row;
    row.university_id = id;
    row.counts = c;
    row.modal_decile =
        static_cast<int>(std::max_element(c.begin(), c.end()) - c.begin()) + 1;
    double weighted = 0;
    for (int d = 0; d < 10; ++d) weighted += (d + 1) * c[d];
    row.mean_decile = weighted / m.n_scenarios;
    m.rows.push_back(std::move(row));
  }
  std::sort(m.rows.begin(), m.rows.end(), [](const DecileRow& a, const DecileRow& b) {
    if (a.modal_decile != b.modal_decile) return a.modal_decile < b.modal_decile;
    if (a.mean_decile != b.mean_decile) return a.mean_decile < b.mean_decile;
    return a.university_id < b.university_id;
  });
  return m;
}

ScenarioSpec vtr_reference() { return {"vtr", SelectionRate::per_researcher(0.25)}; }

namespace {

std::vector<Ranking> assess_scenarios(const Corpus& corpus, const ImpactScores& scores,
                                      const std::string& uda_id,
                                      const std::vector<Scenario>& scenarios,
                                      const AssessmentConfig& config) {
  std::vector<std::future<Ranking>> jobs;
  for (const auto& s : scenarios) {
    jobs.push_back(std::async(std::launch::async, [&, rate = s.rate] {
      return assess_uda(corpus, scores, uda_id, rate, config).ranking;
    }));
  }
  std::vector<Ranking> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

Ranking benchmark_ranking(const Corpus& corpus, const ImpactScores& scores,
                          const std::string& uda_id, const AssessmentConfig& config) {
  return assess_uda(corpus, scores, uda_id, SelectionRate::share_of_output(1.0), config).ranking;
}

std::vector<ConvergencePoint> convergence_points(const std::vector<Scenario>& scenarios,
                                                 const std::vector<Ranking>& rankings,
                                                 const Ranking& benchmark, double cost_per_product,
                                                 CorrelationKind kind) {
  std::vector<ConvergencePoint> out;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const auto stats = compare_rankings(rankings[i], benchmark, kind);
    out.push_back({scenarios[i].label, scenarios[i].share, stats.correlation, stats.median_shift,
                   cost_per_product * static_cast<double>(scenarios[i].pubs_to_select),
                   scenarios[i].pubs_to_select});
  }
  return out;
}

void check_uda(const Corpus& corpus, const std::string& uda_id) {
  if (!std::binary_search(corpus.udas().begin(), corpus.udas().end(), uda_id)) {
    throw UnknownIdError("unknown UDA " + uda_id);
  }
}

}  // namespace

std::vector<ConvergencePoint> convergence_curve(const Corpus& corpus, const std::string& uda_id,
                                                std::span<const ScenarioSpec> specs,
                                                double cost_per_product,
                                                const AssessmentConfig& config,
                                                CorrelationKind kind) {
  check_uda(corpus, uda_id);
  config.validate();
  if (!(cost_per_product > 0.0)) throw ConfigError("cost per product must be positive");
  const auto scores = score_corpus(corpus, config.baseline_mode);
  const auto scenarios = build_scenarios(corpus, uda_id, specs, config.rounding);
  const auto rankings = assess_scenarios(corpus, scores, uda_id, scenarios, config);
  const auto benchmark = benchmark_ranking(corpus, scores, uda_id, config);
  return convergence_points(scenarios, rankings, benchmark, cost_per_product, kind);
}

std::vector<ConvergencePoint> convergence_curve(const Corpus& corpus, const std::string& uda_id,
                                                std::span<const double> shares,
                                                double cost_per_product,
                                                const AssessmentConfig& config,
                                                CorrelationKind kind) {
  const auto specs = shares_to_specs(shares);
  return convergence_curve(corpus, uda_id, specs, cost_per_product, config, kind);
}

SweepResult run_sweep(const Corpus& corpus, const std::string& uda_id,
                      std::span<const ScenarioSpec> specs, const SweepOptions& options) {
  check_uda(corpus, uda_id);
  if (specs.empty()) throw ConfigError("a sweep needs at least one scenario");
  const auto& config = options.assessment;
  config.validate();
  if (!(options.cost_per_product > 0.0)) throw ConfigError("cost per product must be positive");

  const auto scores = score_corpus(corpus, config.baseline_mode);
  const auto summary = summarize_uda(corpus, uda_id);

  SweepResult out;
  out.uda_id = uda_id;
  out.scenarios = build_scenarios(summary, specs, config.rounding);
  out.rankings = assess_scenarios(corpus, scores, uda_id, out.scenarios, config);
  const ScenarioSpec ref_spec[] = {options.reference};
  out.reference_scenario = build_scenarios(summary, ref_spec, config.rounding).front();
  out.reference = assess_uda(corpus, scores, uda_id, options.reference.rate, config).ranking;
  out.benchmark = benchmark_ranking(corpus, scores, uda_id, config);

  for (const auto& r : out.rankings) {
    out.vs_reference.push_back(compare_rankings(r, out.reference, options.correlation));
  }
  if (options.pairwise) {
    for (std::size_t i = 0; i < out.rankings.size(); ++i) {
      for (std::size_t j = 0; j < out.rankings.size(); ++j) {
        out.pairwise.push_back({out.scenarios[i].label, out.scenarios[j].label,
                                compare_rankings(out.rankings[i], out.rankings[j],
                                                 options.correlation)});
      }
    }
  }
  out.deciles = decile_frequency(out.rankings);
  out.convergence = convergence_points(out.scenarios, out.rankings, out.benchmark,
                                       options.cost_per_product, options.correlation);
  return out;
}

}  // namespace vtrsim
