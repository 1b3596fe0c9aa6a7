#include "vtrsim/assessment.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "vtrsim/csv.hpp"
#include "vtrsim/error.hpp"

namespace vtrsim {

SelectionRate SelectionRate::per_researcher(double products_per_fte) {
  SelectionRate r{Kind::per_researcher, products_per_fte};
  r.validate();
  return r;
}

SelectionRate SelectionRate::share_of_output(double share) {
  SelectionRate r{Kind::share_of_output, share};
  r.validate();
  return r;
}

void SelectionRate::validate() const {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError("selection rate must be positive, got " + csv::format_double(value));
  }
  if (kind == Kind::share_of_output && value > 1.0) {
    throw ConfigError("share of output must be in (0, 1], got " + csv::format_double(value));
  }
}

namespace {

double parse_number(std::string_view text, std::string_view what) {
  try {
    return csv::parse_double(text, "rate", 0, what);
  } catch (const ParseError&) {
    throw ConfigError("invalid selection rate '" + std::string(what) + "'");
  }
}

}  // namespace

SelectionRate parse_selection_rate(std::string_view text) {
  const std::string original(text);
  auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    return SelectionRate::per_researcher(parse_number(text, original));
  }
  auto head = text.substr(0, colon);
  auto tail = text.substr(colon + 1);
  if (head == "per_researcher" || head == "per") {
    return SelectionRate::per_researcher(parse_number(tail, original));
  }
  if (head == "share" || head == "share_of_output") {
    double scale = 1.0;
    if (!tail.empty() && tail.back() == '%') {
      tail.remove_suffix(1);
      scale = 0.01;
    }
    return SelectionRate::share_of_output(parse_number(tail, original) * scale);
  }
  // "1:4" ratio notation: products : researchers.
  const double products = parse_number(head, original);
  const double researchers = parse_number(tail, original);
  if (!(researchers > 0)) throw ConfigError("invalid selection rate '" + original + "'");
  return SelectionRate::per_researcher(products / researchers);
}

std::string to_string(const SelectionRate& rate) {
  return (rate.kind == SelectionRate::Kind::per_researcher ? "per_researcher:" : "share:") +
         csv::format_double(rate.value);
}

Rounding parse_rounding(std::string_view name) {
  if (name == "half_up" || name == "half-up") return Rounding::half_up;
  if (name == "half_even" || name == "half-even") return Rounding::half_even;
  if (name == "floor") return Rounding::floor;
  if (name == "ceil") return Rounding::ceil;
  throw ConfigError("unknown rounding mode '" + std::string(name) + "'");
}

std::string_view rounding_name(Rounding rounding) {
  switch (rounding) {
    case Rounding::half_up: return "half_up";
    case Rounding::half_even: return "half_even";
    case Rounding::floor: return "floor";
    case Rounding::ceil: return "ceil";
  }
  return "?";
}

std::int64_t round_count(double x, Rounding rounding) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DataError("cannot round product count " + csv::format_double(x));
  }
  const double snapped = std::round(x * 2.0) / 2.0;
  if (std::abs(x - snapped) <= 1e-9 * std::max(1.0, x)) x = snapped;
  const double fl = std::floor(x);
  double out = fl;
  switch (rounding) {
    case Rounding::half_up: out = std::floor(x + 0.5); break;
    case Rounding::half_even: {
      const double frac = x - fl;
      if (frac > 0.5) {
        out = fl + 1.0;
      } else if (frac == 0.5) {
        out = std::fmod(fl, 2.0) == 0.0 ? fl : fl + 1.0;
      }
      break;
    }
    case Rounding::floor: break;
    case Rounding::ceil: out = std::ceil(x); break;
  }
  return static_cast<std::int64_t>(out);
}

const SelectionRate& AssessmentConfig::rate_for(const std::string& uda_id) const {
  auto it = uda_rates.find(uda_id);
  return it == uda_rates.end() ? rate : it->second;
}

void AssessmentConfig::validate() const {
  rate.validate();
  for (const auto& [uda, r] : uda_rates) r.validate();
  if (!(min_fte >= 0.0) || !std::isfinite(min_fte)) throw ConfigError("min_fte must be >= 0");
  if (min_required < 0) throw ConfigError("min_required must be >= 0");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0 && weights[i] <= 1.0)) throw ConfigError("weights must lie in (0, 1]");
    if (i > 0 && !(weights[i] < weights[i - 1])) {
      throw ConfigError("weights must be strictly decreasing");
    }
  }
}

UdaTotals uda_totals(const Corpus& corpus, const std::string& uda_id) {
  return {static_cast<std::int64_t>(corpus.uda_publications(uda_id).size()),
          corpus.uda_fte(uda_id)};
}

double per_researcher_equivalent(const SelectionRate& rate, const UdaTotals& totals,
                                 Rounding rounding) {
  if (rate.kind == SelectionRate::Kind::per_researcher) return rate.value;
  if (!(totals.fte > 0.0)) throw DataError("UDA has no research staff");
  const auto to_select = round_count(rate.value * static_cast<double>(totals.publications), rounding);
  return static_cast<double>(to_select) / totals.fte;
}

std::int64_t required_selection_count(double fte, const SelectionRate& rate,
                                      const UdaTotals& totals, Rounding rounding) {
  if (!(fte >= 0.0)) throw DataError("negative fte");
  if (fte == 0.0) return 0;
  return round_count(fte * per_researcher_equivalent(rate, totals, rounding), rounding);
}

std::vector<std::string> eligible_universities(const Corpus& corpus, const std::string& uda_id,
                                               double min_fte) {
  std::vector<std::string> out;
  for (const auto& u : corpus.staffed_universities(uda_id)) {
    if (*corpus.fte(u, uda_id) >= min_fte) out.push_back(u);
  }
  return out;
}

std::vector<std::size_t> select_best_indices(const Corpus& corpus, const ImpactScores& scores,
                                             const std::string& university_id,
                                             const std::string& uda_id, std::int64_t n_required) {
  if (n_required < 0) throw DataError("negative selection requirement");
  std::vector<std::size_t> pool = corpus.portfolio(university_id, uda_id);
  const auto& pubs = corpus.publications();
  auto better = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return pubs[a].id < pubs[b].id;
  };
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(n_required), pool.size());
  std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n), pool.end(), better);
  pool.resize(n);
  return pool;
}

std::vector<std::string> select_best(const Corpus& corpus, const ImpactScores& scores,
                                     const std::string& university_id, const std::string& uda_id,
                                     std::int64_t n_required) {
  std::vector<std::string> ids;
  for (auto i : select_best_indices(corpus, scores, university_id, uda_id, n_required)) {
    ids.push_back(corpus.publications()[i].id);
  }
  return ids;
}

QuartileThresholds quartile_thresholds(std::span<const double> pool) {
  if (pool.empty()) throw DataError("empty quartile pool");
  std::vector<double> sorted(pool.begin(), pool.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const std::size_t n = sorted.size();
  auto at_tier = [&](std::size_t k) { return sorted[(k * n + 3) / 4 - 1]; };
  return {at_tier(1), at_tier(2), at_tier(3)};
}

std::vector<double> quartile_ratings(std::span<const double> pool, const QuartileWeights& weights) {
  const auto t = quartile_thresholds(pool);
  std::vector<double> out;
  out.reserve(pool.size());
  for (double v : pool) {
    if (v >= t.first) {
      out.push_back(weights[0]);
    } else if (v >= t.second) {
      out.push_back(weights[1]);
    } else if (v >= t.third) {
      out.push_back(weights[2]);
    } else {
      out.push_back(weights[3]);
    }
  }
  return out;
}

double university_score(std::span<const double> ratings) {
  if (ratings.empty()) throw DataError("university has no selected products");
  const double mean = std::accumulate(ratings.begin(), ratings.end(), 0.0) /
                      static_cast<double>(ratings.size());
  return std::round(mean * 1e12) / 1e12;
}

const RankingEntry* Ranking::find(const std::string& university_id) const {
  for (const auto& e : entries) {
    if (e.university_id == university_id) return &e;
  }
  return nullptr;
}

Ranking rank_universities(std::string uda_id, std::vector<RankingEntry> entries) {
  std::sort(entries.begin(), entries.end(), [](const RankingEntry& a, const RankingEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.university_id < b.university_id;
  });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    entries[i].rank = (i > 0 && entries[i].score == entries[i - 1].score)
                          ? entries[i - 1].rank
                          : static_cast<int>(i + 1);
  }
  return Ranking{std::move(uda_id), std::move(entries), {}};
}

UdaAssessment assess_uda(const Corpus& corpus, const ImpactScores& scores,
                         const std::string& uda_id, const SelectionRate& rate,
                         const AssessmentConfig& config) {
  const auto totals = uda_totals(corpus, uda_id);
  UdaAssessment out;

  std::vector<double> pool;
  for (const auto& u : eligible_universities(corpus, uda_id, config.min_fte)) {
    SelectionRecord rec;
    rec.university_id = u;
    rec.fte = *corpus.fte(u, uda_id);
    rec.available = static_cast<std::int64_t>(corpus.portfolio(u, uda_id).size());
    if (rate.full_production()) {
      rec.n_required = rec.available;
    } else {
      rec.n_required = std::max(config.min_required,
                                required_selection_count(rec.fte, rate, totals, config.rounding));
    }
    rec.selected = select_best_indices(corpus, scores, u, uda_id, rec.n_required);
    for (auto i : rec.selected) pool.push_back(scores[i]);
    out.selections.push_back(std::move(rec));
  }
  out.pool_size = pool.size();

  std::vector<RankingEntry> ranked;
  std::vector<UnrankedEntry> unranked;
  if (!pool.empty()) {
    out.thresholds = quartile_thresholds(pool);
    const auto ratings = quartile_ratings(pool, config.weights);
    std::size_t cursor = 0;
    for (auto& rec : out.selections) {
      rec.ratings.assign(ratings.begin() + static_cast<std::ptrdiff_t>(cursor),
                         ratings.begin() + static_cast<std::ptrdiff_t>(cursor + rec.selected.size()));
      cursor += rec.selected.size();
    }
  }
  for (const auto& rec : out.selections) {
    if (rec.selected.empty()) {
      unranked.push_back({rec.university_id, rec.n_required});
      continue;
    }
    ranked.push_back({rec.university_id, university_score(rec.ratings), 0,
                      static_cast<std::int64_t>(rec.selected.size()), rec.n_required});
  }
  out.ranking = rank_universities(uda_id, std::move(ranked));
  out.ranking.unranked = std::move(unranked);
  return out;
}

std::map<std::string, UdaAssessment> run_assessment_detailed(const Corpus& corpus,
                                                             const ImpactScores& scores,
                                                             const AssessmentConfig& config) {
  config.validate();
  std::vector<std::future<UdaAssessment>> jobs;
  for (const auto& uda : corpus.udas()) {
    jobs.push_back(std::async(std::launch::async, [&corpus, &scores, &config, &uda] {
      return assess_uda(corpus, scores, uda, config.rate_for(uda), config);
    }));
  }
  std::map<std::string, UdaAssessment> out;
  for (std::size_t i = 0; i < jobs.size(); ++i) out.emplace(corpus.udas()[i], jobs[i].get());
  return out;
}

std::map<std::string, Ranking> run_assessment(const Corpus& corpus, const AssessmentConfig& config) {
  config.validate();
  const auto scores = score_corpus(corpus, config.baseline_mode);
  std::map<std::string, Ranking> out;
  for (auto& [uda, detail] : run_assessment_detailed(corpus, scores, config)) {
    out.emplace(uda, std::move(detail.ranking));
  }
  return out;
}

double percent_1dp(std::int64_t numerator, std::int64_t denominator) {
  if (denominator <= 0 || numerator < 0) throw DataError("percentage of an empty total");
  const std::int64_t tenths = (2000 * numerator + denominator) / (2 * denominator);
  return static_cast<double>(tenths) / 10.0;
}

RepresentativenessReport summarize_representativeness(std::span<const UdaCount> counts) {
  RepresentativenessReport report;
  for (const auto& c : counts) {
    UdaRepresentativeness row;
    row.uda_id = c.uda_id;
    row.selected = c.selected;
    row.total = c.total;
    row.share_pct = c.total > 0 ? percent_1dp(c.selected, c.total) : 0.0;
    report.selected += c.selected;
    report.total += c.total;
    report.udas.push_back(std::move(row));
  }
  report.share_pct = report.total > 0 ? percent_1dp(report.selected, report.total) : 0.0;
  return report;
}

RepresentativenessReport representativeness_report(const Corpus& corpus,
                                                   const AssessmentConfig& config) {
  config.validate();
  std::vector<UdaCount> counts;
  std::vector<std::vector<UniversityRepresentativeness>> breakdowns;
  for (const auto& uda : corpus.udas()) {
    const auto& rate = config.rate_for(uda);
    const auto totals = uda_totals(corpus, uda);
    UdaCount count{uda, 0, totals.publications};
    std::vector<UniversityRepresentativeness> rows;
    for (const auto& u : corpus.staffed_universities(uda)) {
      UniversityRepresentativeness r;
      r.university_id = u;
      r.fte = *corpus.fte(u, uda);
      r.eligible = r.fte >= config.min_fte;
      r.total_publications = static_cast<std::int64_t>(corpus.portfolio(u, uda).size());
      if (rate.full_production()) {
        r.n_required = r.total_publications;
      } else {
        r.n_required = required_selection_count(r.fte, rate, totals, config.rounding);
        if (r.eligible) r.n_required = std::max(r.n_required, config.min_required);
      }
      r.n_selected = std::min(r.n_required, r.total_publications);
      if (r.total_publications > 0) {
        r.sampling_rate_pct = percent_1dp(r.n_required, r.total_publications);
        r.share_pct = percent_1dp(r.n_selected, r.total_publications);
      }
      count.selected += r.n_selected;
      rows.push_back(std::move(r));
    }
    counts.push_back(count);
    breakdowns.push_back(std::move(rows));
  }
  auto report = summarize_representativeness(counts);
  for (std::size_t i = 0; i < report.udas.size(); ++i) {
    report.udas[i].universities = std::move(breakdowns[i]);
  }
  return report;
}

}  // namespace vtrsim
