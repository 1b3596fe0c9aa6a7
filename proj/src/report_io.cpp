#include "vtrsim/report_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <istream>
#include <sstream>

#include "json.hpp"

#include "vtrsim/csv.hpp"
#include "vtrsim/error.hpp"

namespace vtrsim {

using ojson = nlohmann::ordered_json;

namespace {

std::string fmt_num(double v) { return csv::format_double(v); }

std::string csv_header_line(const RunHeader& header) {
  std::string line = "# vtrsim " + header.command;
  for (const auto& [k, v] : header.fields) line += " " + k + "=" + v;
  return line + "\n";
}

std::string records_header_line(const RunHeader& header) {
  ojson meta = {{"command", header.command}};
  for (const auto& [k, v] : header.fields) meta[k] = v;
  return ojson{{"meta", meta}}.dump() + "\n";
}

std::string header_line(const RunHeader& header, Format format) {
  return format == Format::csv ? csv_header_line(header) : records_header_line(header);
}

const std::vector<std::string> kRankingColumns = {
    "uda_id", "university_id", "status", "rank", "score", "n_selected", "n_required"};

std::vector<std::string> ranking_row(const Ranking& r, const RankingEntry& e) {
  return {r.uda_id, e.university_id, "ranked", std::to_string(e.rank), fmt_num(e.score),
          std::to_string(e.n_selected), std::to_string(e.n_required)};
}

std::vector<std::string> unranked_row(const Ranking& r, const UnrankedEntry& e) {
  return {r.uda_id, e.university_id, "unranked", "", "", "0", std::to_string(e.n_required)};
}

ojson ranking_record(const Ranking& r, const RankingEntry& e) {
  return {{"uda_id", r.uda_id},         {"university_id", e.university_id},
          {"status", "ranked"},         {"rank", e.rank},
          {"score", e.score},           {"n_selected", e.n_selected},
          {"n_required", e.n_required}};
}

ojson unranked_record(const Ranking& r, const UnrankedEntry& e) {
  return {{"uda_id", r.uda_id},   {"university_id", e.university_id},
          {"status", "unranked"}, {"rank", nullptr},
          {"score", nullptr},     {"n_selected", 0},
          {"n_required", e.n_required}};
}

const std::vector<std::string> kStatsColumns = {
    "correlation_kind", "correlation",  "n_changed",          "n_total",
    "mean_shift",       "median_shift", "max_shift",          "mean_shift_changed",
    "median_shift_changed", "n_dropped"};

std::vector<std::string> stats_row(const RankShiftStats& s) {
  return {std::string(correlation_name(s.kind)),
          fmt_num(s.correlation),
          std::to_string(s.n_changed),
          std::to_string(s.n_total),
          fmt_num(s.mean_shift),
          fmt_num(s.median_shift),
          std::to_string(s.max_shift),
          fmt_num(s.mean_shift_changed),
          fmt_num(s.median_shift_changed),
          std::to_string(s.n_dropped)};
}

ojson stats_record(const RankShiftStats& s) {
  return {{"correlation_kind", correlation_name(s.kind)},
          {"correlation", s.correlation},
          {"n_changed", s.n_changed},
          {"n_total", s.n_total},
          {"mean_shift", s.mean_shift},
          {"median_shift", s.median_shift},
          {"max_shift", s.max_shift},
          {"mean_shift_changed", s.mean_shift_changed},
          {"median_shift_changed", s.median_shift_changed},
          {"n_dropped", s.n_dropped}};
}

std::vector<std::string> prepend(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

ojson merge(ojson head, const ojson& tail) {
  for (const auto& [k, v] : tail.items()) head[k] = v;
  return head;
}

std::string opt_pct(const std::optional<double>& v) { return v ? fmt_num(*v) : ""; }

ojson opt_json(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

const std::vector<std::string> kScenarioColumns = {
    "label", "uda_id", "rate_kind", "rate_value", "derived_per_researcher",
    "pubs_to_select", "share", "display"};

std::string rate_kind_name(const SelectionRate& r) {
  return r.kind == SelectionRate::Kind::per_researcher ? "per_researcher" : "share_of_output";
}

std::vector<std::string> scenario_row(const Scenario& s) {
  return {s.label,
          s.uda_id,
          rate_kind_name(s.rate),
          fmt_num(s.rate.value),
          s.derived_per_researcher ? fmt_num(*s.derived_per_researcher) : "",
          std::to_string(s.pubs_to_select),
          fmt_num(s.share),
          s.display};
}

ojson scenario_record(const Scenario& s) {
  return {{"label", s.label},
          {"uda_id", s.uda_id},
          {"rate_kind", rate_kind_name(s.rate)},
          {"rate_value", s.rate.value},
          {"derived_per_researcher", opt_json(s.derived_per_researcher)},
          {"pubs_to_select", s.pubs_to_select},
          {"share", s.share},
          {"display", s.display}};
}

std::vector<std::string> decile_columns() {
  std::vector<std::string> cols{"uda_id", "university_id"};
  for (int d = 1; d <= 10; ++d) cols.push_back("d" + std::to_string(d));
  cols.push_back("modal_decile");
  cols.push_back("mean_decile");
  return cols;
}

std::vector<std::string> decile_row(const DecileMatrix& m, const DecileRow& r) {
  std::vector<std::string> row{m.uda_id, r.university_id};
  for (int c : r.counts) row.push_back(std::to_string(c));
  row.push_back(std::to_string(r.modal_decile));
  row.push_back(fmt_num(r.mean_decile));
  return row;
}

ojson decile_record(const DecileMatrix& m, const DecileRow& r) {
  return {{"uda_id", m.uda_id},
          {"university_id", r.university_id},
          {"counts", r.counts},
          {"modal_decile", r.modal_decile},
          {"mean_decile", r.mean_decile}};
}

const std::vector<std::string> kConvergenceColumns = {
    "label", "share", "correlation_to_benchmark", "median_shift_to_benchmark", "cost_index",
    "pubs_to_select"};

std::vector<std::string> convergence_row(const ConvergencePoint& p) {
  return {p.label, fmt_num(p.share), fmt_num(p.correlation_to_benchmark),
          fmt_num(p.median_shift_to_benchmark), fmt_num(p.cost_index),
          std::to_string(p.pubs_to_select)};
}

ojson convergence_record(const ConvergencePoint& p) {
  return {{"label", p.label},
          {"share", p.share},
          {"correlation_to_benchmark", p.correlation_to_benchmark},
          {"median_shift_to_benchmark", p.median_shift_to_benchmark},
          {"cost_index", p.cost_index},
          {"pubs_to_select", p.pubs_to_select}};
}

void add_ranking_rows(std::ostringstream& os, const std::string& label, const Ranking& r) {
  for (const auto& e : r.entries) os << csv::join(prepend({label}, ranking_row(r, e))) << '\n';
  for (const auto& e : r.unranked) os << csv::join(prepend({label}, unranked_row(r, e))) << '\n';
}

void add_ranking_records(std::ostringstream& os, const std::string& label, const Ranking& r) {
  const ojson head = {{"record", "ranking"}, {"scenario", label}};
  for (const auto& e : r.entries) os << merge(head, ranking_record(r, e)).dump() << '\n';
  for (const auto& e : r.unranked) os << merge(head, unranked_record(r, e)).dump() << '\n';
}

}  // namespace

std::string write_ranking(const Ranking& ranking, Format format, const RunHeader& header) {
  std::ostringstream os;
  os << header_line(header, format);
  if (format == Format::csv) {
    os << csv::join(kRankingColumns) << '\n';
    for (const auto& e : ranking.entries) os << csv::join(ranking_row(ranking, e)) << '\n';
    for (const auto& e : ranking.unranked) os << csv::join(unranked_row(ranking, e)) << '\n';
  } else {
    for (const auto& e : ranking.entries) os << ranking_record(ranking, e).dump() << '\n';
    for (const auto& e : ranking.unranked) os << unranked_record(ranking, e).dump() << '\n';
  }
  return os.str();
}

namespace {

void add_parsed_entry(Ranking& r, const std::string& uda, const std::string& source,
                      std::size_t line) {
  if (r.uda_id.empty()) {
    r.uda_id = uda;
  } else if (r.uda_id != uda) {
    throw ParseError(source, line, "ranking file mixes UDAs " + r.uda_id + " and " + uda);
  }
}

void finish_ranking(Ranking& r, const std::string& source) {
  if (r.uda_id.empty()) throw ParseError(source, 0, "ranking file has no entries");
  std::set<std::string> seen;
  for (const auto& e : r.entries) {
    if (!seen.insert(e.university_id).second) {
      throw DuplicateIdError(source + ": duplicate university " + e.university_id);
    }
    if (e.rank < 1) throw ParseError(source, 0, "non-positive rank for " + e.university_id);
  }
  std::stable_sort(r.entries.begin(), r.entries.end(),
                   [](const RankingEntry& a, const RankingEntry& b) { return a.rank < b.rank; });
}

}  // namespace

Ranking parse_ranking(std::istream& in, Format format, const std::string& source) {
  Ranking r;
  if (format == Format::csv) {
    auto table = csv::Table::read(in, source);
    const auto c_uda = table.column("uda_id");
    const auto c_univ = table.column("university_id");
    const auto c_status = table.find_column("status");
    const auto c_rank = table.column("rank");
    const auto c_score = table.column("score");
    const auto c_sel = table.column("n_selected");
    const auto c_req = table.column("n_required");
    for (const auto& row : table.rows()) {
      const auto& f = row.fields;
      add_parsed_entry(r, f[c_uda], source, row.line);
      const bool unranked = (c_status && f[*c_status] == "unranked") || f[c_rank].empty();
      if (unranked) {
        r.unranked.push_back(
            {f[c_univ], csv::parse_int(f[c_req], source, row.line, "n_required")});
        continue;
      }
      r.entries.push_back(
          {f[c_univ], csv::parse_double(f[c_score], source, row.line, "score"),
           static_cast<int>(csv::parse_int(f[c_rank], source, row.line, "rank")),
           csv::parse_int(f[c_sel], source, row.line, "n_selected"),
           csv::parse_int(f[c_req], source, row.line, "n_required")});
    }
  } else {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        auto o = nlohmann::json::parse(line);
        if (o.contains("meta")) continue;
        add_parsed_entry(r, o.at("uda_id").get<std::string>(), source, line_no);
        if (o.value("status", "ranked") == "unranked" || o.at("rank").is_null()) {
          r.unranked.push_back({o.at("university_id").get<std::string>(),
                                o.at("n_required").get<std::int64_t>()});
          continue;
        }
        r.entries.push_back({o.at("university_id").get<std::string>(),
                             o.at("score").get<double>(), o.at("rank").get<int>(),
                             o.at("n_selected").get<std::int64_t>(),
                             o.at("n_required").get<std::int64_t>()});
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(source, line_no, e.what());
      }
    }
  }
  finish_ranking(r, source);
  return r;
}

Ranking load_ranking(const std::string& path, Format format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return parse_ranking(in, format, path);
}

std::string write_representativeness(const RepresentativenessReport& report, Format format,
                                     const RunHeader& header) {
  std::ostringstream os;
  os << header_line(header, format);
  if (format == Format::csv) {
    os << csv::join({"level", "uda_id", "university_id", "fte", "eligible", "n_required",
                     "n_selected", "total_pubs", "share_pct", "sampling_rate_pct", "counting"})
       << '\n';
    for (const auto& uda : report.udas) {
      os << csv::join({"uda", uda.uda_id, "", "", "", "", std::to_string(uda.selected),
                       std::to_string(uda.total), fmt_num(uda.share_pct), "", report.counting})
         << '\n';
      for (const auto& u : uda.universities) {
        os << csv::join({"university", uda.uda_id, u.university_id, fmt_num(u.fte),
                         u.eligible ? "1" : "0", std::to_string(u.n_required),
                         std::to_string(u.n_selected), std::to_string(u.total_publications),
                         opt_pct(u.share_pct), opt_pct(u.sampling_rate_pct), report.counting})
           << '\n';
      }
    }
    os << csv::join({"total", "", "", "", "", "", std::to_string(report.selected),
                     std::to_string(report.total), fmt_num(report.share_pct), "",
                     report.counting})
       << '\n';
  } else {
    for (const auto& uda : report.udas) {
      os << ojson{{"level", "uda"},          {"uda_id", uda.uda_id},
                  {"n_selected", uda.selected}, {"total_pubs", uda.total},
                  {"share_pct", uda.share_pct}, {"counting", report.counting}}
                .dump()
         << '\n';
      for (const auto& u : uda.universities) {
        os << ojson{{"level", "university"},
                    {"uda_id", uda.uda_id},
                    {"university_id", u.university_id},
                    {"fte", u.fte},
                    {"eligible", u.eligible},
                    {"n_required", u.n_required},
                    {"n_selected", u.n_selected},
                    {"total_pubs", u.total_publications},
                    {"share_pct", opt_json(u.share_pct)},
                    {"sampling_rate_pct", opt_json(u.sampling_rate_pct)},
                    {"counting", report.counting}}
                  .dump()
           << '\n';
      }
    }
    os << ojson{{"level", "total"},           {"n_selected", report.selected},
                {"total_pubs", report.total}, {"share_pct", report.share_pct},
                {"counting", report.counting}}
              .dump()
       << '\n';
  }
  return os.str();
}

std::string write_stats(const RankShiftStats& stats, Format format, const RunHeader& header) {
  std::ostringstream os;
  os << header_line(header, format);
  if (format == Format::csv) {
    os << csv::join(kStatsColumns) << '\n' << csv::join(stats_row(stats)) << '\n';
  } else {
    os << stats_record(stats).dump() << '\n';
  }
  return os.str();
}

std::string write_decile_matrix(const DecileMatrix& matrix, Format format,
                                const RunHeader& header) {
  std::ostringstream os;
  os << header_line(header, format);
  if (format == Format::csv) {
    os << csv::join(decile_columns()) << '\n';
    for (const auto& r : matrix.rows) os << csv::join(decile_row(matrix, r)) << '\n';
  } else {
    for (const auto& r : matrix.rows) os << decile_record(matrix, r).dump() << '\n';
  }
  return os.str();
}

std::string write_convergence_series(const std::vector<ConvergencePoint>& points,
                                     const std::string& measure) {
  std::ostringstream os;
  os << "share," << measure << '\n';
  for (const auto& p : points) {
    const double v = measure == "correlation" ? p.correlation_to_benchmark
                                              : p.median_shift_to_benchmark;
    os << fmt_num(p.share) << ',' << fmt_num(v) << '\n';
  }
  return os.str();
}

FileSet write_sweep(const SweepResult& sweep, Format format, const RunHeader& header) {
  FileSet files;
  const std::string ref_label = "reference:" + sweep.reference_scenario.label;
  if (format == Format::csv) {
    std::ostringstream scen, ranks, stats, pairs, conv;
    scen << csv_header_line(header) << csv::join(kScenarioColumns) << '\n';
    scen << csv::join(scenario_row(sweep.reference_scenario)) << '\n';
    for (const auto& s : sweep.scenarios) scen << csv::join(scenario_row(s)) << '\n';

    ranks << csv_header_line(header) << csv::join(prepend({"scenario"}, kRankingColumns)) << '\n';
    for (std::size_t i = 0; i < sweep.scenarios.size(); ++i) {
      add_ranking_rows(ranks, sweep.scenarios[i].label, sweep.rankings[i]);
    }
    add_ranking_rows(ranks, ref_label, sweep.reference);
    add_ranking_rows(ranks, "benchmark", sweep.benchmark);

    stats << csv_header_line(header) << csv::join(prepend({"scenario", "against"}, kStatsColumns))
          << '\n';
    for (std::size_t i = 0; i < sweep.scenarios.size(); ++i) {
      stats << csv::join(prepend({sweep.scenarios[i].label, ref_label},
                                 stats_row(sweep.vs_reference[i])))
            << '\n';
    }

    conv << csv_header_line(header) << csv::join(kConvergenceColumns) << '\n';
    for (const auto& p : sweep.convergence) conv << csv::join(convergence_row(p)) << '\n';

    files.emplace_back("sweep_scenarios.csv", scen.str());
    files.emplace_back("sweep_rankings.csv", ranks.str());
    files.emplace_back("sweep_stats.csv", stats.str());
    if (!sweep.pairwise.empty()) {
      pairs << csv_header_line(header)
            << csv::join(prepend({"scenario", "against"}, kStatsColumns)) << '\n';
      for (const auto& p : sweep.pairwise) {
        pairs << csv::join(prepend({p.first, p.second}, stats_row(p.stats))) << '\n';
      }
      files.emplace_back("sweep_pairwise.csv", pairs.str());
    }
    files.emplace_back("sweep_deciles.csv", write_decile_matrix(sweep.deciles, format, header));
    files.emplace_back("sweep_convergence.csv", conv.str());
  } else {
    std::ostringstream os;
    os << records_header_line(header);
    auto tagged = [](const char* kind, const ojson& body) {
      return merge(ojson{{"record", kind}}, body).dump();
    };
    os << tagged("scenario", merge(ojson{{"role", "reference"}},
                                   scenario_record(sweep.reference_scenario)))
       << '\n';
    for (const auto& s : sweep.scenarios) {
      os << tagged("scenario", merge(ojson{{"role", "scenario"}}, scenario_record(s))) << '\n';
    }
    for (std::size_t i = 0; i < sweep.scenarios.size(); ++i) {
      add_ranking_records(os, sweep.scenarios[i].label, sweep.rankings[i]);
    }
    add_ranking_records(os, ref_label, sweep.reference);
    add_ranking_records(os, "benchmark", sweep.benchmark);
    for (std::size_t i = 0; i < sweep.scenarios.size(); ++i) {
      os << tagged("stats", merge(ojson{{"scenario", sweep.scenarios[i].label},
                                        {"against", ref_label}},
                                  stats_record(sweep.vs_reference[i])))
         << '\n';
    }
    for (const auto& p : sweep.pairwise) {
      os << tagged("pairwise", merge(ojson{{"scenario", p.first}, {"against", p.second}},
                                     stats_record(p.stats)))
         << '\n';
    }
    for (const auto& r : sweep.deciles.rows) {
      os << tagged("decile", decile_record(sweep.deciles, r)) << '\n';
    }
    for (const auto& p : sweep.convergence) {
      os << tagged("convergence", convergence_record(p)) << '\n';
    }
    files.emplace_back("sweep.jsonl", os.str());
  }
  files.emplace_back("convergence_correlation.csv",
                     write_convergence_series(sweep.convergence, "correlation"));
  files.emplace_back("convergence_median_shift.csv",
                     write_convergence_series(sweep.convergence, "median_shift"));
  return files;
}

std::string write_baselines(const BaselineTable& table, const RunHeader& header) {
  std::ostringstream os;
  os << csv_header_line(header) << "year,category_id,mean_citations,article_count\n";
  for (const auto& [key, cell] : table.cells()) {
    os << csv::join({std::to_string(key.first), key.second, fmt_num(cell.mean_citations),
                     std::to_string(cell.article_count)})
       << '\n';
  }
  return os.str();
}

std::string write_impact_scores(const ImpactScores& scores, const RunHeader& header) {
  std::ostringstream os;
  os << csv_header_line(header) << "publication_id,aii\n";
  for (std::size_t i = 0; i < scores.size(); ++i) {
    os << csv::join({scores.ids()[i], fmt_num(scores[i])}) << '\n';
  }
  return os.str();
}

}  // namespace vtrsim
