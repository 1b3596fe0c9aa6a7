#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "vtrsim/assessment.hpp"
#include "vtrsim/corpus_io.hpp"
#include "vtrsim/impact.hpp"
#include "vtrsim/sensitivity.hpp"

namespace vtrsim {

// Run metadata written at the top of every output: a "# " comment line in csv,
// a {"meta": {...}} line in records. Readers skip both.
struct RunHeader {
  std::string command;
  std::vector<std::pair<std::string, std::string>> fields;
};

// Output files as (relative name, contents), in write order.
using FileSet = std::vector<std::pair<std::string, std::string>>;

// Columns: uda_id, university_id, status, rank, score, n_selected, n_required.
// Unranked universities follow the ranked ones with empty rank and score.
std::string write_ranking(const Ranking& ranking, Format format, const RunHeader& header);
Ranking parse_ranking(std::istream& in, Format format, const std::string& source);
Ranking load_ranking(const std::string& path, Format format);

std::string write_representativeness(const RepresentativenessReport& report, Format format,
                                     const RunHeader& header);

std::string write_stats(const RankShiftStats& stats, Format format, const RunHeader& header);

std::string write_decile_matrix(const DecileMatrix& matrix, Format format,
                                const RunHeader& header);

// Two-column plot data: share against one convergence measure.
std::string write_convergence_series(const std::vector<ConvergencePoint>& points,
                                     const std::string& measure);

// Sweep bundle. csv: scenarios, rankings, stats, deciles, convergence (+ pairwise)
// as separate files; records: one sweep.jsonl with a "record" kind per line.
// Both also carry the two plot-ready convergence series.
FileSet write_sweep(const SweepResult& sweep, Format format, const RunHeader& header);

std::string write_baselines(const BaselineTable& table, const RunHeader& header);
std::string write_impact_scores(const ImpactScores& scores, const RunHeader& header);

}  // namespace vtrsim
