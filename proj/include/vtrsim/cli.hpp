#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vtrsim/assessment.hpp"
#include "vtrsim/corpus_io.hpp"
#include "vtrsim/report_io.hpp"
#include "vtrsim/sensitivity.hpp"
#include "vtrsim/synthetic.hpp"

namespace vtrsim::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInternal = 3;

// Everything a subcommand needs. Unset optionals fall back to the preset, then
// to the library defaults; explicit values always win over the preset.
struct RunConfig {
  // Corpus inputs. The input format is inferred from the publications file
  // extension (".jsonl" means records) unless given.
  std::string publications;
  std::string staff;
  std::string category_map;
  std::optional<Format> input_format;

  std::string out_dir = ".";
  bool create_out_dir = true;
  Format format = Format::csv;

  std::optional<std::string> preset;
  std::optional<SelectionRate> rate;
  std::optional<Rounding> rounding;
  std::optional<double> min_fte;
  std::optional<std::int64_t> min_required;
  BaselineMode baseline_mode = BaselineMode::mean_of_means;
  bool dump_impact = false;

  // sweep
  std::optional<std::string> uda;
  std::vector<double> shares;
  std::optional<SelectionRate> reference_rate;
  CorrelationKind correlation = CorrelationKind::spearman;
  double cost_per_product = 1.0;
  bool pairwise = false;

  // generate
  SyntheticConfig synthetic;

  // compare
  std::string ranking_a;
  std::string ranking_b;
};

struct CommandResult {
  std::vector<std::string> written;  // paths, in write order
  std::vector<std::string> warnings;
};

// Each command computes all outputs before touching the output directory,
// then stages every file under a temporary name and renames them into place,
// so a failing run leaves no partial outputs. Errors are thrown as
// vtrsim::Error subclasses.
CommandResult cmd_generate(const RunConfig& config);
CommandResult cmd_assess(const RunConfig& config);
CommandResult cmd_sweep(const RunConfig& config);
CommandResult cmd_compare(const RunConfig& config);

// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& data);

// Parses a comma-separated share list; each item is a fraction ("0.1") or a
// percentage ("10%"). Throws ConfigError.
std::vector<double> parse_share_list(const std::string& text);

// Parses "ID:fertility,ID:fertility". Throws ConfigError.
std::vector<SyntheticUda> parse_uda_list(const std::string& text);

// Maps the current exception to an exit code and prints it to stderr. Call
// from a catch block only.
int report_exception();

}  // namespace vtrsim::cli
