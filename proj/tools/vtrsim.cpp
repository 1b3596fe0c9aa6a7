// vtrsim: command-line front end for the assessment simulator.
//
//   vtrsim generate --seed 7 --out data/
//   vtrsim assess   --publications data/publications.csv --staff data/staff.csv
//                   --category-map data/category_map.csv --preset vtr --out run/
//   vtrsim sweep    ... --uda PHYS --shares 10%,20%,40% --out sweep/
//   vtrsim compare  run_a/ranking_PHYS.csv run_b/ranking_PHYS.csv --out cmp/

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "vtrsim/cli.hpp"
#include "vtrsim/error.hpp"
#include "vtrsim/presets.hpp"

namespace {

using vtrsim::cli::RunConfig;

void add_output_options(CLI::App& sub, RunConfig& c, std::string& format, bool& no_create) {
  sub.add_option("--out,-o", c.out_dir, "Output directory")->capture_default_str();
  sub.add_option("--format", format, "Output format: csv or records")->capture_default_str();
  sub.add_flag("--no-create", no_create, "Fail instead of creating a missing output directory");
}

void add_corpus_options(CLI::App& sub, RunConfig& c, std::string& input_format) {
  sub.add_option("--publications", c.publications, "Publications file")->required();
  sub.add_option("--staff", c.staff, "Staff file")->required();
  sub.add_option("--category-map", c.category_map, "Category to UDA map file")->required();
  sub.add_option("--input-format", input_format,
                 "csv or records (default: inferred from the publications file extension)");
}

struct RuleFlags {
  std::string preset;
  std::string rate;
  std::string rounding;
  double min_fte = -1;
  long long min_required = -1;
  std::string baseline = "mean_of_means";
};

void add_rule_options(CLI::App& sub, RuleFlags& f) {
  sub.add_option("--preset", f.preset, "Named configuration (see `vtrsim presets`)");
  sub.add_option("--rate", f.rate,
                 "Selection rate: 0.25, 1:4, per_researcher:0.25, share:0.089 or share:8.9%");
  sub.add_option("--rounding", f.rounding, "half_up, half_even, floor or ceil");
  sub.add_option("--min-fte", f.min_fte, "Eligibility threshold on FTE staff (inclusive)");
  sub.add_option("--min-required", f.min_required,
                 "Least number of products an eligible university submits");
  sub.add_option("--baseline", f.baseline, "mean_of_means or pooled")->capture_default_str();
}

void apply_rule_flags(const RuleFlags& f, RunConfig& c) {
  if (!f.preset.empty()) c.preset = f.preset;
  if (!f.rate.empty()) c.rate = vtrsim::parse_selection_rate(f.rate);
  if (!f.rounding.empty()) c.rounding = vtrsim::parse_rounding(f.rounding);
  if (f.min_fte >= 0) c.min_fte = f.min_fte;
  if (f.min_required >= 0) c.min_required = f.min_required;
  c.baseline_mode = vtrsim::parse_baseline_mode(f.baseline);
}

void print_result(const vtrsim::cli::CommandResult& r) {
  for (const auto& w : r.warnings) std::cerr << "vtrsim: warning: " << w << '\n';
  for (const auto& p : r.written) std::cout << p << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate research assessment exercises on publication corpora"};
  app.require_subcommand(1);

  RunConfig c;
  std::string format = "csv";
  std::string input_format;
  bool no_create = false;
  RuleFlags rules;

  auto* generate = app.add_subcommand("generate", "Write a seeded synthetic corpus");
  add_output_options(*generate, c, format, no_create);
  std::string uda_list;
  std::string year_list;
  generate->add_option("--seed", c.synthetic.seed, "Random seed")->capture_default_str();
  generate->add_option("--universities", c.synthetic.n_universities, "Number of universities")
      ->capture_default_str();
  generate->add_option("--udas", uda_list,
                       "ID:fertility list, e.g. PHYS:5.15,BIO:1.68 (default: eight hard sciences)");
  generate->add_option("--staff-min", c.synthetic.staff_min)->capture_default_str();
  generate->add_option("--staff-max", c.synthetic.staff_max)->capture_default_str();
  generate->add_option("--citation-shape", c.synthetic.citation_shape,
                       "Tail control; smaller means more skewed")
      ->capture_default_str();
  generate->add_option("--years", year_list, "Comma-separated years (default 2001,2002,2003)");
  generate->add_option("--categories-per-uda", c.synthetic.categories_per_uda)
      ->capture_default_str();
  generate->add_option("--quality-dispersion", c.synthetic.quality_dispersion)
      ->capture_default_str();
  generate->add_option("--presence-rate", c.synthetic.presence_rate)->capture_default_str();
  generate->add_option("--coauthor-rate", c.synthetic.coauthor_rate)->capture_default_str();
  generate->add_option("--multi-category-rate", c.synthetic.multi_category_rate)
      ->capture_default_str();

  auto* assess = app.add_subcommand("assess", "Select, rate and rank universities per UDA");
  add_corpus_options(*assess, c, input_format);
  add_output_options(*assess, c, format, no_create);
  add_rule_options(*assess, rules);
  assess->add_flag("--dump-impact", c.dump_impact, "Also write baselines and per-article scores");

  auto* sweep = app.add_subcommand("sweep", "Rank one UDA under several selection shares");
  add_corpus_options(*sweep, c, input_format);
  add_output_options(*sweep, c, format, no_create);
  add_rule_options(*sweep, rules);
  std::string shares;
  std::string reference;
  std::string correlation = "spearman";
  std::string uda;
  sweep->add_option("--uda", uda, "UDA to sweep");
  sweep->add_option("--shares", shares, "Comma-separated shares, e.g. 0.1,20%,0.4");
  sweep->add_option("--reference-rate", reference, "Reference rule (default 0.25 per researcher)");
  sweep->add_option("--correlation", correlation, "spearman or kendall")->capture_default_str();
  sweep->add_option("--cost-per-product", c.cost_per_product)->capture_default_str();
  sweep->add_flag("--pairwise", c.pairwise, "Also compare every pair of scenarios");

  auto* compare = app.add_subcommand("compare", "Rank shift statistics of two ranking files");
  compare->add_option("first", c.ranking_a, "Ranking file")->required();
  compare->add_option("second", c.ranking_b, "Ranking file")->required();
  compare->add_option("--input-format", input_format, "csv or records (default: by extension)");
  compare->add_option("--correlation", correlation, "spearman or kendall")->capture_default_str();
  add_output_options(*compare, c, format, no_create);

  auto* list = app.add_subcommand("presets", "List the named configurations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? vtrsim::cli::kExitOk : vtrsim::cli::kExitUsage;
  }

  try {
    if (list->parsed()) {
      for (const auto& p : vtrsim::presets()) std::cout << p.name << "\t" << p.description << '\n';
      return vtrsim::cli::kExitOk;
    }
    c.format = vtrsim::parse_format(format);
    c.create_out_dir = !no_create;
    if (!input_format.empty()) c.input_format = vtrsim::parse_format(input_format);
    c.correlation = vtrsim::parse_correlation_kind(correlation);

    if (generate->parsed()) {
      if (!uda_list.empty()) c.synthetic.udas = vtrsim::cli::parse_uda_list(uda_list);
      if (!year_list.empty()) {
        c.synthetic.years.clear();
        for (const auto& y : CLI::detail::split(year_list, ',')) {
          try {
            c.synthetic.years.push_back(std::stoi(y));
          } catch (const std::exception&) {
            throw vtrsim::ConfigError("invalid year '" + y + "'");
          }
        }
      }
      print_result(vtrsim::cli::cmd_generate(c));
    } else if (assess->parsed()) {
      apply_rule_flags(rules, c);
      print_result(vtrsim::cli::cmd_assess(c));
    } else if (sweep->parsed()) {
      apply_rule_flags(rules, c);
      if (!uda.empty()) c.uda = uda;
      if (!shares.empty()) c.shares = vtrsim::cli::parse_share_list(shares);
      if (!reference.empty()) c.reference_rate = vtrsim::parse_selection_rate(reference);
      print_result(vtrsim::cli::cmd_sweep(c));
    } else if (compare->parsed()) {
      print_result(vtrsim::cli::cmd_compare(c));
    }
  } catch (...) {
    return vtrsim::cli::report_exception();
  }
  return vtrsim::cli::kExitOk;
}
