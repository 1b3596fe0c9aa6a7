#include "vtrsim/cli.hpp"

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "json.hpp"
#include "vtrsim/csv.hpp"
#include "vtrsim/error.hpp"
#include "vtrsim/impact.hpp"
#include "vtrsim/presets.hpp"

namespace vtrsim::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

struct OutputFile {
  std::string name;
  std::string content;
};

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Format infer_format(const std::string& path, const std::optional<Format>& explicit_format) {
  if (explicit_format) return *explicit_format;
  return fs::path(path).extension() == ".jsonl" ? Format::records : Format::csv;
}

// Keeps ids usable as file name components.
std::string file_safe(const std::string& id) {
  std::string out = id;
  for (char& c : out) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_' || c == '.';
    if (!ok) c = '_';
  }
  return out;
}

ojson rate_json(const SelectionRate& rate) {
  return {{"kind", rate.kind == SelectionRate::Kind::per_researcher ? "per_researcher"
                                                                      : "share_of_output"},
          {"value", rate.value}};
}

ojson assessment_json(const AssessmentConfig& a) {
  ojson uda_rates = ojson::object();
  for (const auto& [uda, rate] : a.uda_rates) uda_rates[uda] = rate_json(rate);
  return {{"rate", rate_json(a.rate)},
          {"uda_rates", uda_rates},
          {"min_fte", a.min_fte},
          {"rounding", rounding_name(a.rounding)},
          {"weights", {a.weights[0], a.weights[1], a.weights[2], a.weights[3]}},
          {"min_required", a.min_required},
          {"baseline_mode", a.baseline_mode == BaselineMode::mean_of_means ? "mean_of_means"
                                                                           : "pooled"}};
}

ojson inputs_json(const RunConfig& c) {
  ojson out = ojson::array();
  for (const auto& path : {c.publications, c.staff, c.category_map}) {
    out.push_back({{"path", path}, {"sha256", sha256_hex(read_bytes(path))}});
  }
  return out;
}

const Preset* preset_of(const RunConfig& c) {
  return c.preset ? &find_preset(*c.preset) : nullptr;
}

AssessmentConfig resolve_assessment(const RunConfig& c, const Preset* preset) {
  AssessmentConfig a;
  if (c.rate) {
    a.rate = *c.rate;
  } else if (preset && preset->rate) {
    a.rate = *preset->rate;
  }
  a.min_fte = c.min_fte ? *c.min_fte : (preset ? preset->min_fte : a.min_fte);
  a.rounding = c.rounding ? *c.rounding : (preset ? preset->rounding : a.rounding);
  if (c.min_required) a.min_required = *c.min_required;
  a.baseline_mode = c.baseline_mode;
  a.validate();
  return a;
}

Corpus load_inputs(const RunConfig& c) {
  if (c.publications.empty() || c.staff.empty() || c.category_map.empty()) {
    throw ConfigError("--publications, --staff and --category-map are required");
  }
  return load_corpus(c.publications, c.staff, c.category_map,
                     infer_format(c.publications, c.input_format));
}

RunHeader make_header(const std::string& command, const std::string& config_hash,
                      std::vector<std::pair<std::string, std::string>> fields) {
  fields.insert(fields.begin(), {"config_hash", config_hash.substr(0, 16)});
  return {command, std::move(fields)};
}

std::string manifest_text(const std::string& command, const ojson& config,
                          const std::string& config_hash, const ojson& extra,
                          const std::vector<OutputFile>& files,
                          const std::vector<std::string>& warnings) {
  ojson m;
  m["tool"] = "vtrsim";
  m["command"] = command;
  m["config"] = config;
  m["config_hash"] = config_hash;
  for (const auto& [k, v] : extra.items()) m[k] = v;
  ojson listed = ojson::array();
  for (const auto& f : files) {
    listed.push_back({{"name", f.name}, {"bytes", f.content.size()}, {"sha256", sha256_hex(f.content)}});
  }
  m["files"] = listed;
  m["warnings"] = warnings;
  return m.dump(2) + "\n";
}

void prepare_out_dir(const RunConfig& c) {
  const fs::path dir(c.out_dir);
  std::error_code ec;
  if (fs::is_directory(dir, ec)) return;
  if (fs::exists(dir, ec)) throw ConfigError("output path is not a directory: " + c.out_dir);
  if (!c.create_out_dir) throw ConfigError("output directory does not exist: " + c.out_dir);
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + c.out_dir + ": " + ec.message());
}

// Stages every file under a hidden temporary name, then renames them all.
std::vector<std::string> commit_files(const RunConfig& c, const std::vector<OutputFile>& files) {
  std::set<std::string> names;
  for (const auto& f : files) {
    if (!names.insert(f.name).second) throw DataError("two outputs map to file " + f.name);
  }
  prepare_out_dir(c);
  const fs::path dir(c.out_dir);
  std::vector<fs::path> staged;
  auto discard = [&] {
    std::error_code ec;
    for (const auto& p : staged) fs::remove(p, ec);
  };
  for (const auto& f : files) {
    const fs::path tmp = dir / ("." + f.name + ".tmp");
    staged.push_back(tmp);
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(f.content.data(), static_cast<std::streamsize>(f.content.size()));
    out.close();
    if (!out) {
      discard();
      throw Error("cannot write " + tmp.string());
    }
  }
  std::vector<std::string> written;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const fs::path target = dir / files[i].name;
    std::error_code ec;
    fs::rename(staged[i], target, ec);
    if (ec) {
      discard();
      throw Error("cannot rename into " + target.string() + ": " + ec.message());
    }
    written.push_back(target.string());
  }
  return written;
}

CommandResult finish(const RunConfig& c, const std::string& command, const ojson& config,
                     const std::string& config_hash, const ojson& extra,
                     std::vector<OutputFile> files, std::vector<std::string> warnings) {
  files.push_back({"manifest.json",
                   manifest_text(command, config, config_hash, extra, files, warnings)});
  CommandResult result;
  result.written = commit_files(c, files);
  result.warnings = std::move(warnings);
  return result;
}

std::string ext(Format f) { return std::string(file_extension(f)); }

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", digest[i]);
  return out;
}

std::vector<double> parse_share_list(const std::string& text) {
  std::vector<double> shares;
  for (const auto& item : csv::split_list(text, ',')) {
    std::string s = item;
    s.erase(0, s.find_first_not_of(' '));
    s.erase(s.find_last_not_of(' ') + 1);
    bool percent = false;
    if (!s.empty() && s.back() == '%') {
      percent = true;
      s.pop_back();
    }
    double v = 0;
    try {
      v = csv::parse_double(s, "--shares", 0, "share");
    } catch (const ParseError&) {
      throw ConfigError("invalid share '" + item + "'");
    }
    if (percent) v /= 100.0;
    if (!(v > 0.0 && v <= 1.0)) throw ConfigError("share out of (0, 1]: '" + item + "'");
    shares.push_back(v);
  }
  if (shares.empty()) throw ConfigError("empty share list");
  return shares;
}

std::vector<SyntheticUda> parse_uda_list(const std::string& text) {
  std::vector<SyntheticUda> out;
  for (const auto& item : csv::split_list(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("expected ID:fertility, got '" + item + "'");
    SyntheticUda uda;
    uda.id = item.substr(0, colon);
    try {
      uda.fertility = csv::parse_double(item.substr(colon + 1), "--udas", 0, "fertility");
    } catch (const ParseError&) {
      throw ConfigError("invalid fertility in '" + item + "'");
    }
    out.push_back(uda);
  }
  if (out.empty()) throw ConfigError("empty UDA list");
  return out;
}

CommandResult cmd_generate(const RunConfig& c) {
  SyntheticConfig sc = c.synthetic;
  if (sc.udas.empty()) sc.udas = italian_hard_science_udas();
  sc.validate();

  ojson udas = ojson::array();
  for (const auto& u : sc.udas) udas.push_back({{"id", u.id}, {"fertility", u.fertility}});
  const ojson config = {{"seed", sc.seed},
                        {"n_universities", sc.n_universities},
                        {"udas", udas},
                        {"staff_min", sc.staff_min},
                        {"staff_max", sc.staff_max},
                        {"citation_shape", sc.citation_shape},
                        {"years", sc.years},
                        {"categories_per_uda", sc.categories_per_uda},
                        {"quality_dispersion", sc.quality_dispersion},
                        {"presence_rate", sc.presence_rate},
                        {"coauthor_rate", sc.coauthor_rate},
                        {"multi_category_rate", sc.multi_category_rate},
                        {"format", format_name(c.format)}};
  const std::string hash = sha256_hex(config.dump());

  const Corpus corpus = generate_synthetic(sc);
  const CorpusText text = serialize_corpus(corpus, c.format);
  const std::string e = ext(c.format);
  std::vector<OutputFile> files = {{"publications" + e, text.publications},
                                   {"staff" + e, text.staff},
                                   {"category_map" + e, text.category_map}};
  const ojson extra = {{"seed", sc.seed},
                       {"publications", corpus.publications().size()},
                       {"staff_entries", corpus.staff().size()}};
  return finish(c, "generate", config, hash, extra, std::move(files), {});
}

CommandResult cmd_assess(const RunConfig& c) {
  const Preset* preset = preset_of(c);
  const AssessmentConfig assessment = resolve_assessment(c, preset);
  const Corpus corpus = load_inputs(c);

  const ojson config = {{"preset", c.preset ? ojson(*c.preset) : ojson(nullptr)},
                        {"assessment", assessment_json(assessment)},
                        {"format", format_name(c.format)},
                        {"dump_impact", c.dump_impact}};
  const std::string hash = sha256_hex(config.dump());

  const ImpactScores scores = score_corpus(corpus, assessment.baseline_mode);
  const auto detailed = run_assessment_detailed(corpus, scores, assessment);
  const RepresentativenessReport report = representativeness_report(corpus, assessment);

  const RunHeader header = make_header(
      "assess", hash,
      {{"rate", to_string(assessment.rate)},
       {"rounding", std::string(rounding_name(assessment.rounding))},
       {"min_fte", csv::format_double(assessment.min_fte)}});

  std::vector<std::string> warnings;
  if (!scores.degenerate().empty()) {
    warnings.push_back(fmt::format("{} publications had a zero baseline and scored 0",
                                   scores.degenerate().size()));
  }
  std::vector<OutputFile> files;
  const std::string e = ext(c.format);
  for (const auto& [uda, result] : detailed) {
    if (result.pool_size == 0) warnings.push_back("UDA " + uda + ": nothing selected, no ranking");
    files.push_back({"ranking_" + file_safe(uda) + e, write_ranking(result.ranking, c.format, header)});
  }
  files.push_back({"representativeness" + e, write_representativeness(report, c.format, header)});
  if (c.dump_impact) {
    files.push_back({"baselines.csv", write_baselines(compute_baselines(corpus), header)});
    files.push_back({"impact_scores.csv", write_impact_scores(scores, header)});
  }
  const ojson extra = {{"inputs", inputs_json(c)},
                       {"degenerate_publications", scores.degenerate()}};
  return finish(c, "assess", config, hash, extra, std::move(files), std::move(warnings));
}

CommandResult cmd_sweep(const RunConfig& c) {
  const Preset* preset = preset_of(c);
  SweepOptions options;
  options.assessment = resolve_assessment(c, preset);
  options.correlation = c.correlation;
  options.cost_per_product = c.cost_per_product;
  options.pairwise = c.pairwise;
  if (c.reference_rate) {
    c.reference_rate->validate();
    options.reference = {"reference", *c.reference_rate};
  }

  std::vector<ScenarioSpec> specs;
  if (!c.shares.empty()) {
    specs = shares_to_specs(c.shares);
  } else if (preset && preset->sweep) {
    specs = *preset->sweep;
  } else {
    throw ConfigError("sweep needs --shares or a sweep preset");
  }
  std::string uda;
  if (c.uda) {
    uda = *c.uda;
  } else if (preset && preset->uda) {
    uda = *preset->uda;
  } else {
    throw ConfigError("sweep needs --uda");
  }

  ojson spec_json = ojson::array();
  for (const auto& s : specs) spec_json.push_back({{"label", s.label}, {"rate", rate_json(s.rate)}});
  const ojson config = {{"preset", c.preset ? ojson(*c.preset) : ojson(nullptr)},
                        {"uda", uda},
                        {"scenarios", spec_json},
                        {"reference", {{"label", options.reference.label},
                                       {"rate", rate_json(options.reference.rate)}}},
                        {"assessment", assessment_json(options.assessment)},
                        {"correlation", correlation_name(options.correlation)},
                        {"cost_per_product", options.cost_per_product},
                        {"pairwise", options.pairwise},
                        {"format", format_name(c.format)}};
  const std::string hash = sha256_hex(config.dump());

  const Corpus corpus = load_inputs(c);
  const SweepResult sweep = run_sweep(corpus, uda, specs, options);
  const RunHeader header = make_header(
      "sweep", hash,
      {{"uda", uda},
       {"correlation", std::string(correlation_name(options.correlation))},
       {"rounding", std::string(rounding_name(options.assessment.rounding))}});

  std::vector<OutputFile> files;
  for (auto& [name, content] : write_sweep(sweep, c.format, header)) {
    files.push_back({std::move(name), std::move(content)});
  }
  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < sweep.scenarios.size(); ++i) {
    if (sweep.vs_reference[i].n_dropped > 0) {
      warnings.push_back(fmt::format("scenario {}: {} universities not ranked in both",
                                     sweep.scenarios[i].label, sweep.vs_reference[i].n_dropped));
    }
  }
  const ojson extra = {{"inputs", inputs_json(c)}};
  return finish(c, "sweep", config, hash, extra, std::move(files), std::move(warnings));
}

CommandResult cmd_compare(const RunConfig& c) {
  if (c.ranking_a.empty() || c.ranking_b.empty()) {
    throw ConfigError("compare needs two ranking files");
  }
  const ojson config = {{"correlation", correlation_name(c.correlation)},
                        {"format", format_name(c.format)}};
  const std::string hash = sha256_hex(config.dump());

  const Ranking a = load_ranking(c.ranking_a, infer_format(c.ranking_a, c.input_format));
  const Ranking b = load_ranking(c.ranking_b, infer_format(c.ranking_b, c.input_format));
  if (a.uda_id != b.uda_id) {
    throw DataError("rankings cover different UDAs: " + a.uda_id + " and " + b.uda_id);
  }
  const RankShiftStats stats = compare_rankings(a, b, c.correlation);

  std::vector<std::string> warnings;
  if (stats.n_dropped > 0) {
    warnings.push_back(fmt::format("{} universities ranked in only one file were ignored",
                                   stats.n_dropped));
  }
  const RunHeader header = make_header(
      "compare", hash, {{"uda", a.uda_id}, {"a", c.ranking_a}, {"b", c.ranking_b}});
  std::vector<OutputFile> files = {
      {"compare_stats" + ext(c.format), write_stats(stats, c.format, header)}};
  ojson inputs = ojson::array();
  for (const auto& path : {c.ranking_a, c.ranking_b}) {
    inputs.push_back({{"path", path}, {"sha256", sha256_hex(read_bytes(path))}});
  }
  const ojson extra = {{"inputs", inputs}};
  return finish(c, "compare", config, hash, extra, std::move(files), std::move(warnings));
}

int report_exception() {
  try {
    throw;
  } catch (const ConfigError& e) {
    std::cerr << "vtrsim: usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "vtrsim: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "vtrsim: internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (...) {
    std::cerr << "vtrsim: internal error\n";
    return kExitInternal;
  }
}

}  // namespace vtrsim::cli
