#include "pang/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pang/classify.hpp"
#include "pang/dataset_io.hpp"
#include "pang/error.hpp"
#include "pang/features.hpp"
#include "pang/miner.hpp"
#include "pang/parallel.hpp"
#include "pang/pattern_select.hpp"
#include "pang/procurement.hpp"

namespace pang::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

/// "all" or a positive integer.
std::optional<std::size_t> parse_budget(const std::string& text) {
  if (text == "all") return std::nullopt;
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || value < 1) {
    throw ArgumentError("pattern budget must be a positive integer or 'all', got '" + text + "'");
  }
  return value;
}

std::string budget_text(const std::optional<std::size_t>& s) { return s ? std::to_string(*s) : "all"; }

const CLI::Validator kBudget(
    [](std::string& v) -> std::string {
      try {
        parse_budget(v);
      } catch (const ArgumentError& e) {
        return e.what();
      }
      return {};
    },
    "INT|all", "budget");

const CLI::Validator kMinSupport(
    [](std::string& v) -> std::string {
      try {
        MinSupport::parse(v);
      } catch (const Error& e) {
        return e.what();
      }
      return {};
    },
    "N|FRACTION|PCT%", "minsup");

const auto kFamilies = CLI::IsMember({"gen", "ind", "clo", "general", "induced", "closed"});
const auto kModes = CLI::IsMember({"bin", "binary", "occ", "int", "integer"});
const auto kCountModes = CLI::IsMember({"induced", "general"});

struct PipelineFlags {
  std::string input;
  std::string family = "gen";
  std::string mode = "bin";
  std::string s = "all";
  std::string minsup = "10%";
  std::size_t max_vertices = 10;
  std::size_t max_edges = 10;
  double c = 1.0;
  std::size_t k = 10;
  std::uint64_t seed = 42;
  bool mine_once = false;
  std::string ind_count_mode = "induced";
  bool normalize_classes = false;
  bool log_scale = false;
  long positive_label = 1;
  unsigned jobs = 0;

  PipelineConfig config() const {
    PipelineConfig cfg;
    cfg.family = parse_family(family);
    cfg.mode = parse_representation(mode);
    cfg.s = parse_budget(s);
    cfg.minsup = MinSupport::parse(minsup);
    cfg.max_vertices = max_vertices;
    cfg.max_edges = max_edges;
    cfg.c = c;
    cfg.k = k;
    cfg.seed = seed;
    cfg.normalize_classes = normalize_classes;
    cfg.induced_count_mode = ind_count_mode == "general" ? MatchMode::General : MatchMode::Induced;
    cfg.log_scale = log_scale;
    cfg.mine_once = mine_once;
    cfg.jobs = resolve_jobs(jobs);
    return cfg;
  }
};

void add_input(CLI::App* cmd, std::string& input) {
  cmd->add_option("-i,--input", input, "Transaction file or benchmark bundle directory")
      ->required()
      ->check(CLI::ExistingPath);
}

void add_positive_label(CLI::App* cmd, long& label) {
  cmd->add_option("--positive-label", label, "Bundle class value treated as anomalous")->capture_default_str();
}

void add_jobs(CLI::App* cmd, unsigned& jobs) {
  cmd->add_option("-j,--jobs", jobs, "Worker threads (0 = available parallelism)")->capture_default_str();
}

void add_mining(CLI::App* cmd, std::string& minsup, std::size_t& max_vertices, std::size_t& max_edges) {
  cmd->add_option("--minsup", minsup, "Minimum graph frequency: count, fraction or percentage")
      ->check(kMinSupport)
      ->capture_default_str();
  cmd->add_option("--max-vertices", max_vertices, "Largest pattern size in vertices")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-edges", max_edges, "Largest pattern size in edges")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_pipeline(CLI::App* cmd, PipelineFlags& f, bool with_variant) {
  add_input(cmd, f.input);
  if (with_variant) {
    cmd->add_option("--family", f.family, "Pattern family: gen, ind or clo")->check(kFamilies)->capture_default_str();
    cmd->add_option("--mode,--repr", f.mode, "Representation: bin or occ")->check(kModes)->capture_default_str();
    cmd->add_option("--s", f.s, "Number of patterns kept per fold, or 'all'")->check(kBudget)->capture_default_str();
  }
  add_mining(cmd, f.minsup, f.max_vertices, f.max_edges);
  cmd->add_option("--C", f.c, "SVM regularization constant")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--k", f.k, "Number of cross-validation folds")->check(CLI::Range(2, 1000000))->capture_default_str();
  cmd->add_option("--seed", f.seed, "Seed for fold assignment and training")->capture_default_str();
  cmd->add_flag("--mine-once", f.mine_once, "Mine and rank patterns once on the whole collection");
  cmd->add_option("--ind-count-mode", f.ind_count_mode, "Occurrence counting for induced columns: induced or general")
      ->check(kCountModes)
      ->capture_default_str();
  cmd->add_flag("--normalize-classes", f.normalize_classes, "Divide class frequencies by class size when scoring");
  cmd->add_flag("--log-scale", f.log_scale, "Apply log(1+x) to integer features");
  add_positive_label(cmd, f.positive_label);
  add_jobs(cmd, f.jobs);
}

// ---------------------------------------------------------------- mine

struct MineFlags {
  std::string input;
  std::string out;
  std::string minsup = "10%";
  std::size_t max_vertices = 10;
  std::size_t max_edges = 10;
  long positive_label = 1;
  unsigned jobs = 0;
};

int cmd_mine(const MineFlags& f, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const auto collection = read_collection(f.input, BenchmarkOptions{f.positive_label});
  const unsigned jobs = resolve_jobs(f.jobs);

  MinerOptions options;
  options.minsup = MinSupport::parse(f.minsup);
  options.max_vertices = f.max_vertices;
  options.max_edges = f.max_edges;
  options.jobs = jobs;
  const auto mined = mine(collection, options);
  const double mine_time = seconds_since(start);

  std::vector<Pattern> patterns;
  patterns.reserve(mined.size());
  for (const auto& m : mined) patterns.push_back(m.pattern);
  const auto general = compute_stats(patterns, collection, MatchMode::General, true, jobs);
  const auto induced = compute_stats(patterns, collection, MatchMode::Induced, true, jobs);
  const auto closed = filter_closed(patterns, general, jobs);

  PatternSet set;
  set.class_a = collection.count(GraphLabel::Anomalous);
  set.class_n = collection.count(GraphLabel::Normal);
  const ScoreOptions score{FrequencyKind::GF, false, set.class_a, set.class_n};
  std::vector<char> is_closed(patterns.size(), 0);
  for (std::size_t i : closed) is_closed[i] = 1;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    PatternRecord r;
    r.code = patterns[i].code();
    r.stats = general[i];
    r.induced_stats = induced[i];
    r.closed = is_closed[i] != 0;
    r.induced = induced[i].gf() > 0;
    r.score = discrimination_score(general[i], score);
    set.records.push_back(std::move(r));
  }
  write_patterns(fs::path(f.out), set);

  out << set.records.size() << " patterns\n";
  err << std::fixed << std::setprecision(3) << "graphs " << collection.size() << ", minsup "
      << options.minsup.resolve(collection.size()) << ", mining " << mine_time << " s, total " << seconds_since(start)
      << " s\n";
  return kExitOk;
}

// ---------------------------------------------------------------- select

struct SelectFlags {
  std::string patterns;
  std::string out;
  std::string family = "gen";
  std::string freq = "gf";
  std::string s = "all";
  bool normalize_classes = false;
};

bool in_family(const PatternRecord& r, PatternFamily family) {
  switch (family) {
    case PatternFamily::General:
      return true;
    case PatternFamily::Induced:
      return r.induced;
    case PatternFamily::Closed:
      return r.closed;
  }
  return false;
}

int cmd_select(const SelectFlags& f, std::ostream& out, std::ostream&) {
  const auto input = read_patterns(f.patterns);
  const auto family = parse_family(f.family);
  const auto budget = parse_budget(f.s);
  const ScoreOptions options{f.freq == "sf" ? FrequencyKind::SF : FrequencyKind::GF, f.normalize_classes,
                             input.class_a, input.class_n};

  std::vector<const PatternRecord*> members;
  std::vector<Pattern> patterns;
  std::vector<PatternStats> stats;
  std::vector<double> scores;
  for (const auto& r : input.records) {
    if (!in_family(r, family)) continue;
    members.push_back(&r);
    patterns.push_back(Pattern::from_minimal_code(r.code));
    stats.push_back(r.stats);
    const auto& counted = family == PatternFamily::Induced ? r.induced_stats : r.stats;
    scores.push_back(discrimination_score(counted, options));
  }

  PatternSet result;
  result.class_a = input.class_a;
  result.class_n = input.class_n;
  if (!patterns.empty()) {
    for (std::size_t i : select_top(patterns, scores, stats, budget.value_or(patterns.size()))) {
      PatternRecord r = *members[i];
      r.score = scores[i];
      result.records.push_back(std::move(r));
    }
  }
  write_patterns(fs::path(f.out), result);
  out << result.records.size() << " patterns selected (" << to_string(family) << ", " << f.freq << ", s "
      << budget_text(budget) << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------- vectorize

struct VectorizeFlags {
  std::string input;
  std::string patterns;
  std::string out;
  std::string family = "gen";
  std::string mode = "bin";
  std::string ind_count_mode = "induced";
  long positive_label = 1;
  unsigned jobs = 0;
};

int cmd_vectorize(const VectorizeFlags& f, std::ostream& out, std::ostream&) {
  const auto collection = read_collection(f.input, BenchmarkOptions{f.positive_label});
  const auto set = read_patterns(f.patterns);
  std::vector<Pattern> patterns;
  patterns.reserve(set.records.size());
  for (const auto& r : set.records) patterns.push_back(Pattern::from_minimal_code(r.code));
  const auto matrix = build_matrix(collection, patterns, parse_representation(f.mode), parse_family(f.family),
                                   f.ind_count_mode == "general" ? MatchMode::General : MatchMode::Induced,
                                   resolve_jobs(f.jobs));
  write_matrix(fs::path(f.out), matrix, collection.labels());
  out << matrix.rows() << " x " << matrix.cols() << " matrix\n";
  return kExitOk;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateFlags {
  PipelineFlags pipeline;
  std::string report;
  std::string summary;
};

int cmd_evaluate(const EvaluateFlags& f, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const auto collection = read_collection(f.pipeline.input, BenchmarkOptions{f.pipeline.positive_label});
  const auto config = f.pipeline.config();
  const auto report = cross_validate(collection, config);
  const std::string text = format_report(report, config);
  out << text;
  if (!f.report.empty()) write_text(f.report, text);
  if (!f.summary.empty()) write_text(f.summary, format_summary_tsv(report));
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  err << std::fixed << std::setprecision(3) << "evaluation " << seconds_since(start) << " s\n";
  return kExitOk;
}

// ---------------------------------------------------------------- repro

struct ReproFlags {
  PipelineFlags pipeline;
  std::string out_dir;
  std::vector<std::string> budgets;
};

std::string variant_name(PatternFamily family, Representation mode) {
  std::string name = "PANG_";
  name += family == PatternFamily::General ? "Gen" : family == PatternFamily::Induced ? "Ind" : "Clo";
  name += mode == Representation::Binary ? "Bin" : "Occ";
  return name;
}

std::string fixed4(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << v;
  return s.str();
}

int cmd_repro(const ReproFlags& f, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const auto collection = read_collection(f.pipeline.input, BenchmarkOptions{f.pipeline.positive_label});
  const auto base = f.pipeline.config();
  const fs::path dir(f.out_dir);
  fs::create_directories(dir);

  std::ostringstream variants;
  variants << "variant\tf_a_mean\tf_a_std\tf_n_mean\tf_n_std\n";
  for (auto family : {PatternFamily::General, PatternFamily::Induced, PatternFamily::Closed}) {
    for (auto mode : {Representation::Binary, Representation::Integer}) {
      auto config = base;
      config.family = family;
      config.mode = mode;
      const auto report = cross_validate(collection, config);
      const auto name = variant_name(family, mode);
      write_text(dir / (name + ".txt"), format_report(report, config));
      variants << name << '\t' << fixed4(report.mean_f_anomalous) << '\t' << fixed4(report.std_f_anomalous) << '\t'
               << fixed4(report.mean_f_normal) << '\t' << fixed4(report.std_f_normal) << '\n';
    }
  }
  write_text(dir / "variants.tsv", variants.str());
  out << variants.str();

  if (!f.budgets.empty()) {
    std::ostringstream budget;
    budget << "s\tf_a_mean\tf_a_std\n";
    for (const auto& text : f.budgets) {
      auto config = base;
      config.s = parse_budget(text);
      const auto report = cross_validate(collection, config);
      budget << budget_text(config.s) << '\t' << fixed4(report.mean_f_anomalous) << '\t'
             << fixed4(report.std_f_anomalous) << '\n';
    }
    write_text(dir / "budget.tsv", budget.str());
    out << budget.str();
  }
  err << std::fixed << std::setprecision(3) << "repro " << seconds_since(start) << " s\n";
  return kExitOk;
}

// ---------------------------------------------------------------- extract

struct ExtractFlags {
  std::string contracts;
  std::string mapping;
  std::string out;
  std::string provenance;
  std::string sector = "works";
  std::string category = "municipality";
  std::optional<int> year;
  std::optional<std::string> region;
  std::size_t threshold = 2;
  std::size_t min_size = 3;
  std::size_t max_size = 200;
};

int cmd_extract(const ExtractFlags& f, std::ostream& out, std::ostream& err) {
  const auto mapping = f.mapping.empty() ? procurement::ColumnMapping::defaults()
                                         : procurement::ColumnMapping::read(f.mapping);
  const auto records = procurement::read_contracts(f.contracts, mapping);

  procurement::ExtractionConfig config;
  config.sector = f.sector;
  config.category = f.category;
  config.year = f.year;
  config.region = f.region;
  config.anomalous_edge_threshold = f.threshold;
  config.min_subset_size = f.min_size;
  config.max_subset_size = f.max_size;
  if (config.min_subset_size > config.max_subset_size) {
    throw ArgumentError("--min-size exceeds --max-size");
  }
  const auto result = procurement::extract_collection(records, config);

  write_transactions(fs::path(f.out), result.collection);
  const fs::path provenance = f.provenance.empty() ? fs::path(f.out + ".provenance.tsv") : fs::path(f.provenance);
  std::ostringstream side;
  procurement::write_provenance(side, result);
  write_text(provenance, side.str());

  if (result.collection.size() == 0) {
    err << "warning: no contract subset passed the filters; wrote an empty collection\n";
  }
  if (result.tally.missing > 0) {
    err << "warning: " << result.tally.missing << " contracts have no offer count and were not flagged\n";
  }
  out << result.collection.size() << " graphs (" << result.collection.count(GraphLabel::Anomalous) << " A, "
      << result.collection.count(GraphLabel::Normal) << " N) from " << result.filtered_contracts
      << " filtered contracts\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discriminative subgraph patterns for graph classification", "pang"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "pang 1.0.0");

  MineFlags mine_flags;
  auto* mine_cmd = app.add_subcommand("mine", "Mine frequent connected patterns and write a pattern file");
  add_input(mine_cmd, mine_flags.input);
  mine_cmd->add_option("-o,--out", mine_flags.out, "Pattern file to write")->required();
  add_mining(mine_cmd, mine_flags.minsup, mine_flags.max_vertices, mine_flags.max_edges);
  add_positive_label(mine_cmd, mine_flags.positive_label);
  add_jobs(mine_cmd, mine_flags.jobs);

  SelectFlags select_flags;
  auto* select_cmd = app.add_subcommand("select", "Rank patterns of one family and keep the top s");
  select_cmd->add_option("-p,--patterns", select_flags.patterns, "Pattern file written by 'mine'")
      ->required()
      ->check(CLI::ExistingFile);
  select_cmd->add_option("-o,--out", select_flags.out, "Pattern file to write")->required();
  select_cmd->add_option("--family", select_flags.family, "Pattern family: gen, ind or clo")
      ->check(kFamilies)
      ->capture_default_str();
  select_cmd->add_option("--freq", select_flags.freq, "Frequency used by the score: gf or sf")
      ->check(CLI::IsMember({"gf", "sf"}))
      ->capture_default_str();
  select_cmd->add_option("--s", select_flags.s, "Number of patterns to keep, or 'all'")
      ->check(kBudget)
      ->capture_default_str();
  select_cmd->add_flag("--normalize-classes", select_flags.normalize_classes,
                       "Divide class frequencies by class size when scoring");

  VectorizeFlags vec_flags;
  auto* vec_cmd = app.add_subcommand("vectorize", "Write the graph x pattern feature matrix as CSV");
  vec_cmd->alias("export-matrix");
  add_input(vec_cmd, vec_flags.input);
  vec_cmd->add_option("-p,--patterns", vec_flags.patterns, "Pattern file; columns follow its row order")
      ->required()
      ->check(CLI::ExistingFile);
  vec_cmd->add_option("-o,--out", vec_flags.out, "CSV file to write")->required();
  vec_cmd->add_option("--family", vec_flags.family, "Pattern family, selects occurrence semantics")
      ->check(kFamilies)
      ->capture_default_str();
  vec_cmd->add_option("--mode,--repr", vec_flags.mode, "Representation: bin or occ")
      ->check(kModes)
      ->capture_default_str();
  vec_cmd->add_option("--ind-count-mode", vec_flags.ind_count_mode, "Occurrence counting for induced columns")
      ->check(kCountModes)
      ->capture_default_str();
  add_positive_label(vec_cmd, vec_flags.positive_label);
  add_jobs(vec_cmd, vec_flags.jobs);

  EvaluateFlags eval_flags;
  auto* eval_cmd = app.add_subcommand("evaluate", "Cross-validate one representation with a linear SVM");
  add_pipeline(eval_cmd, eval_flags.pipeline, true);
  eval_cmd->add_option("--report", eval_flags.report, "Also write the text report here");
  eval_cmd->add_option("--summary", eval_flags.summary, "Write per-fold metrics as TSV here");

  ReproFlags repro_flags;
  auto* repro_cmd = app.add_subcommand("repro", "Evaluate all six representations and optional pattern budgets");
  add_pipeline(repro_cmd, repro_flags.pipeline, true);
  repro_cmd->add_option("--out-dir", repro_flags.out_dir, "Directory for reports and tables")->required();
  repro_cmd->add_option("--budgets", repro_flags.budgets, "Budgets for a table over s using --family and --mode, e.g. 10 50 100 all")
      ->check(kBudget);

  ExtractFlags ext_flags;
  auto* ext_cmd = app.add_subcommand("extract", "Build buyer-winner graphs from a contract table");
  ext_cmd->add_option("-c,--contracts", ext_flags.contracts, "Delimiter-separated contract file with header")
      ->required()
      ->check(CLI::ExistingFile);
  ext_cmd->add_option("--mapping", ext_flags.mapping, "key = value column mapping file")->check(CLI::ExistingFile);
  ext_cmd->add_option("-o,--out", ext_flags.out, "Transaction file to write")->required();
  ext_cmd->add_option("--provenance", ext_flags.provenance, "Provenance TSV (default: <out>.provenance.tsv)");
  ext_cmd->add_option("--sector", ext_flags.sector, "Activity sector kept")->capture_default_str();
  ext_cmd->add_option("--category", ext_flags.category, "Buyer category treated as focal agents")
      ->capture_default_str();
  ext_cmd->add_option("--year", ext_flags.year, "Single calendar year (default: every year)");
  ext_cmd->add_option("--region", ext_flags.region, "Single supplier region (default: every region)");
  ext_cmd->add_option("--threshold", ext_flags.threshold, "Anomalous edges needed for label A")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ext_cmd->add_option("--min-size", ext_flags.min_size, "Smallest subset kept, in contracts")->capture_default_str();
  ext_cmd->add_option("--max-size", ext_flags.max_size, "Largest subset kept, in contracts")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (mine_cmd->parsed()) return cmd_mine(mine_flags, out, err);
    if (select_cmd->parsed()) return cmd_select(select_flags, out, err);
    if (vec_cmd->parsed()) return cmd_vectorize(vec_flags, out, err);
    if (eval_cmd->parsed()) return cmd_evaluate(eval_flags, out, err);
    if (repro_cmd->parsed()) return cmd_repro(repro_flags, out, err);
    if (ext_cmd->parsed()) return cmd_extract(ext_flags, out, err);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace pang::cli
