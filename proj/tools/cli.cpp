#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "negforge/corpus.hpp"
#include "negforge/corpus_io.hpp"
#include "negforge/error.hpp"
#include "negforge/pipeline.hpp"
#include "negforge/split.hpp"
#include "negforge/stats.hpp"
#include "negforge/wordnet.hpp"

namespace negforge::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kWordNetEnv = "NEGFORGE_WORDNET";

struct RunConfig {
  std::vector<std::string> inputs;
  std::string wordnet;
  std::string out;
  std::uint64_t seed = 42;
  std::string test_frac = "1/3";
  std::size_t dev_size = 9000;
  std::size_t augment_threshold = 1000;
  std::size_t augment_target = 1500;
  unsigned threads = 1;
  std::string format = "table";
  bool verbose = false;
};

class Log {
 public:
  Log(std::ostream& err, bool verbose) : err_(err), verbose_(verbose) {}
  template <class... Args>
  void info(const Args&... args) {
    if (!verbose_) return;
    err_ << "negforge: ";
    (err_ << ... << args);
    err_ << '\n';
  }

 private:
  std::ostream& err_;
  bool verbose_;
};

[[noreturn]] void usage_error(const std::string& why) {
  throw CorpusError(CorpusError::Kind::InvalidArgument, why);
}

fs::path resolve(const std::string& p) {
  fs::path path = fs::absolute(fs::path(p)).lexically_normal();
  if (!path.has_filename() && path.has_parent_path()) path = path.parent_path();
  return path;
}

std::vector<fs::path> resolve_all(const std::vector<std::string>& paths) {
  std::vector<fs::path> out;
  for (const auto& p : paths) out.push_back(resolve(p));
  return out;
}

PipelineConfig pipeline_config(const RunConfig& cfg) {
  PipelineConfig pc;
  pc.seed = cfg.seed;
  pc.test_frac = Fraction::parse(cfg.test_frac);
  pc.dev_size = cfg.dev_size;
  pc.augment_threshold = cfg.augment_threshold;
  pc.augment_target = cfg.augment_target;
  pc.threads = cfg.threads;
  if (pc.dev_size % 3 != 0) {
    usage_error("--dev-size must be divisible by 3, got " +
                std::to_string(pc.dev_size));
  }
  if (pc.augment_target == 0) usage_error("--augment-target must be positive");
  if (pc.threads == 0) usage_error("--threads must be at least 1");
  return pc;
}

LexiconLoader lexicon_loader(const RunConfig& cfg, Log& log) {
  return [&cfg, &log]() {
    std::string dir = cfg.wordnet;
    if (dir.empty()) {
      if (const char* env = std::getenv(kWordNetEnv)) dir = env;
    }
    if (dir.empty()) {
      usage_error(std::string("augmentation needs a WordNet directory: pass "
                              "--wordnet or set ") +
                  kWordNetEnv);
    }
    log.info("loading WordNet from ", dir);
    SynsetLexicon lex = SynsetLexicon::load(resolve(dir));
    log.info("WordNet ", lex.version(), ": ", lex.entry_count(), " entries");
    return lex;
  };
}

void write_text(const fs::path& file, const std::string& body) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  out << body;
  if (!out) {
    throw CorpusError(CorpusError::Kind::Io, "cannot write " + file.string());
  }
}

std::string read_text(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw CorpusError(CorpusError::Kind::Io, "cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw CorpusError(CorpusError::Kind::Io,
                      "cannot create " + dir.string() + ": " + ec.message());
  }
}

// Writes a full corpus directory through a sibling staging directory so a
// failed run leaves nothing behind.
void publish_corpus(const PipelineResult& result, const fs::path& out) {
  if (fs::exists(out) && !(fs::is_directory(out) && fs::is_empty(out))) {
    usage_error("output directory " + out.string() + " exists and is not empty");
  }
  const fs::path staging = out.parent_path() / (out.filename().string() + ".partial");
  fs::remove_all(staging);
  try {
    write_corpus(result, staging);
    if (fs::exists(out)) fs::remove(out);
    fs::rename(staging, out);
  } catch (...) {
    std::error_code ignored;
    fs::remove_all(staging, ignored);
    throw;
  }
}

void print_report(const StatsReport& report, const std::string& format,
                  std::ostream& out) {
  out << (format == "json" ? stats_to_json(report) : stats_to_table(report));
}

std::optional<fs::path> find_in(const std::vector<fs::path>& dirs,
                                const std::string& name) {
  for (const fs::path& d : dirs) {
    if (fs::is_regular_file(d / name)) return d / name;
  }
  return std::nullopt;
}

fs::path require_in(const std::vector<fs::path>& dirs, const std::string& name) {
  auto found = find_in(dirs, name);
  if (!found) usage_error("no " + name + " found in the --input directories");
  return *found;
}

// --- commands --------------------------------------------------------------

int cmd_tag(const RunConfig& cfg, std::ostream&, std::ostream& err) {
  Log log(err, cfg.verbose);
  const auto inputs = resolve_all(cfg.inputs);
  const fs::path out = resolve(cfg.out);
  if (cfg.threads == 0) usage_error("--threads must be at least 1");

  IngestResult ingested = ingest_pairs(inputs);
  log.info("ingested ", ingested.pairs.size(), " pairs from ",
           ingested.stats.lines, " lines");
  const IngestStats stats = ingested.stats;
  const TaggedCorpus corpus = tag_corpus(std::move(ingested.pairs), cfg.threads);

  ensure_dir(out);
  std::vector<std::string> lines;
  std::array<std::size_t, kCategoryCount> counts{};
  for (const TaggedPair& t : corpus.tagged) {
    lines.push_back(tagged_pair_to_json(t));
    ++counts[category_index(t.assignment.category)];
  }
  write_lines(out / "tagged.jsonl", lines);
  lines.clear();
  for (const ParsedPair& p : corpus.negation_free) {
    lines.push_back(parsed_pair_to_json(p));
  }
  write_lines(out / "negation_free.jsonl", lines);

  ojson summary;
  summary["ingested_lines"] = stats.lines;
  summary["dropped_label"] = stats.dropped_label;
  summary["unparseable"] = stats.unparseable;
  summary["tagged"] = corpus.tagged.size();
  summary["negation_free"] = corpus.negation_free.size();
  summary["negated_unmatched"] = corpus.negated_unmatched.size();
  ojson per_category;
  for (NegCategory c : kCategories) {
    per_category[std::string(to_string(c))] = counts[category_index(c)];
  }
  summary["categories"] = std::move(per_category);
  write_text(out / "tag_summary.json", summary.dump(2) + "\n");

  for (NegCategory c : kCategories) {
    err << to_string(c) << '\t' << counts[category_index(c)] << '\n';
  }
  err << "negation-free\t" << corpus.negation_free.size() << '\n'
      << "negated-unmatched\t" << corpus.negated_unmatched.size() << '\n';
  return kExitOk;
}

int cmd_augment(const RunConfig& cfg, std::ostream&, std::ostream& err) {
  Log log(err, cfg.verbose);
  const auto dirs = resolve_all(cfg.inputs);
  const fs::path out = resolve(cfg.out);
  const PipelineConfig pc = pipeline_config(cfg);

  const std::vector<TaggedPair> tagged =
      read_tagged_pairs(require_in(dirs, "tagged.jsonl"));
  std::array<std::vector<TaggedPair>, kCategoryCount> by_category;
  for (const TaggedPair& t : tagged) {
    by_category[category_index(t.assignment.category)].push_back(t);
  }

  const LexiconLoader load = lexicon_loader(cfg, log);
  std::optional<SynsetLexicon> lexicon;
  std::vector<std::string> lines;
  ojson per_category;
  for (NegCategory c : kCategories) {
    const auto& records = by_category[category_index(c)];
    const bool sparse = !records.empty() && records.size() < pc.augment_threshold;
    ojson entry;
    entry["extracted"] = records.size();
    entry["augmentation_applied"] = sparse;
    std::size_t added = 0;
    bool unreachable = false;
    if (sparse) {
      if (!lexicon) lexicon = load();
      CategoryAugmentation result =
          augment_category(records, *lexicon, pc.augment_target);
      for (const AugmentedPair& v : result.variants) {
        lines.push_back(augmented_pair_to_json(v));
      }
      added = result.variants.size();
      unreachable = result.target_unreachable;
      if (unreachable) {
        err << "negforge: warning: TargetUnreachable for " << to_string(c)
            << ": " << records.size() + added << " < " << pc.augment_target
            << '\n';
      }
    }
    entry["augmented"] = added;
    entry["target_unreachable"] = unreachable;
    per_category[std::string(to_string(c))] = std::move(entry);
    err << to_string(c) << '\t' << records.size() << "\t+" << added << '\n';
  }

  ensure_dir(out);
  write_lines(out / "augmented.jsonl", lines);
  ojson summary;
  summary["wordnet_version"] = lexicon ? lexicon->version() : "none";
  summary["augment_threshold"] = pc.augment_threshold;
  summary["augment_target"] = pc.augment_target;
  summary["categories"] = std::move(per_category);
  write_text(out / "augment_summary.json", summary.dump(2) + "\n");
  return kExitOk;
}

int cmd_split(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Log log(err, cfg.verbose);
  const auto dirs = resolve_all(cfg.inputs);
  const fs::path out_dir = resolve(cfg.out);
  const PipelineConfig pc = pipeline_config(cfg);

  std::vector<CorpusRecord> tagged = read_records(require_in(dirs, "tagged.jsonl"));
  std::vector<CorpusRecord> negation_free =
      read_records(require_in(dirs, "negation_free.jsonl"));
  std::vector<CorpusRecord> augmented;
  std::string wordnet_version = "none";
  if (auto file = find_in(dirs, "augmented.jsonl")) augmented = read_records(*file);
  if (auto file = find_in(dirs, "augment_summary.json")) {
    wordnet_version = ojson::parse(read_text(*file)).value("wordnet_version", "none");
  }

  IngestStats ingest;
  std::size_t discarded = 0;
  try {
    const ojson summary = ojson::parse(read_text(require_in(dirs, "tag_summary.json")));
    ingest.lines = summary.at("ingested_lines").get<std::size_t>();
    ingest.dropped_label = summary.at("dropped_label").get<std::size_t>();
    ingest.unparseable = summary.at("unparseable").get<std::size_t>();
    discarded = summary.at("negated_unmatched").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw CorpusError(CorpusError::Kind::MalformedRecord,
                      std::string("tag_summary.json: ") + e.what());
  }
  log.info("splitting ", tagged.size(), " tagged + ", augmented.size(),
           " augmented records");

  const PipelineResult result =
      build_splits(std::move(tagged), std::move(augmented),
                   std::move(negation_free), ingest, discarded, pc,
                   std::move(wordnet_version));
  publish_corpus(result, out_dir);
  print_report(result.report, cfg.format, out);
  return kExitOk;
}

CorpusSplits read_splits(const fs::path& dir) {
  CorpusSplits splits;
  for (NegCategory c : kCategories) {
    const std::string sym(to_string(c));
    splits.diagnostics[category_index(c)].train =
        read_records(dir / (sym + "_train.jsonl"));
    splits.diagnostics[category_index(c)].test =
        read_records(dir / (sym + "_test.jsonl"));
  }
  splits.nli_train = read_records(dir / "nli_train.jsonl");
  splits.nli_dev = read_records(dir / "nli_dev.jsonl");
  return splits;
}

int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.inputs.size() != 1) usage_error("stats takes exactly one --input directory");
  const fs::path dir = resolve(cfg.inputs.front());
  StatsReport base;
  if (fs::is_regular_file(dir / "stats.json")) {
    base = stats_from_json(read_text(dir / "stats.json"));
  }
  CorpusSplits splits = read_splits(dir);
  splits.discarded_negated = base.discarded_negated;
  splits.seed = base.seed;
  print_report(stats_report(splits, base), cfg.format, out);
  return kExitOk;
}

int cmd_undersample(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.inputs.size() != 1) {
    usage_error("undersample takes exactly one --input directory");
  }
  const fs::path dir = resolve(cfg.inputs.front());
  const fs::path out_dir = resolve(cfg.out);
  std::map<NegCategory, std::vector<CorpusRecord>> sets;
  for (NegCategory c : kCategories) {
    sets[c] = read_records(dir / (std::string(to_string(c)) + "_train.jsonl"));
  }
  const auto reduced = undersample(sets, cfg.seed);
  ensure_dir(out_dir);
  for (const auto& [c, records] : reduced) {
    std::vector<std::string> lines;
    for (const CorpusRecord& r : records) lines.push_back(record_to_json(r, kSplitTrain));
    write_lines(out_dir / (std::string(to_string(c)) + "_train.jsonl"), lines);
    out << to_string(c) << '\t' << sets.at(c).size() << " -> " << records.size()
        << '\n';
  }
  return kExitOk;
}

int cmd_pipeline(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Log log(err, cfg.verbose);
  const auto inputs = resolve_all(cfg.inputs);
  const fs::path out_dir = resolve(cfg.out);
  const PipelineConfig pc = pipeline_config(cfg);
  if (fs::exists(out_dir) && !(fs::is_directory(out_dir) && fs::is_empty(out_dir))) {
    usage_error("output directory " + out_dir.string() + " exists and is not empty");
  }

  IngestResult ingested = ingest_pairs(inputs);
  log.info("ingested ", ingested.pairs.size(), " pairs (", ingested.stats.dropped_label,
           " dropped labels, ", ingested.stats.unparseable, " unparseable)");
  const IngestStats stats = ingested.stats;
  const TaggedCorpus corpus = tag_corpus(std::move(ingested.pairs), pc.threads);
  log.info("tagged ", corpus.tagged.size(), ", negation-free ",
           corpus.negation_free.size(), ", negated-unmatched ",
           corpus.negated_unmatched.size());

  const PipelineResult result =
      build_splits(corpus, stats, pc, lexicon_loader(cfg, log));
  for (NegCategory c : kCategories) {
    const CategoryStats& s = result.report.categories[category_index(c)];
    if (s.target_unreachable) {
      err << "negforge: warning: TargetUnreachable for " << to_string(c) << ": "
          << s.extracted + s.augmented << " < " << pc.augment_target << '\n';
    }
  }
  publish_corpus(result, out_dir);
  print_report(result.report, cfg.format, out);
  return kExitOk;
}

// --- option wiring ---------------------------------------------------------

void add_inputs(CLI::App* cmd, RunConfig& cfg, const std::string& what) {
  cmd->add_option("--input", cfg.inputs, what)->required()->take_all();
}
void add_out(CLI::App* cmd, RunConfig& cfg, const std::string& what) {
  cmd->add_option("--out", cfg.out, what)->required();
}
void add_seed(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "Seed for every sampling step")
      ->capture_default_str();
}
void add_split_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--test-frac", cfg.test_frac,
                  "Diagnostic test fraction per category (a/b or decimal)")
      ->capture_default_str();
  cmd->add_option("--dev-size", cfg.dev_size,
                  "NLI_dev size, divisible by 3 (balanced across labels)")
      ->capture_default_str();
}
void add_augment_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--wordnet", cfg.wordnet,
                  std::string("WordNet 3.x database directory (fallback: $") +
                      kWordNetEnv + ")");
  cmd->add_option("--augment-threshold", cfg.augment_threshold,
                  "Augment categories with fewer extracted pairs than this")
      ->capture_default_str();
  cmd->add_option("--augment-target", cfg.augment_target,
                  "Per-category size augmentation aims for")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}
void add_threads(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--threads", cfg.threads, "Worker threads for tagging")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}
void add_format(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--format", cfg.format, "Report format")
      ->capture_default_str()
      ->check(CLI::IsMember({"table", "json"}));
}
void add_verbose(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_flag("-v,--verbose", cfg.verbose, "Log progress to stderr");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"negforge: developmental negation corpus builder"};
  app.name(args.empty() ? "negforge" : fs::path(args.front()).filename().string());
  app.require_subcommand(1);

  CLI::App* tag = app.add_subcommand("tag", "Classify parsed pairs into negation categories");
  add_inputs(tag, cfg, "Parsed-pairs JSONL file (repeatable)");
  add_out(tag, cfg, "Directory for tagged.jsonl, negation_free.jsonl, tag_summary.json");
  add_threads(tag, cfg);
  add_verbose(tag, cfg);

  CLI::App* augment = app.add_subcommand("augment", "WordNet synonym augmentation of sparse categories");
  add_inputs(augment, cfg, "Directory written by 'tag'");
  add_out(augment, cfg, "Directory for augmented.jsonl and augment_summary.json");
  add_augment_flags(augment, cfg);
  add_verbose(augment, cfg);

  CLI::App* split = app.add_subcommand("split", "Diagnostic train/test split and NLI_dev carve-out");
  add_inputs(split, cfg, "Directories written by 'tag' and 'augment'");
  add_out(split, cfg, "Output corpus directory (must not exist or be empty)");
  add_seed(split, cfg);
  add_split_flags(split, cfg);
  add_format(split, cfg);
  add_verbose(split, cfg);

  CLI::App* stats = app.add_subcommand("stats", "Report category and corpus counts of an output directory");
  add_inputs(stats, cfg, "Output corpus directory");
  add_format(stats, cfg);

  CLI::App* under = app.add_subcommand("undersample", "Reduce every diagnostic train set to the smallest one");
  add_inputs(under, cfg, "Output corpus directory");
  add_out(under, cfg, "Directory for the undersampled {CAT}_train.jsonl files");
  add_seed(under, cfg);

  CLI::App* pipeline = app.add_subcommand("pipeline", "tag -> augment -> split -> stats in one run");
  add_inputs(pipeline, cfg, "Parsed-pairs JSONL file (repeatable)");
  add_out(pipeline, cfg, "Output corpus directory (must not exist or be empty)");
  add_seed(pipeline, cfg);
  add_split_flags(pipeline, cfg);
  add_augment_flags(pipeline, cfg);
  add_threads(pipeline, cfg);
  add_format(pipeline, cfg);
  add_verbose(pipeline, cfg);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUserError;
  }

  try {
    if (*tag) return cmd_tag(cfg, out, err);
    if (*augment) return cmd_augment(cfg, out, err);
    if (*split) return cmd_split(cfg, out, err);
    if (*stats) return cmd_stats(cfg, out, err);
    if (*under) return cmd_undersample(cfg, out, err);
    if (*pipeline) return cmd_pipeline(cfg, out, err);
  } catch (const Error& e) {
    err << "negforge: error: " << e.what() << '\n';
    return kExitUserError;
  } catch (const fs::filesystem_error& e) {
    err << "negforge: error: " << e.what() << '\n';
    return kExitUserError;
  } catch (const std::exception& e) {
    err << "negforge: internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
  return kExitInternalError;
}

}  // namespace negforge::cli
