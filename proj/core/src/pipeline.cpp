#include "negforge/pipeline.hpp"

#include <fstream>
#include <optional>

#include "negforge/corpus_io.hpp"
#include "negforge/error.hpp"

namespace negforge {

namespace {

bool is_sparse(std::size_t extracted, const PipelineConfig& config) {
  return extracted > 0 && extracted < config.augment_threshold;
}

void write_text(const std::filesystem::path& file, const std::string& body) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  out << body;
  if (!out) {
    throw CorpusError(CorpusError::Kind::Io, "cannot write " + file.string());
  }
}

std::vector<std::string> to_lines(const std::vector<CorpusRecord>& records,
                                  std::string_view split) {
  std::vector<std::string> lines;
  lines.reserve(records.size());
  for (const CorpusRecord& r : records) lines.push_back(record_to_json(r, split));
  return lines;
}

}  // namespace

PipelineResult build_splits(const TaggedCorpus& corpus,
                            const IngestStats& ingest,
                            const PipelineConfig& config,
                            const LexiconLoader& load_lexicon) {
  std::array<std::vector<std::size_t>, kCategoryCount> members;
  for (std::size_t i = 0; i < corpus.tagged.size(); ++i) {
    members[category_index(corpus.tagged[i].assignment.category)].push_back(i);
  }

  std::optional<SynsetLexicon> lexicon;
  std::vector<CorpusRecord> augmented;
  for (NegCategory c : kCategories) {
    const auto& idx = members[category_index(c)];
    if (!is_sparse(idx.size(), config)) continue;
    if (!lexicon) lexicon = load_lexicon();
    std::vector<TaggedPair> records;
    records.reserve(idx.size());
    for (std::size_t i : idx) records.push_back(corpus.tagged[i]);
    const CategoryAugmentation result =
        augment_category(records, *lexicon, config.augment_target);
    for (const AugmentedPair& v : result.variants) {
      augmented.push_back(to_record(v));
    }
  }

  std::vector<CorpusRecord> tagged;
  tagged.reserve(corpus.tagged.size());
  for (const TaggedPair& t : corpus.tagged) tagged.push_back(to_record(t));
  std::vector<CorpusRecord> negation_free;
  negation_free.reserve(corpus.negation_free.size());
  for (const ParsedPair& p : corpus.negation_free) {
    negation_free.push_back(to_record(p));
  }
  return build_splits(std::move(tagged), std::move(augmented),
                      std::move(negation_free), ingest,
                      corpus.negated_unmatched.size(), config,
                      lexicon ? lexicon->version() : "none");
}

PipelineResult build_splits(std::vector<CorpusRecord> tagged,
                            std::vector<CorpusRecord> augmented,
                            std::vector<CorpusRecord> negation_free,
                            const IngestStats& ingest,
                            std::size_t discarded_negated,
                            const PipelineConfig& config,
                            std::string wordnet_version) {
  PipelineResult result;
  StatsReport& report = result.report;
  report.ingested_lines = ingest.lines;
  report.dropped_label = ingest.dropped_label;
  report.unparseable = ingest.unparseable;
  report.negation_free = negation_free.size();
  report.discarded_negated = discarded_negated;
  report.seed = config.seed;
  report.test_frac = config.test_frac.to_string();
  report.dev_size = config.dev_size;
  report.augment_threshold = config.augment_threshold;
  report.augment_target = config.augment_target;
  report.wordnet_version = std::move(wordnet_version);

  std::array<std::size_t, kCategoryCount> extracted{};
  for (const CorpusRecord& r : tagged) {
    if (!r.category) {
      throw CorpusError(CorpusError::Kind::InvalidArgument,
                        "tagged record '" + r.id + "' has no category");
    }
    ++extracted[category_index(*r.category)];
  }
  for (NegCategory c : kCategories) {
    CategoryStats& s = report.categories[category_index(c)];
    s.augmentation_applied = is_sparse(extracted[category_index(c)], config);
  }

  std::vector<CorpusRecord> diagnostic = std::move(tagged);
  diagnostic.insert(diagnostic.end(), std::make_move_iterator(augmented.begin()),
                    std::make_move_iterator(augmented.end()));

  CorpusSplits& splits = result.splits;
  splits.seed = config.seed;
  splits.discarded_negated = discarded_negated;
  splits.diagnostics = split_diagnostics(diagnostic, config.test_frac, config.seed);
  DevCarve dev = carve_dev(std::move(negation_free), config.dev_size, config.seed);
  splits.nli_train = std::move(dev.nli_train);
  splits.nli_dev = std::move(dev.nli_dev);

  report = stats_report(splits, std::move(report));
  for (NegCategory c : kCategories) {
    CategoryStats& s = report.categories[category_index(c)];
    s.target_unreachable = s.augmentation_applied &&
                           s.extracted + s.augmented < config.augment_target;
  }
  return result;
}

StatsReport stats_report(const CorpusSplits& splits, StatsReport base) {
  for (NegCategory c : kCategories) {
    CategoryStats& s = base.categories[category_index(c)];
    const CategorySplit& split = splits.diagnostics[category_index(c)];
    s.train = split.train.size();
    s.test = split.test.size();
    s.extracted = 0;
    s.augmented = 0;
    for (const auto* side : {&split.train, &split.test}) {
      for (const CorpusRecord& r : *side) ++(r.augmented ? s.augmented : s.extracted);
    }
  }
  base.nli_train = splits.nli_train.size();
  base.nli_dev = splits.nli_dev.size();
  base.nli_dev_labels = {};
  for (const CorpusRecord& r : splits.nli_dev) {
    ++base.nli_dev_labels[static_cast<std::size_t>(r.label)];
  }
  base.discarded_negated = splits.discarded_negated;
  base.seed = splits.seed;
  return base;
}

void write_corpus(const PipelineResult& result,
                  const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw CorpusError(CorpusError::Kind::Io,
                      "cannot create " + dir.string() + ": " + ec.message());
  }
  const CorpusSplits& s = result.splits;
  for (NegCategory c : kCategories) {
    const CategorySplit& split = s.diagnostics[category_index(c)];
    const std::string sym(to_string(c));
    write_lines(dir / (sym + "_train.jsonl"), to_lines(split.train, kSplitTrain));
    write_lines(dir / (sym + "_test.jsonl"), to_lines(split.test, kSplitTest));
  }
  write_lines(dir / "nli_train.jsonl", to_lines(s.nli_train, kSplitNliTrain));
  write_lines(dir / "nli_dev.jsonl", to_lines(s.nli_dev, kSplitNliDev));
  write_text(dir / "stats.json", stats_to_json(result.report));
  write_text(dir / "stats.txt", stats_to_table(result.report));
}

}  // namespace negforge
