#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include "negforge/corpus.hpp"
#include "negforge/split.hpp"
#include "negforge/stats.hpp"
#include "negforge/wordnet.hpp"

namespace negforge {

struct PipelineConfig {
  std::uint64_t seed = 42;
  Fraction test_frac{1, 3};
  std::size_t dev_size = 9000;
  // Categories with fewer than `augment_threshold` extracted pairs are
  // augmented toward `augment_target`.
  std::size_t augment_threshold = 1000;
  std::size_t augment_target = 1500;
  unsigned threads = 1;
};

struct CorpusSplits {
  DiagnosticSplits diagnostics;
  std::vector<CorpusRecord> nli_train;
  std::vector<CorpusRecord> nli_dev;
  std::size_t discarded_negated = 0;
  std::uint64_t seed = 42;
};

struct PipelineResult {
  CorpusSplits splits;
  StatsReport report;
};

// Invoked at most once, and only if some category needs augmentation.
using LexiconLoader = std::function<SynsetLexicon()>;

// Augments sparse categories, splits the diagnostic sets, and carves the
// dev set out of the negation-free pool.
PipelineResult build_splits(const TaggedCorpus& corpus,
                            const IngestStats& ingest,
                            const PipelineConfig& config,
                            const LexiconLoader& load_lexicon);

// Same as above starting from pre-augmented records (the stage-by-stage CLI
// path). `augmented` may be empty.
PipelineResult build_splits(std::vector<CorpusRecord> tagged,
                            std::vector<CorpusRecord> augmented,
                            std::vector<CorpusRecord> negation_free,
                            const IngestStats& ingest,
                            std::size_t discarded_negated,
                            const PipelineConfig& config,
                            std::string wordnet_version);

// Recomputes split counts from the corpora; config and ingest fields are
// taken from `base`.
StatsReport stats_report(const CorpusSplits& splits, StatsReport base);

inline constexpr std::string_view kSplitTrain = "train";
inline constexpr std::string_view kSplitTest = "test";
inline constexpr std::string_view kSplitNliTrain = "nli_train";
inline constexpr std::string_view kSplitNliDev = "nli_dev";

// Writes {CAT}_{train|test}.jsonl for every category, nli_train.jsonl,
// nli_dev.jsonl, stats.json and stats.txt into `dir` (created if needed).
void write_corpus(const PipelineResult& result,
                  const std::filesystem::path& dir);

}  // namespace negforge
