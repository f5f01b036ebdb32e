#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "negforge/augment.hpp"
#include "negforge/negation.hpp"
#include "negforge/nli_pair.hpp"

namespace negforge {

struct IngestStats {
  std::size_t lines = 0;
  std::size_t dropped_label = 0;   // gold label "-" or missing
  std::size_t unparseable = 0;     // placeholder records from the parser
};

struct IngestResult {
  std::vector<ParsedPair> pairs;
  IngestStats stats;
};

// Reads parsed-pairs JSONL. Each line carries id, source, premise,
// hypothesis, label, premise_conllu and hypothesis_conllu. Ids must be
// unique across all inputs.
//
// Throws CorpusError (MalformedRecord, DuplicateId, Io).
IngestResult ingest_pairs(std::span<const std::filesystem::path> files);
// Appends the records of one stream into `into`. `name` labels diagnostics.
void ingest_stream(std::istream& in, std::string_view name,
                   IngestResult& into);

struct TaggedCorpus {
  std::vector<TaggedPair> tagged;
  std::vector<ParsedPair> negation_free;
  std::vector<ParsedPair> negated_unmatched;
};

// Partitions pairs by assign_pair outcome, preserving input order within
// each bucket. Output is independent of `threads`.
TaggedCorpus tag_corpus(std::vector<ParsedPair> pairs, unsigned threads = 1);

// Flat record written to the output corpora.
struct CorpusRecord {
  std::string id;
  std::string source_id;
  std::string source;
  std::string premise;
  std::string hypothesis;
  NliLabel label = NliLabel::Neutral;
  std::optional<NegCategory> category;
  std::optional<SpanRole> matched_span;
  bool ambiguous = false;
  bool augmented = false;
  std::optional<std::string> synonym_used;

  friend bool operator==(const CorpusRecord&, const CorpusRecord&) = default;
};

CorpusRecord to_record(const TaggedPair& tagged);
CorpusRecord to_record(const AugmentedPair& variant);
CorpusRecord to_record(const ParsedPair& pair);

}  // namespace negforge
