#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "negforge/augment.hpp"
#include "negforge/corpus.hpp"
#include "negforge/negation.hpp"

namespace negforge {

// JSONL serialization for the intermediate and output files. Field order is
// fixed so output bytes are reproducible.

std::string record_to_json(const CorpusRecord& record, std::string_view split);
CorpusRecord record_from_json(std::string_view line);

// Parsed-pairs line (input schema), optionally extended with the tag
// assignment or augmentation provenance.
std::string parsed_pair_to_json(const ParsedPair& pair);
std::string tagged_pair_to_json(const TaggedPair& tagged);
std::string augmented_pair_to_json(const AugmentedPair& variant);

std::vector<TaggedPair> read_tagged_pairs(const std::filesystem::path& file);
std::vector<CorpusRecord> read_records(const std::filesystem::path& file);

// Writes lines joined by '\n' with a trailing newline. Throws CorpusError.
void write_lines(const std::filesystem::path& file,
                 const std::vector<std::string>& lines);

}  // namespace negforge
