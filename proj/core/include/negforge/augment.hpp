#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "negforge/deptree.hpp"
#include "negforge/negation.hpp"
#include "negforge/nli_pair.hpp"
#include "negforge/wordnet.hpp"

namespace negforge {

struct AugmentedPair {
  ParsedPair pair;
  std::string source_id;
  std::string synonym_used;
  NegCategory category = NegCategory::PO;
};

struct SharedRoot {
  SpanRole span;  // Premise or Hypothesis
  Token root;
};

// The premise root if its lemma occurs among the hypothesis lemmas, else the
// hypothesis root if its lemma occurs among the premise lemmas.
std::optional<SharedRoot> shared_root(const ParsedPair& pair);

// Replaces every whole-word, ASCII case-insensitive occurrence of `word`.
// Occurrences starting with an uppercase letter get a capitalized
// replacement.
std::string replace_whole_word(std::string_view text, std::string_view word,
                               std::string_view replacement);

// One variant per synonym of the shared root (lexicographic order) whose
// patched trees still classify to the source category. Variant ids are
// "<source id>~<synonym>".
std::vector<AugmentedPair> augment_pair(const TaggedPair& tagged,
                                        const SynsetLexicon& lexicon);

struct CategoryAugmentation {
  std::vector<AugmentedPair> variants;
  // Records ran out before originals + variants reached the target.
  bool target_unreachable = false;
};

// Accumulates variants over `records` (all of one category, input order)
// until records.size() + variants.size() reaches `target`.
CategoryAugmentation augment_category(std::span<const TaggedPair> records,
                                      const SynsetLexicon& lexicon,
                                      std::size_t target);

}  // namespace negforge
