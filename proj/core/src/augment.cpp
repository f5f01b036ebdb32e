#include "negforge/augment.hpp"

#include "negforge/error.hpp"
#include "text.hpp"

namespace negforge {

namespace {

bool is_word_byte(char c) noexcept {
  const auto u = static_cast<unsigned char>(c);
  return (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') ||
         (u >= 'A' && u <= 'Z') || u == '_' || u >= 0x80;
}

std::string capitalized(std::string_view s) {
  std::string out(s);
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') {
    out[0] = static_cast<char>(out[0] - 'a' + 'A');
  }
  return out;
}

bool has_lemma(const DepTree& tree, std::string_view lemma) {
  for (const Token& t : tree.tokens()) {
    if (t.lemma == lemma) return true;
  }
  return false;
}

DepTree substitute(const DepTree& tree, std::string_view form,
                   std::string_view synonym) {
  std::vector<Token> tokens = tree.tokens();
  for (Token& t : tokens) {
    if (!text::iequals(t.form, form)) continue;
    t.form = text::is_upper(t.form[0]) ? capitalized(synonym)
                                       : std::string(synonym);
    t.lemma = text::lower(synonym);
  }
  return DepTree(std::move(tokens), replace_whole_word(tree.text(), form, synonym));
}

}  // namespace

std::optional<SharedRoot> shared_root(const ParsedPair& pair) {
  const Token& p_root = pair.premise_tree.root();
  if (has_lemma(pair.hypothesis_tree, p_root.lemma)) {
    return SharedRoot{SpanRole::Premise, p_root};
  }
  const Token& h_root = pair.hypothesis_tree.root();
  if (has_lemma(pair.premise_tree, h_root.lemma)) {
    return SharedRoot{SpanRole::Hypothesis, h_root};
  }
  return std::nullopt;
}

std::string replace_whole_word(std::string_view text, std::string_view word,
                               std::string_view replacement) {
  if (word.empty()) return std::string(text);
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const bool fits = i + word.size() <= text.size();
    if (fits && text::iequals(text.substr(i, word.size()), word) &&
        (i == 0 || !is_word_byte(text[i - 1])) &&
        (i + word.size() == text.size() ||
         !is_word_byte(text[i + word.size()]))) {
      out += text::is_upper(text[i]) ? capitalized(replacement)
                                     : std::string(replacement);
      i += word.size();
    } else {
      out.push_back(text[i]);
      ++i;
    }
  }
  return out;
}

std::vector<AugmentedPair> augment_pair(const TaggedPair& tagged,
                                        const SynsetLexicon& lexicon) {
  std::vector<AugmentedPair> out;
  const ParsedPair& source = tagged.pair;
  const auto shared = shared_root(source);
  if (!shared) return out;
  const Token& root = shared->root;

  for (const std::string& synonym : lexicon.synonyms(root.lemma, root.upos)) {
    DepTree premise = substitute(source.premise_tree, root.form, synonym);
    DepTree hypothesis = substitute(source.hypothesis_tree, root.form, synonym);
    if (premise.text() == source.premise_tree.text() &&
        hypothesis.text() == source.hypothesis_tree.text()) {
      continue;
    }
    const PairClassification check = assign_pair(premise, hypothesis);
    if (check.outcome != PairOutcome::Tagged ||
        check.assignment->category != tagged.assignment.category) {
      continue;
    }

    AugmentedPair variant{
        ParsedPair{source.id + "~" + synonym, source.source,
                   replace_whole_word(source.premise, root.form, synonym),
                   replace_whole_word(source.hypothesis, root.form, synonym),
                   source.label, std::move(premise), std::move(hypothesis)},
        source.id, synonym, tagged.assignment.category};
    out.push_back(std::move(variant));
  }
  return out;
}

CategoryAugmentation augment_category(std::span<const TaggedPair> records,
                                      const SynsetLexicon& lexicon,
                                      std::size_t target) {
  if (target == 0) {
    throw CorpusError(CorpusError::Kind::InvalidArgument,
                      "augmentation target must be positive");
  }
  CategoryAugmentation result;
  if (records.size() >= target) return result;
  const std::size_t needed = target - records.size();
  for (const TaggedPair& record : records) {
    for (AugmentedPair& v : augment_pair(record, lexicon)) {
      result.variants.push_back(std::move(v));
      if (result.variants.size() == needed) return result;
    }
  }
  result.target_unreachable = true;
  return result;
}

}  // namespace negforge
