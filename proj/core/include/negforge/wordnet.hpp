#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace negforge {

enum class WordNetPos : std::uint8_t { Noun, Verb, Adj, Adv };

// NOUN/PROPN -> noun, VERB/AUX -> verb, ADJ -> adj, ADV -> adv.
std::optional<WordNetPos> wordnet_pos_for_upos(std::string_view upos) noexcept;

// Same-POS synonym sets keyed by lowercase lemma. Only single-word lemmas
// are kept, and a lemma is never listed as its own synonym.
class SynsetLexicon {
 public:
  using SynonymSet = std::set<std::string, std::less<>>;

  SynsetLexicon() = default;

  // Reads index.{noun,verb,adj,adv} and data.{noun,verb,adj,adv} from a
  // WordNet 3.x database directory. Data lines are keyed by their offset
  // field, so hand-written fixtures need not use real byte offsets.
  //
  // Throws WordNetError.
  static SynsetLexicon load(const std::filesystem::path& dir);

  // Builds a lexicon directly from synsets (lists of co-member lemmas).
  static SynsetLexicon from_synsets(
      const std::vector<std::pair<WordNetPos, std::vector<std::string>>>&
          synsets);

  const SynonymSet& synonyms(std::string_view lemma, WordNetPos pos) const;
  // Empty for any UPOS without a WordNet counterpart.
  const SynonymSet& synonyms(std::string_view lemma,
                             std::string_view upos) const;

  std::size_t entry_count() const noexcept;
  // Version string found in the database license header, or "unknown".
  const std::string& version() const noexcept { return version_; }

 private:
  using Table = std::map<std::string, SynonymSet, std::less<>>;
  std::array<Table, 4> tables_;
  std::string version_ = "unknown";
};

inline SynsetLexicon load_wordnet(const std::filesystem::path& dir) {
  return SynsetLexicon::load(dir);
}

}  // namespace negforge
