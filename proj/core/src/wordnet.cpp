#include "negforge/wordnet.hpp"

#include <fstream>
#include <regex>
#include <unordered_map>

#include "negforge/error.hpp"
#include "text.hpp"

namespace negforge {

namespace {

constexpr std::array<std::string_view, 4> kPosSuffix = {"noun", "verb", "adj",
                                                       "adv"};

std::size_t slot(WordNetPos pos) noexcept { return static_cast<std::size_t>(pos); }

const SynsetLexicon::SynonymSet& empty_set() {
  static const SynsetLexicon::SynonymSet kEmpty;
  return kEmpty;
}

bool single_word(std::string_view lemma) noexcept {
  return !lemma.empty() && lemma.find('_') == std::string_view::npos &&
         lemma.find(' ') == std::string_view::npos;
}

// Adjective lemmas in data.adj may carry a syntactic marker: "(a)", "(p)",
// "(ip)".
std::string clean_lemma(std::string_view raw) {
  if (!raw.empty() && raw.back() == ')') {
    std::size_t open = raw.rfind('(');
    if (open != std::string_view::npos) raw = raw.substr(0, open);
  }
  return text::lower(raw);
}

std::ifstream open_db_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw WordNetError(WordNetError::Kind::MissingFile, path.string(), 0,
                       "cannot open WordNet file " + path.string());
  }
  return in;
}

[[noreturn]] void malformed(WordNetError::Kind kind,
                            const std::filesystem::path& path, std::size_t line,
                            const std::string& why) {
  throw WordNetError(kind, path.string(), line,
                     path.string() + ":" + std::to_string(line) + ": " + why);
}

using DataTable = std::unordered_map<unsigned long long, std::vector<std::string>>;

// Returns the version mentioned in a license header line, if any.
std::string header_version(std::string_view line) {
  static const std::regex kVersion(R"(WordNet (\d+(\.\d+)+))");
  std::match_results<std::string_view::const_iterator> m;
  if (std::regex_search(line.begin(), line.end(), m, kVersion)) {
    return m[1].str();
  }
  return {};
}

DataTable read_data(const std::filesystem::path& path, std::string& version) {
  std::ifstream in = open_db_file(path);
  DataTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == ' ') {
      if (version.empty()) version = header_version(line);
      continue;
    }
    auto fields = text::split_ws(line);
    if (fields.size() < 4) {
      malformed(WordNetError::Kind::MalformedDataLine, path, line_no,
                "expected offset, lex_filenum, ss_type and w_cnt");
    }
    unsigned long long offset = 0;
    if (!text::parse_uint(fields[0], offset)) {
      malformed(WordNetError::Kind::MalformedDataLine, path, line_no,
                "bad synset offset '" + std::string(fields[0]) + "'");
    }
    unsigned long word_count = 0;
    try {
      std::size_t used = 0;
      word_count = std::stoul(std::string(fields[3]), &used, 16);
      if (used != fields[3].size()) throw std::invalid_argument("w_cnt");
    } catch (const std::exception&) {
      malformed(WordNetError::Kind::MalformedDataLine, path, line_no,
                "bad w_cnt '" + std::string(fields[3]) + "'");
    }
    if (word_count == 0 || fields.size() < 4 + 2 * word_count) {
      malformed(WordNetError::Kind::MalformedDataLine, path, line_no,
                "w_cnt " + std::to_string(word_count) +
                    " does not match the word list");
    }
    std::vector<std::string> words;
    words.reserve(word_count);
    for (std::size_t w = 0; w < word_count; ++w) {
      words.push_back(clean_lemma(fields[4 + 2 * w]));
    }
    table[offset] = std::move(words);
  }
  return table;
}

}  // namespace

std::optional<WordNetPos> wordnet_pos_for_upos(std::string_view upos) noexcept {
  if (upos == "NOUN" || upos == "PROPN") return WordNetPos::Noun;
  if (upos == "VERB" || upos == "AUX") return WordNetPos::Verb;
  if (upos == "ADJ") return WordNetPos::Adj;
  if (upos == "ADV") return WordNetPos::Adv;
  return std::nullopt;
}

SynsetLexicon SynsetLexicon::load(const std::filesystem::path& dir) {
  SynsetLexicon lex;
  std::string version;
  for (std::size_t p = 0; p < kPosSuffix.size(); ++p) {
    const std::filesystem::path data_path =
        dir / ("data." + std::string(kPosSuffix[p]));
    const std::filesystem::path index_path =
        dir / ("index." + std::string(kPosSuffix[p]));
    const DataTable data = read_data(data_path, version);

    std::ifstream in = open_db_file(index_path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == ' ') continue;
      auto fields = text::split_ws(line);
      unsigned long long synset_count = 0;
      unsigned long long pointer_count = 0;
      if (fields.size() < 6 || !text::parse_uint(fields[2], synset_count) ||
          !text::parse_uint(fields[3], pointer_count)) {
        malformed(WordNetError::Kind::MalformedIndexLine, index_path, line_no,
                  "expected lemma, pos, synset_cnt and p_cnt");
      }
      const std::size_t first_offset = 4 + pointer_count + 2;
      if (fields.size() != first_offset + synset_count) {
        malformed(WordNetError::Kind::MalformedIndexLine, index_path, line_no,
                  "field count does not match synset_cnt/p_cnt");
      }
      const std::string lemma = clean_lemma(fields[0]);
      if (!single_word(lemma)) continue;

      SynonymSet synonyms;
      for (std::size_t i = first_offset; i < fields.size(); ++i) {
        unsigned long long offset = 0;
        if (!text::parse_uint(fields[i], offset)) {
          malformed(WordNetError::Kind::MalformedIndexLine, index_path,
                    line_no, "bad synset offset '" + std::string(fields[i]) + "'");
        }
        auto it = data.find(offset);
        if (it == data.end()) {
          malformed(WordNetError::Kind::MalformedIndexLine, index_path,
                    line_no,
                    "synset offset " + std::string(fields[i]) +
                        " not found in " + data_path.filename().string());
        }
        for (const std::string& word : it->second) {
          if (word != lemma && single_word(word)) synonyms.insert(word);
        }
      }
      if (!synonyms.empty()) {
        SynonymSet& entry = lex.tables_[p][lemma];
        entry.merge(synonyms);
      }
    }
  }
  lex.version_ = version.empty() ? "unknown" : version;
  return lex;
}

SynsetLexicon SynsetLexicon::from_synsets(
    const std::vector<std::pair<WordNetPos, std::vector<std::string>>>&
        synsets) {
  SynsetLexicon lex;
  for (const auto& [pos, members] : synsets) {
    std::vector<std::string> words;
    for (const std::string& m : members) {
      std::string w = clean_lemma(m);
      if (single_word(w)) words.push_back(std::move(w));
    }
    for (const std::string& a : words) {
      for (const std::string& b : words) {
        if (a != b) lex.tables_[slot(pos)][a].insert(b);
      }
    }
  }
  return lex;
}

const SynsetLexicon::SynonymSet& SynsetLexicon::synonyms(std::string_view lemma,
                                                         WordNetPos pos) const {
  const Table& table = tables_[slot(pos)];
  auto it = table.find(text::lower(lemma));
  return it == table.end() ? empty_set() : it->second;
}

const SynsetLexicon::SynonymSet& SynsetLexicon::synonyms(
    std::string_view lemma, std::string_view upos) const {
  auto pos = wordnet_pos_for_upos(upos);
  return pos ? synonyms(lemma, *pos) : empty_set();
}

std::size_t SynsetLexicon::entry_count() const noexcept {
  std::size_t n = 0;
  for (const Table& t : tables_) n += t.size();
  return n;
}

}  // namespace negforge
