#include "negforge/corpus.hpp"

#include <fstream>
#include <thread>
#include <unordered_set>

#include "json.hpp"
#include "negforge/error.hpp"
#include "text.hpp"

namespace negforge {

using nlohmann::json;

std::string_view to_string(NliLabel label) noexcept {
  switch (label) {
    case NliLabel::Entailment:
      return "entailment";
    case NliLabel::Neutral:
      return "neutral";
    case NliLabel::Contradiction:
      return "contradiction";
  }
  return "neutral";
}

std::optional<NliLabel> label_from_string(std::string_view s) noexcept {
  for (NliLabel l : kLabels) {
    if (to_string(l) == s) return l;
  }
  return std::nullopt;
}

namespace {

[[noreturn]] void malformed(std::string_view name, std::size_t line,
                            const std::string& why) {
  throw CorpusError(CorpusError::Kind::MalformedRecord,
                    std::string(name) + ":" + std::to_string(line) + ": " + why);
}

const std::string& string_field(const json& obj, const char* key,
                                std::string_view name, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    malformed(name, line, std::string("missing string field '") + key + "'");
  }
  return it->get_ref<const std::string&>();
}

DepTree span_tree(const std::string& block, const std::string& span,
                  const char* role, std::string_view name, std::size_t line) {
  DepTree parsed = [&] {
    try {
      return parse_conllu(block);
    } catch (const ConlluError& e) {
      malformed(name, line, std::string(role) + "_conllu: " + e.what());
    }
  }();
  if (block.find("# text =") != std::string::npos &&
      text::normalize_ws(parsed.text()) != text::normalize_ws(span)) {
    malformed(name, line,
              std::string(role) + "_conllu text does not match the " + role);
  }
  return DepTree(parsed.tokens(), span);
}

void ingest_into(std::istream& in, std::string_view name, IngestResult& into,
                 std::unordered_set<std::string>& seen) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    ++into.stats.lines;

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      malformed(name, line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) malformed(name, line_no, "record is not an object");

    const std::string& id = string_field(obj, "id", name, line_no);
    if (id.empty()) malformed(name, line_no, "empty id");
    if (auto u = obj.find("unparseable"); u != obj.end() && u->is_boolean() &&
                                          u->get<bool>()) {
      ++into.stats.unparseable;
      continue;
    }
    auto label_it = obj.find("label");
    if (label_it == obj.end() || label_it->is_null() ||
        (label_it->is_string() && label_it->get_ref<const std::string&>() == "-")) {
      ++into.stats.dropped_label;
      continue;
    }
    if (!label_it->is_string()) malformed(name, line_no, "label is not a string");
    const auto label = label_from_string(label_it->get_ref<const std::string&>());
    if (!label) {
      malformed(name, line_no,
                "unknown label '" + label_it->get<std::string>() + "'");
    }

    const std::string& premise = string_field(obj, "premise", name, line_no);
    const std::string& hypothesis =
        string_field(obj, "hypothesis", name, line_no);
    const std::string& source = string_field(obj, "source", name, line_no);
    const std::string& p_block =
        string_field(obj, "premise_conllu", name, line_no);
    const std::string& h_block =
        string_field(obj, "hypothesis_conllu", name, line_no);

    if (!seen.insert(id).second) {
      throw CorpusError(CorpusError::Kind::DuplicateId,
                        std::string(name) + ":" + std::to_string(line_no) +
                            ": duplicate id '" + id + "'");
    }
    into.pairs.push_back(ParsedPair{
        id, source, premise, hypothesis, *label,
        span_tree(p_block, premise, "premise", name, line_no),
        span_tree(h_block, hypothesis, "hypothesis", name, line_no)});
  }
}

}  // namespace

void ingest_stream(std::istream& in, std::string_view name,
                   IngestResult& into) {
  std::unordered_set<std::string> seen;
  for (const ParsedPair& p : into.pairs) seen.insert(p.id);
  ingest_into(in, name, into, seen);
}

IngestResult ingest_pairs(std::span<const std::filesystem::path> files) {
  IngestResult result;
  std::unordered_set<std::string> seen;
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw CorpusError(CorpusError::Kind::Io,
                        "cannot open input file " + path.string());
    }
    ingest_into(in, path.string(), result, seen);
  }
  return result;
}

TaggedCorpus tag_corpus(std::vector<ParsedPair> pairs, unsigned threads) {
  std::vector<PairClassification> outcomes(pairs.size());
  const std::size_t workers = std::max<std::size_t>(
      1, std::min<std::size_t>(threads, pairs.size() / 256 + 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      outcomes[i] = assign_pair(pairs[i]);
    }
  } else {
    const std::size_t chunk = (pairs.size() + workers - 1) / workers;
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(pairs.size(), begin + chunk);
      pool.emplace_back([&, begin, end] {
        for (std::size_t i = begin; i < end; ++i) {
          outcomes[i] = assign_pair(pairs[i]);
        }
      });
    }
  }

  TaggedCorpus corpus;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    switch (outcomes[i].outcome) {
      case PairOutcome::Tagged:
        corpus.tagged.push_back(
            TaggedPair{std::move(pairs[i]), std::move(*outcomes[i].assignment)});
        break;
      case PairOutcome::NoNegation:
        corpus.negation_free.push_back(std::move(pairs[i]));
        break;
      case PairOutcome::NegatedUnmatched:
        corpus.negated_unmatched.push_back(std::move(pairs[i]));
        break;
    }
  }
  return corpus;
}

CorpusRecord to_record(const ParsedPair& pair) {
  CorpusRecord r;
  r.id = pair.id;
  r.source_id = pair.id;
  r.source = pair.source;
  r.premise = pair.premise;
  r.hypothesis = pair.hypothesis;
  r.label = pair.label;
  return r;
}

CorpusRecord to_record(const TaggedPair& tagged) {
  CorpusRecord r = to_record(tagged.pair);
  r.category = tagged.assignment.category;
  r.matched_span = tagged.assignment.matched_span;
  r.ambiguous = tagged.assignment.ambiguous;
  return r;
}

CorpusRecord to_record(const AugmentedPair& variant) {
  CorpusRecord r = to_record(variant.pair);
  r.source_id = variant.source_id;
  r.category = variant.category;
  r.augmented = true;
  r.synonym_used = variant.synonym_used;
  return r;
}

}  // namespace negforge
