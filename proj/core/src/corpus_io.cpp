#include "negforge/corpus_io.hpp"

#include <fstream>

#include "json.hpp"
#include "negforge/error.hpp"
#include "text.hpp"

namespace negforge {

using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void malformed(const std::string& where, const std::string& why) {
  throw CorpusError(CorpusError::Kind::MalformedRecord, where + ": " + why);
}

const std::string& need_string(const ojson& obj, const char* key,
                               const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    malformed(where, std::string("missing string field '") + key + "'");
  }
  return it->get_ref<const std::string&>();
}

ojson parse_object(std::string_view line, const std::string& where) {
  ojson obj;
  try {
    obj = ojson::parse(line);
  } catch (const ojson::parse_error& e) {
    malformed(where, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) malformed(where, "record is not an object");
  return obj;
}

NliLabel need_label(const ojson& obj, const std::string& where) {
  const auto label = label_from_string(need_string(obj, "label", where));
  if (!label) malformed(where, "unknown label");
  return *label;
}

NegCategory need_category(const ojson& obj, const std::string& where) {
  const auto c = category_from_string(need_string(obj, "category", where));
  if (!c) malformed(where, "unknown category");
  return *c;
}

DepTree need_tree(const ojson& obj, const char* key, const std::string& span,
                  const std::string& where) {
  try {
    DepTree parsed = parse_conllu(need_string(obj, key, where));
    return DepTree(parsed.tokens(), span);
  } catch (const ConlluError& e) {
    malformed(where, std::string(key) + ": " + e.what());
  }
}

ojson pair_json(const ParsedPair& pair) {
  ojson j;
  j["id"] = pair.id;
  j["source"] = pair.source;
  j["premise"] = pair.premise;
  j["hypothesis"] = pair.hypothesis;
  j["label"] = std::string(to_string(pair.label));
  j["premise_conllu"] = pair.premise_tree.to_conllu();
  j["hypothesis_conllu"] = pair.hypothesis_tree.to_conllu();
  return j;
}

template <class Fn>
void for_each_line(const std::filesystem::path& file, Fn&& fn) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw CorpusError(CorpusError::Kind::Io, "cannot open " + file.string());
  }
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    fn(line, file.string() + ":" + std::to_string(line_no));
  }
}

}  // namespace

std::string record_to_json(const CorpusRecord& r, std::string_view split) {
  ojson j;
  j["id"] = r.id;
  j["source_id"] = r.source_id;
  j["source"] = r.source;
  if (r.category) j["category"] = std::string(to_string(*r.category));
  j["split"] = std::string(split);
  j["premise"] = r.premise;
  j["hypothesis"] = r.hypothesis;
  j["label"] = std::string(to_string(r.label));
  if (r.matched_span) j["matched_span"] = std::string(to_string(*r.matched_span));
  if (r.category) j["ambiguous"] = r.ambiguous;
  j["augmented"] = r.augmented;
  if (r.synonym_used) j["synonym_used"] = *r.synonym_used;
  return j.dump();
}

CorpusRecord record_from_json(std::string_view line) {
  const std::string where = "record";
  const ojson obj = parse_object(line, where);
  CorpusRecord r;
  r.id = need_string(obj, "id", where);
  r.source_id = obj.contains("source_id") ? need_string(obj, "source_id", where)
                                          : r.id;
  r.source = need_string(obj, "source", where);
  r.premise = need_string(obj, "premise", where);
  r.hypothesis = need_string(obj, "hypothesis", where);
  r.label = need_label(obj, where);
  if (obj.contains("category")) r.category = need_category(obj, where);
  if (obj.contains("matched_span")) {
    r.matched_span =
        span_role_from_string(need_string(obj, "matched_span", where));
    if (!r.matched_span) malformed(where, "unknown matched_span");
  }
  r.ambiguous = obj.value("ambiguous", false);
  r.augmented = obj.value("augmented", false);
  if (obj.contains("synonym_used")) {
    r.synonym_used = need_string(obj, "synonym_used", where);
  }
  return r;
}

std::string parsed_pair_to_json(const ParsedPair& pair) {
  return pair_json(pair).dump();
}

std::string tagged_pair_to_json(const TaggedPair& tagged) {
  ojson j = pair_json(tagged.pair);
  const CategoryAssignment& a = tagged.assignment;
  j["category"] = std::string(to_string(a.category));
  j["matched_span"] = std::string(to_string(a.matched_span));
  j["ambiguous"] = a.ambiguous;
  ojson matches = ojson::array();
  for (const SpanMatch& m : a.all_matches) {
    matches.push_back({{"span", std::string(to_string(m.span))},
                       {"category", std::string(to_string(m.category))}});
  }
  j["all_matches"] = std::move(matches);
  return j.dump();
}

std::string augmented_pair_to_json(const AugmentedPair& v) {
  ojson j;
  j["id"] = v.pair.id;
  j["source_id"] = v.source_id;
  j["source"] = v.pair.source;
  j["category"] = std::string(to_string(v.category));
  j["premise"] = v.pair.premise;
  j["hypothesis"] = v.pair.hypothesis;
  j["label"] = std::string(to_string(v.pair.label));
  j["augmented"] = true;
  j["synonym_used"] = v.synonym_used;
  j["premise_conllu"] = v.pair.premise_tree.to_conllu();
  j["hypothesis_conllu"] = v.pair.hypothesis_tree.to_conllu();
  return j.dump();
}

std::vector<TaggedPair> read_tagged_pairs(const std::filesystem::path& file) {
  std::vector<TaggedPair> out;
  for_each_line(file, [&](std::string_view line, const std::string& where) {
    const ojson obj = parse_object(line, where);
    const std::string& premise = need_string(obj, "premise", where);
    const std::string& hypothesis = need_string(obj, "hypothesis", where);
    ParsedPair pair{need_string(obj, "id", where),
                    need_string(obj, "source", where),
                    premise,
                    hypothesis,
                    need_label(obj, where),
                    need_tree(obj, "premise_conllu", premise, where),
                    need_tree(obj, "hypothesis_conllu", hypothesis, where)};

    CategoryAssignment a;
    a.category = need_category(obj, where);
    const auto span = span_role_from_string(need_string(obj, "matched_span", where));
    if (!span) malformed(where, "unknown matched_span");
    a.matched_span = *span;
    a.ambiguous = obj.value("ambiguous", false);
    if (auto it = obj.find("all_matches"); it != obj.end() && it->is_array()) {
      for (const ojson& m : *it) {
        const auto role = span_role_from_string(need_string(m, "span", where));
        const auto cat = category_from_string(need_string(m, "category", where));
        if (!role || !cat) malformed(where, "bad all_matches entry");
        a.all_matches.push_back({*role, *cat});
      }
    }
    out.push_back(TaggedPair{std::move(pair), std::move(a)});
  });
  return out;
}

std::vector<CorpusRecord> read_records(const std::filesystem::path& file) {
  std::vector<CorpusRecord> out;
  for_each_line(file, [&](std::string_view line, const std::string& where) {
    try {
      out.push_back(record_from_json(line));
    } catch (const CorpusError& e) {
      malformed(where, e.what());
    }
  });
  return out;
}

void write_lines(const std::filesystem::path& file,
                 const std::vector<std::string>& lines) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw CorpusError(CorpusError::Kind::Io, "cannot write " + file.string());
  }
  for (const std::string& line : lines) out << line << '\n';
  if (!out) {
    throw CorpusError(CorpusError::Kind::Io, "write failed for " + file.string());
  }
}

}  // namespace negforge
