#include "doctest.h"

#include <sstream>

#include "json.hpp"
#include "negforge/corpus.hpp"
#include "negforge/corpus_io.hpp"
#include "negforge/error.hpp"
#include "test_support.hpp"

using namespace negforge;
using negforge::testing::fixture_dir;
using negforge::testing::fixture_tree;
using negforge::testing::make_pair;
using negforge::testing::golden_pair;
using negforge::testing::TempDir;
using negforge::testing::write_file;
using Json = nlohmann::ordered_json;

namespace {

Json pair_json(const ParsedPair& p) { return Json::parse(parsed_pair_to_json(p)); }

IngestResult ingest_text(const std::string& text) {
  std::istringstream in(text);
  IngestResult r;
  ingest_stream(in, "mem", r);
  return r;
}

CorpusError::Kind ingest_error(const std::string& text) {
  try {
    ingest_text(text);
  } catch (const CorpusError& e) {
    return e.kind();
  }
  FAIL("no CorpusError thrown");
  return CorpusError::Kind::Io;
}

ParsedPair free_pair(int n, NliLabel label = NliLabel::Entailment) {
  const std::string k = std::to_string(n);
  return make_pair("free-" + k, label, fixture_tree("extra/free" + k + "_premise"),
                   fixture_tree("extra/free" + k + "_hypothesis"));
}

}  // namespace

TEST_CASE("ingest empty input") {
  const IngestResult r = ingest_text("");
  CHECK(r.pairs.empty());
  CHECK(r.stats.lines == 0);
  const IngestResult blank = ingest_text("\n\n");
  CHECK(blank.pairs.empty());
  CHECK(blank.stats.lines == 0);
}

TEST_CASE("ingest drops records without a gold label") {
  Json a = pair_json(free_pair(1));
  Json b = pair_json(free_pair(2));
  Json c = pair_json(free_pair(3));
  b["id"] = "free-2b";
  c["label"] = "-";
  const IngestResult r = ingest_text(a.dump() + "\n" + b.dump() + "\n" + c.dump() + "\n");
  REQUIRE(r.pairs.size() == 2);
  CHECK(r.stats.lines == 3);
  CHECK(r.stats.dropped_label == 1);
  CHECK(r.pairs[0].id == "free-1");
  CHECK(r.pairs[1].id == "free-2b");

  Json missing = pair_json(free_pair(4));
  missing.erase("label");
  Json null_label = pair_json(free_pair(5));
  null_label["label"] = nullptr;
  const IngestResult r2 = ingest_text(missing.dump() + "\n" + null_label.dump());
  CHECK(r2.pairs.empty());
  CHECK(r2.stats.dropped_label == 2);
}

TEST_CASE("ingest round-trips a parsed pair") {
  const ParsedPair p = golden_pair("EP");
  const IngestResult r = ingest_text(parsed_pair_to_json(p));
  REQUIRE(r.pairs.size() == 1);
  CHECK(r.pairs[0].premise_tree == p.premise_tree);
  CHECK(r.pairs[0].hypothesis_tree == p.hypothesis_tree);
  CHECK(r.pairs[0].premise == p.premise);
  CHECK(r.pairs[0].label == p.label);
}

TEST_CASE("ingest counts unparseable placeholders") {
  const IngestResult r = ingest_text(
      R"({"id": "u1", "source": "s", "unparseable": true})" "\n" +
      pair_json(free_pair(1)).dump());
  CHECK(r.pairs.size() == 1);
  CHECK(r.stats.unparseable == 1);
  CHECK(r.stats.lines == 2);
}

TEST_CASE("ingest rejects malformed records") {
  using K = CorpusError::Kind;
  CHECK(ingest_error("not json") == K::MalformedRecord);
  CHECK(ingest_error("[1, 2]") == K::MalformedRecord);

  Json no_tree = pair_json(free_pair(1));
  no_tree.erase("premise_conllu");
  CHECK(ingest_error(no_tree.dump()) == K::MalformedRecord);

  Json bad_label = pair_json(free_pair(1));
  bad_label["label"] = "maybe";
  CHECK(ingest_error(bad_label.dump()) == K::MalformedRecord);

  Json bad_tree = pair_json(free_pair(1));
  bad_tree["hypothesis_conllu"] = "1\tx\tx\tNOUN\t_\t_\t1\troot\t_\t_\n";
  CHECK(ingest_error(bad_tree.dump()) == K::MalformedRecord);

  Json mismatch = pair_json(free_pair(1));
  mismatch["premise"] = "Something else entirely.";
  CHECK(ingest_error(mismatch.dump()) == K::MalformedRecord);

  const std::string line = pair_json(free_pair(1)).dump();
  CHECK(ingest_error(line + "\n" + line) == K::DuplicateId);
}

TEST_CASE("ingest error messages name the line") {
  const std::string good = pair_json(free_pair(1)).dump();
  try {
    ingest_text(good + "\n{}\n");
    FAIL("expected error");
  } catch (const CorpusError& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}

TEST_CASE("ingest files") {
  TempDir dir;
  write_file(dir / "a.jsonl", pair_json(free_pair(1)).dump() + "\n");
  write_file(dir / "b.jsonl", pair_json(free_pair(2)).dump() + "\n");
  const std::vector<std::filesystem::path> files{dir / "a.jsonl", dir / "b.jsonl"};
  const IngestResult r = ingest_pairs(files);
  CHECK(r.pairs.size() == 2);

  const std::vector<std::filesystem::path> dup{dir / "a.jsonl", dir / "a.jsonl"};
  CHECK_THROWS_AS(ingest_pairs(dup), CorpusError);

  const std::vector<std::filesystem::path> missing{dir / "nope.jsonl"};
  try {
    ingest_pairs(missing);
    FAIL("expected error");
  } catch (const CorpusError& e) {
    CHECK(e.kind() == CorpusError::Kind::Io);
    CHECK(std::string(e.what()).find("nope.jsonl") != std::string::npos);
  }
}

TEST_CASE("bundled corpus buckets") {
  const std::vector<std::filesystem::path> files{fixture_dir() / "corpus.jsonl"};
  IngestResult r = ingest_pairs(files);
  CHECK(r.stats.lines == 17);
  CHECK(r.stats.dropped_label == 1);
  CHECK(r.stats.unparseable == 1);
  REQUIRE(r.pairs.size() == 15);

  const std::size_t lines = r.stats.lines;
  const IngestStats stats = r.stats;
  const TaggedCorpus t = tag_corpus(std::move(r.pairs));
  CHECK(t.tagged.size() == 8);
  CHECK(t.negation_free.size() == 6);
  REQUIRE(t.negated_unmatched.size() == 1);
  CHECK(t.negated_unmatched[0].id == "x-unmatched");

  const std::vector<std::string> tagged_ids{"g-PO", "g-EX", "g-L", "g-PR",
                                            "g-I", "g-EP", "g-R", "x-pr-need"};
  for (std::size_t i = 0; i < t.tagged.size(); ++i) {
    CHECK(t.tagged[i].pair.id == tagged_ids[i]);
  }
  const std::vector<NegCategory> cats{NegCategory::PO,  NegCategory::EX,
                                      NegCategory::L,    NegCategory::PR,
                                      NegCategory::I,   NegCategory::EP,
                                      NegCategory::R,   NegCategory::PR};
  for (std::size_t i = 0; i < t.tagged.size(); ++i) {
    CHECK(t.tagged[i].assignment.category == cats[i]);
  }
  bool never_free = false;
  for (const auto& p : t.negation_free) never_free |= p.id == "x-never";
  CHECK(never_free);

  // Every non-blank line lands in exactly one bucket.
  CHECK(lines == t.tagged.size() + t.negation_free.size() +
                     t.negated_unmatched.size() + stats.dropped_label +
                     stats.unparseable);
}

TEST_CASE("tagging is independent of thread count") {
  std::vector<ParsedPair> pairs;
  for (int copy = 0; copy < 40; ++copy) {
    for (const char* c : {"PO", "EX", "L", "PR", "I", "EP", "R"}) {
      ParsedPair p = golden_pair(c);
      p.id += "-" + std::to_string(copy);
      pairs.push_back(std::move(p));
    }
    ParsedPair f = free_pair(1 + copy % 5);
    f.id += "-" + std::to_string(copy);
    pairs.push_back(std::move(f));
  }
  const TaggedCorpus one = tag_corpus(pairs, 1);
  for (unsigned threads : {2u, 3u, 8u, 64u, 1000u}) {
    const TaggedCorpus many = tag_corpus(pairs, threads);
    REQUIRE(many.tagged.size() == one.tagged.size());
    for (std::size_t i = 0; i < one.tagged.size(); ++i) {
      CHECK(many.tagged[i].pair.id == one.tagged[i].pair.id);
      CHECK(many.tagged[i].assignment == one.tagged[i].assignment);
    }
    REQUIRE(many.negation_free.size() == one.negation_free.size());
    for (std::size_t i = 0; i < one.negation_free.size(); ++i) {
      CHECK(many.negation_free[i].id == one.negation_free[i].id);
    }
  }
  CHECK(tag_corpus({}, 4).tagged.empty());
}

TEST_CASE("records") {
  const ParsedPair p = golden_pair("L");
  const PairClassification c = assign_pair(p);
  REQUIRE(c.assignment.has_value());
  const CorpusRecord r = to_record(TaggedPair{p, *c.assignment});
  CHECK(r.id == "g-L");
  CHECK(r.source_id == "g-L");
  CHECK(r.category == NegCategory::L);
  CHECK(r.matched_span == SpanRole::Hypothesis);
  CHECK_FALSE(r.augmented);
  CHECK_FALSE(r.synonym_used.has_value());

  const CorpusRecord f = to_record(free_pair(2, NliLabel::Contradiction));
  CHECK_FALSE(f.category.has_value());
  CHECK(f.label == NliLabel::Contradiction);

  for (std::string_view split : {"train", "test"}) {
    const std::string line = record_to_json(r, split);
    CHECK(line.find('\n') == std::string::npos);
    CHECK(record_from_json(line) == r);
    const Json j = Json::parse(line);
    CHECK(j["split"] == split);
    CHECK(j["category"] == "L");
  }
  CHECK(record_from_json(record_to_json(f, "nli_train")) == f);
}

TEST_CASE("tagged pair files round-trip") {
  TempDir dir;
  std::vector<std::string> lines;
  std::vector<TaggedPair> in;
  for (const char* cat : {"PO", "EP", "R"}) {
    ParsedPair p = golden_pair(cat);
    const PairClassification c = assign_pair(p);
    REQUIRE(c.assignment.has_value());
    in.push_back(TaggedPair{p, *c.assignment});
    lines.push_back(tagged_pair_to_json(in.back()));
  }
  write_lines(dir / "tagged.jsonl", lines);
  const std::vector<TaggedPair> out = read_tagged_pairs(dir / "tagged.jsonl");
  REQUIRE(out.size() == in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    CHECK(out[i].pair.id == in[i].pair.id);
    CHECK(out[i].pair.premise_tree == in[i].pair.premise_tree);
    CHECK(out[i].assignment == in[i].assignment);
  }
  const std::string body = negforge::testing::read_file(dir / "tagged.jsonl");
  CHECK(body.back() == '\n');
  CHECK(body.find('\r') == std::string::npos);
}
