#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "negforge/error.hpp"
#include "negforge/split.hpp"

using namespace negforge;

namespace {

CorpusRecord rec(std::string id, std::string source_id, NegCategory c) {
  CorpusRecord r;
  r.id = std::move(id);
  r.source_id = std::move(source_id);
  r.source = "test";
  r.category = c;
  return r;
}

CorpusRecord free_rec(std::string id, NliLabel label) {
  CorpusRecord r;
  r.id = id;
  r.source_id = std::move(id);
  r.source = "test";
  r.label = label;
  return r;
}

std::vector<CorpusRecord> label_pool(std::size_t e, std::size_t n, std::size_t c) {
  std::vector<CorpusRecord> pool;
  const std::array<std::pair<NliLabel, std::size_t>, 3> sizes{
      {{NliLabel::Entailment, e}, {NliLabel::Neutral, n}, {NliLabel::Contradiction, c}}};
  for (std::size_t i = 0;; ++i) {
    bool any = false;
    for (const auto& [label, size] : sizes) {
      if (i < size) {
        pool.push_back(free_rec(std::string(to_string(label)) + std::to_string(i), label));
        any = true;
      }
    }
    if (!any) break;
  }
  return pool;
}

std::vector<std::string> ids(const std::vector<CorpusRecord>& v) {
  std::vector<std::string> out;
  for (const auto& r : v) out.push_back(r.id);
  return out;
}

bool is_subsequence(const std::vector<std::string>& sub,
                    const std::vector<std::string>& of) {
  auto it = of.begin();
  for (const auto& s : sub) {
    it = std::find(it, of.end(), s);
    if (it == of.end()) return false;
    ++it;
  }
  return true;
}

}  // namespace

TEST_CASE("fraction parsing") {
  CHECK(Fraction::parse("1/3") == Fraction{1, 3});
  CHECK(Fraction::parse("0.25").ceil_of(8) == 2);
  CHECK(Fraction::parse("0.2").ceil_of(10) == 2);
  CHECK(Fraction::parse("2/4").ceil_of(5) == 3);
  CHECK(Fraction{1, 3}.to_string() == "1/3");
  CHECK(Fraction{1, 3}.ceil_of(0) == 0);
  CHECK(Fraction{1, 3}.ceil_of(3) == 1);
  CHECK(Fraction{1, 3}.ceil_of(4) == 2);
  CHECK(Fraction{1, 3}.ceil_of(1053) == 351);
  for (const char* bad : {"0", "1", "1/1", "0/5", "3/2", "-0.5", "abc", "1/0", "", "0.5x"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Fraction::parse(bad), CorpusError);
  }
}

TEST_CASE("ceil_of matches exact integer arithmetic") {
  std::mt19937_64 gen(7);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t den = 2 + gen() % 1000;
    const std::uint64_t num = 1 + gen() % (den - 1);
    const std::size_t n = gen() % 1000000;
    CHECK(Fraction{num, den}.ceil_of(n) == (num * n + den - 1) / den);
  }
}

TEST_CASE("seeded rng") {
  SeededRng a(42, 1), b(42, 1), c(42, 2), d(43, 1);
  std::vector<std::uint64_t> va, vb, vc, vd;
  for (int i = 0; i < 50; ++i) {
    va.push_back(a.below(1000));
    vb.push_back(b.below(1000));
    vc.push_back(c.below(1000));
    vd.push_back(d.below(1000));
  }
  CHECK(va == vb);
  CHECK(va != vc);
  CHECK(va != vd);
  for (auto v : va) CHECK(v < 1000);

  SeededRng s(1, 1);
  const auto idx = s.sample_indices(100, 30);
  CHECK(idx.size() == 30);
  CHECK(std::is_sorted(idx.begin(), idx.end()));
  CHECK(std::set<std::size_t>(idx.begin(), idx.end()).size() == 30);
  CHECK(idx.back() < 100);
  CHECK(s.sample_indices(5, 5) == std::vector<std::size_t>{0, 1, 2, 3, 4});
  CHECK(s.sample_indices(5, 0).empty());
}

TEST_CASE("three singletons at one third") {
  const std::vector<CorpusRecord> recs{rec("a", "a", NegCategory::PO),
                                       rec("b", "b", NegCategory::PO),
                                       rec("c", "c", NegCategory::PO)};
  const DiagnosticSplits s = split_diagnostics(recs, Fraction{1, 3}, 42);
  const auto& po = s[category_index(NegCategory::PO)];
  CHECK(po.test.size() == 1);
  CHECK(po.train.size() == 2);
  for (NegCategory c : kCategories) {
    if (c == NegCategory::PO) continue;
    CHECK(s[category_index(c)].train.empty());
    CHECK(s[category_index(c)].test.empty());
  }
}

TEST_CASE("groups stay together") {
  // One source with four records (an original and three variants), one with two.
  std::vector<CorpusRecord> recs;
  for (int i = 0; i < 4; ++i) recs.push_back(rec("g1-" + std::to_string(i), "g1", NegCategory::L));
  for (int i = 0; i < 2; ++i) recs.push_back(rec("g2-" + std::to_string(i), "g2", NegCategory::L));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto& l = split_diagnostics(recs, Fraction{1, 3}, seed)[category_index(NegCategory::L)];
    // ceil(6 / 3) = 2: either g2 alone, or g1 (4 records) alone.
    CHECK((l.test.size() == 2 || l.test.size() == 4));
    std::set<std::string> test_groups, train_groups;
    for (const auto& r : l.test) test_groups.insert(r.source_id);
    for (const auto& r : l.train) train_groups.insert(r.source_id);
    CHECK(test_groups.size() == 1);
    CHECK(train_groups.size() == 1);
    CHECK(*test_groups.begin() != *train_groups.begin());
  }
}

TEST_CASE("split is deterministic and seed dependent") {
  std::vector<CorpusRecord> recs;
  for (int i = 0; i < 60; ++i) {
    recs.push_back(rec("r" + std::to_string(i), "s" + std::to_string(i),
                       kCategories[static_cast<std::size_t>(i) % kCategoryCount]));
  }
  const DiagnosticSplits a = split_diagnostics(recs, Fraction{1, 3}, 42);
  const DiagnosticSplits b = split_diagnostics(recs, Fraction{1, 3}, 42);
  const DiagnosticSplits c = split_diagnostics(recs, Fraction{1, 3}, 43);
  bool differs = false;
  for (NegCategory cat : kCategories) {
    const auto i = category_index(cat);
    CHECK(a[i].train == b[i].train);
    CHECK(a[i].test == b[i].test);
    differs |= ids(a[i].test) != ids(c[i].test);
  }
  CHECK(differs);
}

TEST_CASE("split rejects uncategorized records") {
  std::vector<CorpusRecord> recs{free_rec("x", NliLabel::Neutral)};
  CHECK_THROWS_AS(split_diagnostics(recs, Fraction{1, 3}, 1), CorpusError);
  CHECK_NOTHROW(split_diagnostics({}, Fraction{1, 3}, 1));
}

TEST_CASE("split properties on random corpora") {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<CorpusRecord> recs;
    std::map<NegCategory, std::map<std::string, std::size_t>> group_sizes;
    const int groups = 1 + static_cast<int>(gen() % 40);
    for (int g = 0; g < groups; ++g) {
      const NegCategory cat = kCategories[gen() % kCategoryCount];
      const int members = 1 + static_cast<int>(gen() % 5);
      const std::string sid = "src" + std::to_string(g);
      for (int m = 0; m < members; ++m) {
        recs.push_back(rec(sid + "~" + std::to_string(m), sid, cat));
        ++group_sizes[cat][sid];
      }
    }
    std::shuffle(recs.begin(), recs.end(), gen);
    const std::uint64_t den = 2 + gen() % 9;
    const Fraction frac{1 + gen() % (den - 1), den};
    const DiagnosticSplits s = split_diagnostics(recs, frac, gen());

    std::size_t total = 0;
    for (NegCategory cat : kCategories) {
      const auto& sp = s[category_index(cat)];
      const std::size_t n = sp.train.size() + sp.test.size();
      total += n;
      std::size_t expected_n = 0, max_group = 0;
      for (const auto& [sid, size] : group_sizes[cat]) {
        expected_n += size;
        max_group = std::max(max_group, size);
      }
      CHECK(n == expected_n);
      const std::size_t want = frac.ceil_of(n);
      CHECK(sp.test.size() >= want);
      if (n > 0) CHECK(sp.test.size() - want < max_group);

      std::set<std::string> train_src, test_src;
      for (const auto& r : sp.train) {
        CHECK(r.category == cat);
        train_src.insert(r.source_id);
      }
      for (const auto& r : sp.test) {
        CHECK(r.category == cat);
        test_src.insert(r.source_id);
      }
      for (const auto& sid : test_src) CHECK(train_src.count(sid) == 0);

      // Each side keeps input order.
      std::vector<std::string> input_ids;
      for (const auto& r : recs) {
        if (r.category == cat) input_ids.push_back(r.id);
      }
      CHECK(is_subsequence(ids(sp.train), input_ids));
      CHECK(is_subsequence(ids(sp.test), input_ids));
    }
    CHECK(total == recs.size());
  }
}

TEST_CASE("dev carve balances labels") {
  const DevCarve d = carve_dev(label_pool(3500, 3200, 3000), 9000, 42);
  std::map<NliLabel, std::size_t> dev_counts, train_counts;
  for (const auto& r : d.nli_dev) ++dev_counts[r.label];
  for (const auto& r : d.nli_train) ++train_counts[r.label];
  CHECK(dev_counts[NliLabel::Entailment] == 3000);
  CHECK(dev_counts[NliLabel::Neutral] == 3000);
  CHECK(dev_counts[NliLabel::Contradiction] == 3000);
  CHECK(train_counts[NliLabel::Entailment] == 500);
  CHECK(train_counts[NliLabel::Neutral] == 200);
  CHECK(train_counts[NliLabel::Contradiction] == 0);

  std::set<std::string> dev_ids;
  for (const auto& r : d.nli_dev) dev_ids.insert(r.id);
  for (const auto& r : d.nli_train) CHECK(dev_ids.count(r.id) == 0);

  const DevCarve again = carve_dev(label_pool(3500, 3200, 3000), 9000, 42);
  CHECK(again.nli_dev == d.nli_dev);
  CHECK(again.nli_train == d.nli_train);
}

TEST_CASE("dev carve keeps input order") {
  const auto pool = label_pool(20, 20, 20);
  const DevCarve d = carve_dev(pool, 15, 3);
  CHECK(d.nli_dev.size() == 15);
  CHECK(d.nli_train.size() == 45);
  CHECK(is_subsequence(ids(d.nli_dev), ids(pool)));
  CHECK(is_subsequence(ids(d.nli_train), ids(pool)));
}

TEST_CASE("dev carve edge cases") {
  const DevCarve tiny = carve_dev(label_pool(1, 1, 1), 3, 42);
  CHECK(tiny.nli_dev.size() == 3);
  CHECK(tiny.nli_train.empty());

  const DevCarve none = carve_dev(label_pool(2, 2, 2), 0, 42);
  CHECK(none.nli_dev.empty());
  CHECK(none.nli_train.size() == 6);

  try {
    carve_dev(label_pool(3000, 3000, 2999), 9000, 42);
    FAIL("expected InsufficientLabel");
  } catch (const CorpusError& e) {
    CHECK(e.kind() == CorpusError::Kind::InsufficientLabel);
    const std::string msg = e.what();
    CHECK(msg.find("contradiction") != std::string::npos);
    CHECK(msg.find("2999") != std::string::npos);
  }
  try {
    carve_dev(label_pool(10, 10, 10), 10, 42);
    FAIL("expected InvalidArgument");
  } catch (const CorpusError& e) {
    CHECK(e.kind() == CorpusError::Kind::InvalidArgument);
  }
}

TEST_CASE("undersample") {
  std::map<NegCategory, std::vector<int>> sets;
  for (int i = 0; i < 10; ++i) sets[NegCategory::PO].push_back(i);
  sets[NegCategory::R] = {100, 101, 102, 103};
  const auto out = undersample(sets, 42);
  CHECK(out.at(NegCategory::PO).size() == 4);
  CHECK(out.at(NegCategory::R) == sets[NegCategory::R]);
  CHECK(std::is_sorted(out.at(NegCategory::PO).begin(), out.at(NegCategory::PO).end()));
  CHECK(undersample(sets, 42) == out);

  std::map<NegCategory, std::vector<int>> equal{{NegCategory::L, {1, 2}}, {NegCategory::I, {3, 4}}};
  CHECK(undersample(equal, 9) == equal);

  CHECK_THROWS_AS(undersample(std::map<NegCategory, std::vector<int>>{}, 1), CorpusError);
  std::map<NegCategory, std::vector<int>> with_empty{{NegCategory::L, {1}}, {NegCategory::I, {}}};
  CHECK_THROWS_AS(undersample(with_empty, 1), CorpusError);
}

TEST_CASE("undersample the published train sizes") {
  const std::map<NegCategory, std::size_t> sizes{
      {NegCategory::PO, 1053}, {NegCategory::EX, 5528}, {NegCategory::L, 2241},
      {NegCategory::PR, 814},  {NegCategory::I, 1384},  {NegCategory::EP, 1903},
      {NegCategory::R, 1737}};
  std::map<NegCategory, std::vector<std::size_t>> sets;
  for (const auto& [c, n] : sizes) {
    for (std::size_t i = 0; i < n; ++i) sets[c].push_back(i);
  }
  const auto out = undersample(sets, 42);
  for (const auto& [c, v] : out) {
    CAPTURE(to_string(c));
    CHECK(v.size() == 814);
    CHECK(std::set<std::size_t>(v.begin(), v.end()).size() == 814);
  }
  CHECK(out.at(NegCategory::PR) == sets.at(NegCategory::PR));
}
