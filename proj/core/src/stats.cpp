#include "negforge/stats.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "negforge/error.hpp"

namespace negforge {

using ojson = nlohmann::ordered_json;

std::string stats_to_json(const StatsReport& r) {
  ojson j;
  j["seed"] = r.seed;
  j["test_frac"] = r.test_frac;
  j["dev_size"] = r.dev_size;
  j["augment_threshold"] = r.augment_threshold;
  j["augment_target"] = r.augment_target;
  j["wordnet_version"] = r.wordnet_version;
  j["ingested_lines"] = r.ingested_lines;
  j["dropped_label"] = r.dropped_label;
  j["unparseable"] = r.unparseable;
  j["negation_free"] = r.negation_free;
  j["discarded_negated"] = r.discarded_negated;
  j["nli_train"] = r.nli_train;
  j["nli_dev"] = r.nli_dev;
  ojson labels;
  for (NliLabel l : kLabels) {
    labels[std::string(to_string(l))] = r.nli_dev_labels[static_cast<std::size_t>(l)];
  }
  j["nli_dev_labels"] = std::move(labels);
  ojson cats = ojson::array();
  for (NegCategory c : kCategories) {
    const CategoryStats& s = r.categories[category_index(c)];
    cats.push_back({{"category", std::string(to_string(c))},
                    {"name", std::string(category_name(c))},
                    {"extracted", s.extracted},
                    {"augmented", s.augmented},
                    {"train", s.train},
                    {"test", s.test},
                    {"augmentation_applied", s.augmentation_applied},
                    {"target_unreachable", s.target_unreachable}});
  }
  j["categories"] = std::move(cats);
  return j.dump(2) + "\n";
}

StatsReport stats_from_json(std::string_view text) {
  StatsReport r;
  try {
    const ojson j = ojson::parse(text);
    r.seed = j.at("seed").get<std::uint64_t>();
    r.test_frac = j.at("test_frac").get<std::string>();
    r.dev_size = j.at("dev_size").get<std::size_t>();
    r.augment_threshold = j.at("augment_threshold").get<std::size_t>();
    r.augment_target = j.at("augment_target").get<std::size_t>();
    r.wordnet_version = j.at("wordnet_version").get<std::string>();
    r.ingested_lines = j.at("ingested_lines").get<std::size_t>();
    r.dropped_label = j.at("dropped_label").get<std::size_t>();
    r.unparseable = j.at("unparseable").get<std::size_t>();
    r.negation_free = j.at("negation_free").get<std::size_t>();
    r.discarded_negated = j.at("discarded_negated").get<std::size_t>();
    r.nli_train = j.at("nli_train").get<std::size_t>();
    r.nli_dev = j.at("nli_dev").get<std::size_t>();
    for (NliLabel l : kLabels) {
      r.nli_dev_labels[static_cast<std::size_t>(l)] =
          j.at("nli_dev_labels").at(std::string(to_string(l))).get<std::size_t>();
    }
    for (const ojson& entry : j.at("categories")) {
      const auto c = category_from_string(entry.at("category").get<std::string>());
      if (!c) throw CorpusError(CorpusError::Kind::MalformedRecord, "unknown category");
      CategoryStats& s = r.categories[category_index(*c)];
      s.extracted = entry.at("extracted").get<std::size_t>();
      s.augmented = entry.at("augmented").get<std::size_t>();
      s.train = entry.at("train").get<std::size_t>();
      s.test = entry.at("test").get<std::size_t>();
      s.augmentation_applied = entry.at("augmentation_applied").get<bool>();
      s.target_unreachable = entry.at("target_unreachable").get<bool>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw CorpusError(CorpusError::Kind::MalformedRecord,
                      std::string("stats.json: ") + e.what());
  }
  return r;
}

std::string stats_to_table(const StatsReport& r) {
  std::ostringstream out;
  const auto row = [&out](std::string_view name, auto extracted, auto augmented,
                          auto train, auto test, auto total,
                          std::string_view note) {
    out << std::left << std::setw(18) << name << std::right << std::setw(10)
        << extracted << std::setw(10) << augmented << std::setw(8) << train
        << std::setw(8) << test << std::setw(8) << total;
    if (!note.empty()) out << "  " << note;
    out << '\n';
  };

  row("Category", "Extracted", "Augmented", "# Train", "# Test", "Total", "");
  std::size_t sum[5] = {0, 0, 0, 0, 0};
  for (NegCategory c : kCategories) {
    const CategoryStats& s = r.categories[category_index(c)];
    const std::string label =
        std::string(category_name(c)) + " (" + std::string(to_string(c)) + ")";
    row(label, s.extracted, s.augmented, s.train, s.test, s.train + s.test,
        s.target_unreachable ? "target unreachable" : "");
    sum[0] += s.extracted;
    sum[1] += s.augmented;
    sum[2] += s.train;
    sum[3] += s.test;
    sum[4] += s.train + s.test;
  }
  row("All categories", sum[0], sum[1], sum[2], sum[3], sum[4], "");
  out << '\n';
  out << "NLI_train           " << r.nli_train << '\n';
  out << "NLI_dev             " << r.nli_dev << " (";
  for (NliLabel l : kLabels) {
    if (l != NliLabel::Entailment) out << " / ";
    out << to_string(l) << ' ' << r.nli_dev_labels[static_cast<std::size_t>(l)];
  }
  out << ")\n";
  out << "ingested lines      " << r.ingested_lines << '\n';
  out << "negation-free       " << r.negation_free << '\n';
  out << "discarded negated   " << r.discarded_negated << '\n';
  out << "dropped labels      " << r.dropped_label << '\n';
  out << "unparseable         " << r.unparseable << '\n';
  out << "seed " << r.seed << ", test_frac " << r.test_frac << ", dev_size "
      << r.dev_size << ", augment threshold " << r.augment_threshold
      << " target " << r.augment_target << ", wordnet " << r.wordnet_version
      << '\n';
  return out.str();
}

}  // namespace negforge
