#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "negforge/negation.hpp"
#include "negforge/nli_pair.hpp"

namespace negforge {

struct CategoryStats {
  std::size_t extracted = 0;  // tagged originals
  std::size_t augmented = 0;  // variants added
  std::size_t train = 0;
  std::size_t test = 0;
  bool augmentation_applied = false;
  bool target_unreachable = false;

  friend bool operator==(const CategoryStats&, const CategoryStats&) = default;
};

struct StatsReport {
  std::array<CategoryStats, kCategoryCount> categories{};
  std::size_t ingested_lines = 0;
  std::size_t dropped_label = 0;
  std::size_t unparseable = 0;
  std::size_t negation_free = 0;
  std::size_t discarded_negated = 0;
  std::size_t nli_train = 0;
  std::size_t nli_dev = 0;
  std::array<std::size_t, 3> nli_dev_labels{};
  std::uint64_t seed = 42;
  std::string test_frac = "1/3";
  std::size_t dev_size = 9000;
  std::size_t augment_threshold = 1000;
  std::size_t augment_target = 1500;
  std::string wordnet_version = "none";

  friend bool operator==(const StatsReport&, const StatsReport&) = default;
};

std::string stats_to_json(const StatsReport& report);
StatsReport stats_from_json(std::string_view text);
// Aligned text table with one row per category plus corpus totals.
std::string stats_to_table(const StatsReport& report);

}  // namespace negforge
