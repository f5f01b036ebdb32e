#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "negforge/deptree.hpp"
#include "negforge/nli_pair.hpp"

namespace negforge {

// The seven developmental negation categories. Declaration order is the
// canonical precedence order used to break ties.
enum class NegCategory : std::uint8_t { PO, EX, L, PR, I, EP, R };

inline constexpr std::size_t kCategoryCount = 7;
inline constexpr std::array<NegCategory, kCategoryCount> kCategories = {
    NegCategory::PO, NegCategory::EX, NegCategory::L, NegCategory::PR,
    NegCategory::I,  NegCategory::EP, NegCategory::R};

constexpr std::size_t category_index(NegCategory c) noexcept {
  return static_cast<std::size_t>(c);
}

// Short symbol ("PO", "EX", ...).
std::string_view to_string(NegCategory c) noexcept;
// Long name ("Possession", ...).
std::string_view category_name(NegCategory c) noexcept;
std::optional<NegCategory> category_from_string(std::string_view s) noexcept;

enum class SpanRole : std::uint8_t { Premise, Hypothesis, Both };

std::string_view to_string(SpanRole role) noexcept;
std::optional<SpanRole> span_role_from_string(std::string_view s) noexcept;

// Case-insensitive membership in {"no", "not", "n't", "n’t"}.
bool is_negation_marker(std::string_view form) noexcept;

// Ascending indices of every marker token in the tree.
std::vector<int> find_negation_markers(const DepTree& tree);

// Category predicates. `neg` is the index of a marker token; out-of-range
// indices yield false. "X directly modifies Y" means X is a dependent of Y.
bool rule_possession(const DepTree& tree, int neg);
bool rule_existence(const DepTree& tree, int neg);
bool rule_labeling(const DepTree& tree, int neg);
bool rule_prohibition(const DepTree& tree, int neg);
bool rule_inability(const DepTree& tree, int neg);
bool rule_epistemic(const DepTree& tree, int neg);
bool rule_rejection(const DepTree& tree, int neg);

bool rule_matches(NegCategory c, const DepTree& tree, int neg);

// Bit set over NegCategory.
class CategorySet {
 public:
  constexpr CategorySet() = default;

  constexpr void insert(NegCategory c) noexcept {
    bits_ |= static_cast<std::uint8_t>(1u << category_index(c));
  }
  constexpr bool contains(NegCategory c) const noexcept {
    return (bits_ >> category_index(c)) & 1u;
  }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  std::size_t size() const noexcept;
  // Lowest category in precedence order, if any.
  std::optional<NegCategory> first() const noexcept;

  constexpr CategorySet& operator|=(CategorySet other) noexcept {
    bits_ |= other.bits_;
    return *this;
  }
  friend constexpr bool operator==(CategorySet, CategorySet) = default;

 private:
  std::uint8_t bits_ = 0;
};

// Every category whose rule fires for at least one marker.
CategorySet fired_categories(const DepTree& tree);

// First category in precedence order whose rule fires for any marker.
std::optional<NegCategory> classify_span(const DepTree& tree);

struct SpanMatch {
  SpanRole span;
  NegCategory category;

  friend bool operator==(const SpanMatch&, const SpanMatch&) = default;
};

struct CategoryAssignment {
  NegCategory category = NegCategory::PO;
  SpanRole matched_span = SpanRole::Premise;
  // Premise matches first, each span in precedence order.
  std::vector<SpanMatch> all_matches;
  bool ambiguous = false;

  friend bool operator==(const CategoryAssignment&,
                         const CategoryAssignment&) = default;
};

enum class PairOutcome : std::uint8_t { Tagged, NoNegation, NegatedUnmatched };

std::string_view to_string(PairOutcome outcome) noexcept;

struct PairClassification {
  PairOutcome outcome = PairOutcome::NoNegation;
  std::optional<CategoryAssignment> assignment;  // set iff outcome == Tagged
};

PairClassification assign_pair(const DepTree& premise,
                               const DepTree& hypothesis);
PairClassification assign_pair(const ParsedPair& pair);

struct TaggedPair {
  ParsedPair pair;
  CategoryAssignment assignment;
};

}  // namespace negforge
