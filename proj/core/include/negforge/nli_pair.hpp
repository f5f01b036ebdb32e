#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "negforge/deptree.hpp"

namespace negforge {

enum class NliLabel : std::uint8_t { Entailment, Neutral, Contradiction };

inline constexpr std::array<NliLabel, 3> kLabels = {
    NliLabel::Entailment, NliLabel::Neutral, NliLabel::Contradiction};

std::string_view to_string(NliLabel label) noexcept;
std::optional<NliLabel> label_from_string(std::string_view s) noexcept;

// An NLI example with a dependency tree for each span. Tree texts equal the
// span strings.
struct ParsedPair {
  std::string id;
  std::string source;
  std::string premise;
  std::string hypothesis;
  NliLabel label = NliLabel::Neutral;
  DepTree premise_tree;
  DepTree hypothesis_tree;
};

}  // namespace negforge
