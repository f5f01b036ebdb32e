#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "negforge/corpus.hpp"
#include "negforge/error.hpp"
#include "negforge/negation.hpp"

namespace negforge {

// Exact rational in (0, 1) so ceil(frac * n) has no rounding slack.
struct Fraction {
  std::uint64_t num = 1;
  std::uint64_t den = 3;

  // Accepts "a/b" or a decimal such as "0.25". Throws CorpusError
  // (InvalidArgument) unless 0 < value < 1.
  static Fraction parse(std::string_view text);

  std::size_t ceil_of(std::size_t n) const noexcept;
  std::string to_string() const;

  friend bool operator==(const Fraction&, const Fraction&) = default;
};

// Stream-separated pseudorandom source: mt19937_64 seeded through
// std::seed_seq{seed_lo, seed_hi, stream}. Bounded draws use rejection
// sampling and shuffles are Fisher-Yates from the back, so sequences are
// identical on every conforming standard library.
class SeededRng {
 public:
  SeededRng(std::uint64_t seed, std::uint32_t stream);

  // Uniform in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  // k distinct indices from [0, n), ascending.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

// Stream ids keep each stage's draws independent of the others.
namespace rng_stream {
inline constexpr std::uint32_t kSplit = 100;
inline constexpr std::uint32_t kDev = 200;
inline constexpr std::uint32_t kUndersample = 300;
}  // namespace rng_stream

struct CategorySplit {
  std::vector<CorpusRecord> train;
  std::vector<CorpusRecord> test;
};

using DiagnosticSplits = std::array<CategorySplit, kCategoryCount>;

// Per category, groups records by source_id, shuffles the groups and moves
// whole groups to test until it holds at least ceil(test_frac * N) records.
// Records without a category are rejected (CorpusError InvalidArgument).
DiagnosticSplits split_diagnostics(std::span<const CorpusRecord> records,
                                   Fraction test_frac, std::uint64_t seed);

struct DevCarve {
  std::vector<CorpusRecord> nli_train;
  std::vector<CorpusRecord> nli_dev;
};

// Samples dev_size / 3 records per label without replacement. Both outputs
// keep input order. Throws CorpusError: InvalidArgument when dev_size is not
// divisible by 3, InsufficientLabel when a label pool is too small.
DevCarve carve_dev(std::vector<CorpusRecord> pool, std::size_t dev_size,
                   std::uint64_t seed);

// Reduces every set to the size of the smallest one, keeping input order of
// the retained items. The smallest set is returned unchanged. Throws
// CorpusError (InvalidArgument) on an empty map or an empty set.
template <class T>
std::map<NegCategory, std::vector<T>> undersample(
    const std::map<NegCategory, std::vector<T>>& sets, std::uint64_t seed) {
  if (sets.empty()) {
    throw CorpusError(CorpusError::Kind::InvalidArgument,
                      "undersample: no diagnostic sets given");
  }
  std::size_t target = SIZE_MAX;
  for (const auto& [category, items] : sets) {
    if (items.empty()) {
      throw CorpusError(CorpusError::Kind::InvalidArgument,
                        "undersample: category " +
                            std::string(to_string(category)) + " is empty");
    }
    target = std::min(target, items.size());
  }
  std::map<NegCategory, std::vector<T>> out;
  for (const auto& [category, items] : sets) {
    if (items.size() == target) {
      out.emplace(category, items);
      continue;
    }
    SeededRng rng(seed, rng_stream::kUndersample +
                            static_cast<std::uint32_t>(category_index(category)));
    std::vector<T> kept;
    kept.reserve(target);
    for (std::size_t i : rng.sample_indices(items.size(), target)) {
      kept.push_back(items[i]);
    }
    out.emplace(category, std::move(kept));
  }
  return out;
}

}  // namespace negforge
