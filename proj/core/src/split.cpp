#include "negforge/split.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "text.hpp"

namespace negforge {

namespace {

[[noreturn]] void invalid(const std::string& why) {
  throw CorpusError(CorpusError::Kind::InvalidArgument, why);
}

}  // namespace

Fraction Fraction::parse(std::string_view input) {
  const std::string_view s = text::trim(input);
  unsigned long long num = 0;
  unsigned long long den = 0;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    if (!text::parse_uint(s.substr(0, slash), num) ||
        !text::parse_uint(s.substr(slash + 1), den)) {
      invalid("bad fraction '" + std::string(input) + "'");
    }
  } else {
    const auto dot = s.find('.');
    const std::string_view whole = s.substr(0, dot);
    const std::string_view decimals =
        dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    unsigned long long w = 0;
    if ((!whole.empty() && !text::parse_uint(whole, w)) || decimals.size() > 18 ||
        (whole.empty() && decimals.empty()) ||
        (!decimals.empty() && !text::parse_uint(decimals, num))) {
      invalid("bad fraction '" + std::string(input) + "'");
    }
    den = 1;
    for (std::size_t i = 0; i < decimals.size(); ++i) den *= 10;
    if (w != 0) invalid("fraction must lie strictly between 0 and 1");
  }
  if (den == 0 || num == 0 || num >= den) {
    invalid("fraction must lie strictly between 0 and 1, got '" +
            std::string(input) + "'");
  }
  const unsigned long long g = std::gcd(num, den);
  return Fraction{num / g, den / g};
}

std::size_t Fraction::ceil_of(std::size_t n) const noexcept {
  __extension__ using u128 = unsigned __int128;
  const u128 scaled = static_cast<u128>(n) * num + (den - 1);
  return static_cast<std::size_t>(scaled / den);
}

std::string Fraction::to_string() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

SeededRng::SeededRng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32), stream};
  engine_.seed(seq);
}

std::uint64_t SeededRng::below(std::uint64_t bound) {
  // 2^64 mod bound; draws under it would bias the modulo.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

std::vector<std::size_t> SeededRng::sample_indices(std::size_t n,
                                                   std::size_t k) {
  if (k > n) invalid("cannot sample " + std::to_string(k) + " of " +
                     std::to_string(n));
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

DiagnosticSplits split_diagnostics(std::span<const CorpusRecord> records,
                                   Fraction test_frac, std::uint64_t seed) {
  std::array<std::vector<const CorpusRecord*>, kCategoryCount> by_category;
  for (const CorpusRecord& r : records) {
    if (!r.category) invalid("record '" + r.id + "' has no category");
    by_category[category_index(*r.category)].push_back(&r);
  }

  DiagnosticSplits out;
  for (NegCategory c : kCategories) {
    const auto& members = by_category[category_index(c)];
    if (members.empty()) continue;

    // Groups in order of first appearance.
    std::unordered_map<std::string_view, std::size_t> group_of;
    std::vector<std::size_t> group_sizes;
    std::vector<std::size_t> member_group;
    member_group.reserve(members.size());
    for (const CorpusRecord* r : members) {
      auto [it, inserted] = group_of.emplace(r->source_id, group_sizes.size());
      if (inserted) group_sizes.push_back(0);
      ++group_sizes[it->second];
      member_group.push_back(it->second);
    }

    std::vector<std::size_t> order(group_sizes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    SeededRng rng(seed, rng_stream::kSplit +
                            static_cast<std::uint32_t>(category_index(c)));
    rng.shuffle(std::span<std::size_t>(order));

    const std::size_t target = test_frac.ceil_of(members.size());
    std::vector<bool> in_test(group_sizes.size(), false);
    std::size_t taken = 0;
    for (std::size_t g : order) {
      if (taken >= target) break;
      in_test[g] = true;
      taken += group_sizes[g];
    }

    CategorySplit& split = out[category_index(c)];
    for (std::size_t i = 0; i < members.size(); ++i) {
      (in_test[member_group[i]] ? split.test : split.train)
          .push_back(*members[i]);
    }
  }
  return out;
}

DevCarve carve_dev(std::vector<CorpusRecord> pool, std::size_t dev_size,
                   std::uint64_t seed) {
  if (dev_size % kLabels.size() != 0) {
    invalid("dev size " + std::to_string(dev_size) + " is not divisible by 3");
  }
  const std::size_t per_label = dev_size / kLabels.size();
  std::vector<bool> to_dev(pool.size(), false);
  for (NliLabel label : kLabels) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (pool[i].label == label) members.push_back(i);
    }
    if (members.size() < per_label) {
      throw CorpusError(CorpusError::Kind::InsufficientLabel,
                        "InsufficientLabel: label '" +
                            std::string(to_string(label)) + "' has " +
                            std::to_string(members.size()) +
                            " records, dev set needs " +
                            std::to_string(per_label));
    }
    SeededRng rng(seed, rng_stream::kDev + static_cast<std::uint32_t>(label));
    for (std::size_t k : rng.sample_indices(members.size(), per_label)) {
      to_dev[members[k]] = true;
    }
  }

  DevCarve out;
  out.nli_dev.reserve(dev_size);
  out.nli_train.reserve(pool.size() - dev_size);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    (to_dev[i] ? out.nli_dev : out.nli_train).push_back(std::move(pool[i]));
  }
  return out;
}

}  // namespace negforge
