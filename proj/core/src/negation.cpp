#include "negforge/negation.hpp"

#include <bit>

#include "text.hpp"

namespace negforge {

namespace {

constexpr std::array<std::string_view, kCategoryCount> kSymbols = {
    "PO", "EX", "L", "PR", "I", "EP", "R"};
constexpr std::array<std::string_view, kCategoryCount> kNames = {
    "Possession", "Existence", "Labeling",  "Prohibition",
    "Inability",  "Epistemic", "Rejection"};

bool lemma_in(const Token& t,
              std::initializer_list<std::string_view> lemmas) noexcept {
  for (std::string_view l : lemmas) {
    if (t.lemma == l) return true;
  }
  return false;
}

bool form_in(const Token& t,
             std::initializer_list<std::string_view> forms) noexcept {
  for (std::string_view f : forms) {
    if (text::iequals(t.form, f)) return true;
  }
  return false;
}

bool upos_in(const Token& t,
             std::initializer_list<std::string_view> tags) noexcept {
  for (std::string_view tag : tags) {
    if (t.upos == tag) return true;
  }
  return false;
}

bool is_do(const Token& t) noexcept { return text::iequals(t.lemma, "do"); }

bool root_has_child(const DepTree& tree, auto&& pred) {
  for (int child : tree.child_indices(tree.root_index())) {
    if (pred(tree.token(child))) return true;
  }
  return false;
}

bool attached_to_root(const DepTree& tree, int neg) {
  return tree.token(neg).head == tree.root_index();
}

// Root lemmas that anchor PO, EP and R; a prohibition must not be rooted in
// any of them.
constexpr std::array<std::string_view, 6> kOtherCategoryRoots = {
    "like", "want", "have", "remember", "know", "think"};

}  // namespace

std::string_view to_string(NegCategory c) noexcept {
  return kSymbols[category_index(c)];
}

std::string_view category_name(NegCategory c) noexcept {
  return kNames[category_index(c)];
}

std::optional<NegCategory> category_from_string(std::string_view s) noexcept {
  for (NegCategory c : kCategories) {
    if (kSymbols[category_index(c)] == s) return c;
  }
  return std::nullopt;
}

std::string_view to_string(SpanRole role) noexcept {
  switch (role) {
    case SpanRole::Premise:
      return "premise";
    case SpanRole::Hypothesis:
      return "hypothesis";
    case SpanRole::Both:
      return "both";
  }
  return "premise";
}

std::optional<SpanRole> span_role_from_string(std::string_view s) noexcept {
  if (s == "premise") return SpanRole::Premise;
  if (s == "hypothesis") return SpanRole::Hypothesis;
  if (s == "both") return SpanRole::Both;
  return std::nullopt;
}

std::string_view to_string(PairOutcome outcome) noexcept {
  switch (outcome) {
    case PairOutcome::Tagged:
      return "tagged";
    case PairOutcome::NoNegation:
      return "no-negation";
    case PairOutcome::NegatedUnmatched:
      return "negated-unmatched";
  }
  return "tagged";
}

bool is_negation_marker(std::string_view form) noexcept {
  return text::iequals(form, "no") || text::iequals(form, "not") ||
         text::iequals(form, "n't") || text::iequals(form, "n’t");
}

std::vector<int> find_negation_markers(const DepTree& tree) {
  std::vector<int> out;
  for (const Token& t : tree.tokens()) {
    if (is_negation_marker(t.form)) out.push_back(t.index);
  }
  return out;
}

bool rule_possession(const DepTree& tree, int neg) {
  if (!tree.valid_index(neg)) return false;
  const Token& root = tree.root();
  const bool have_root =
      root.lemma == "have" || form_in(root, {"has", "had", "have"});
  return have_root && attached_to_root(tree, neg) &&
         root_has_child(tree, is_do);
}

bool rule_existence(const DepTree& tree, int neg) {
  if (!tree.valid_index(neg)) return false;
  bool there_before = false;
  for (int i = 1; i < neg; ++i) {
    if (text::iequals(tree.token(i).form, "there")) {
      there_before = true;
      break;
    }
  }
  if (!there_before) return false;
  const int head = tree.token(neg).head;
  return head != 0 &&
         upos_in(tree.token(head), {"NOUN", "PROPN", "DET", "ADV"});
}

bool rule_labeling(const DepTree& tree, int neg) {
  if (!tree.valid_index(neg)) return false;
  return form_in(tree.token(1), {"that", "it"}) &&
         upos_in(tree.root(), {"NOUN", "PROPN"}) &&
         root_has_child(tree, [](const Token& t) {
           return form_in(t, {"is", "'s", "’s"});
         });
}

bool rule_prohibition(const DepTree& tree, int neg) {
  if (!tree.valid_index(neg) || neg < 2) return false;
  if (!is_do(tree.token(neg - 1))) return false;
  if (root_has_child(tree, [](const Token& t) {
        return t.deprel.find("subj") != std::string::npos;
      })) {
    return false;
  }
  const std::string& root_lemma = tree.root().lemma;
  for (std::string_view excluded : kOtherCategoryRoots) {
    if (root_lemma == excluded) return false;
  }
  return true;
}

bool rule_inability(const DepTree& tree, int neg) {
  if (!tree.valid_index(neg) || neg < 2) return false;
  return attached_to_root(tree, neg) &&
         form_in(tree.token(neg - 1), {"can", "could"});
}

bool rule_epistemic(const DepTree& tree, int neg) {
  if (!tree.valid_index(neg)) return false;
  return lemma_in(tree.root(), {"remember", "know", "think"}) &&
         root_has_child(tree, is_do);
}

bool rule_rejection(const DepTree& tree, int neg) {
  if (!tree.valid_index(neg)) return false;
  return lemma_in(tree.root(), {"like", "want"}) &&
         attached_to_root(tree, neg);
}

bool rule_matches(NegCategory c, const DepTree& tree, int neg) {
  switch (c) {
    case NegCategory::PO:
      return rule_possession(tree, neg);
    case NegCategory::EX:
      return rule_existence(tree, neg);
    case NegCategory::L:
      return rule_labeling(tree, neg);
    case NegCategory::PR:
      return rule_prohibition(tree, neg);
    case NegCategory::I:
      return rule_inability(tree, neg);
    case NegCategory::EP:
      return rule_epistemic(tree, neg);
    case NegCategory::R:
      return rule_rejection(tree, neg);
  }
  return false;
}

std::size_t CategorySet::size() const noexcept {
  return static_cast<std::size_t>(std::popcount(bits_));
}

std::optional<NegCategory> CategorySet::first() const noexcept {
  if (bits_ == 0) return std::nullopt;
  return static_cast<NegCategory>(std::countr_zero(bits_));
}

CategorySet fired_categories(const DepTree& tree) {
  CategorySet fired;
  const std::vector<int> markers = find_negation_markers(tree);
  if (markers.empty()) return fired;
  for (NegCategory c : kCategories) {
    for (int neg : markers) {
      if (rule_matches(c, tree, neg)) {
        fired.insert(c);
        break;
      }
    }
  }
  return fired;
}

std::optional<NegCategory> classify_span(const DepTree& tree) {
  const std::vector<int> markers = find_negation_markers(tree);
  if (markers.empty()) return std::nullopt;
  for (NegCategory c : kCategories) {
    for (int neg : markers) {
      if (rule_matches(c, tree, neg)) return c;
    }
  }
  return std::nullopt;
}

PairClassification assign_pair(const DepTree& premise,
                               const DepTree& hypothesis) {
  const CategorySet in_premise = fired_categories(premise);
  const CategorySet in_hypothesis = fired_categories(hypothesis);

  PairClassification result;
  CategorySet any = in_premise;
  any |= in_hypothesis;
  if (any.empty()) {
    const bool negated = !find_negation_markers(premise).empty() ||
                         !find_negation_markers(hypothesis).empty();
    result.outcome =
        negated ? PairOutcome::NegatedUnmatched : PairOutcome::NoNegation;
    return result;
  }

  CategoryAssignment a;
  for (NegCategory c : kCategories) {
    if (in_premise.contains(c)) a.all_matches.push_back({SpanRole::Premise, c});
  }
  for (NegCategory c : kCategories) {
    if (in_hypothesis.contains(c)) {
      a.all_matches.push_back({SpanRole::Hypothesis, c});
    }
  }
  a.category = *any.first();
  const bool p = in_premise.contains(a.category);
  const bool h = in_hypothesis.contains(a.category);
  a.matched_span = p && h ? SpanRole::Both
                   : p    ? SpanRole::Premise
                          : SpanRole::Hypothesis;
  a.ambiguous = any.size() >= 2;

  result.outcome = PairOutcome::Tagged;
  result.assignment = std::move(a);
  return result;
}

PairClassification assign_pair(const ParsedPair& pair) {
  return assign_pair(pair.premise_tree, pair.hypothesis_tree);
}

}  // namespace negforge
