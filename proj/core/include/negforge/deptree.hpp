#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace negforge {

// One syntactic word of a CoNLL-U sentence. Indices are 1-based; head 0 marks
// the root.
struct Token {
  int index = 0;
  std::string form;
  std::string lemma;  // lowercase
  std::string upos;
  int head = 0;
  std::string deprel;

  friend bool operator==(const Token&, const Token&) = default;
};

// Validated dependency tree over the integer-ID tokens of one sentence.
//
// Construction enforces: token i sits at position i-1, forms are non-empty,
// exactly one token has head 0, every head names a token, and following heads
// from any token reaches the root. Immutable afterwards.
class DepTree {
 public:
  DepTree(std::vector<Token> tokens, std::string text);

  const std::vector<Token>& tokens() const noexcept { return tokens_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  const std::string& text() const noexcept { return text_; }

  bool valid_index(int index) const noexcept {
    return index >= 1 && static_cast<std::size_t>(index) <= tokens_.size();
  }
  // Throws std::out_of_range for indices outside [1, size()].
  const Token& token(int index) const;

  const Token& root() const noexcept { return tokens_[root_ - 1]; }
  int root_index() const noexcept { return root_; }

  // Indices of the dependents of `index`, ascending (sentence order).
  std::span<const int> child_indices(int index) const;
  std::vector<Token> children(int index) const;

  // Serializes back to a 10-column CoNLL-U block with a "# text" comment.
  std::string to_conllu() const;

  friend bool operator==(const DepTree& a, const DepTree& b) {
    return a.text_ == b.text_ && a.tokens_ == b.tokens_;
  }

 private:
  std::vector<Token> tokens_;
  std::string text_;
  int root_ = 0;
  // CSR layout: dependents of token i are child_data_[child_offsets_[i] ..
  // child_offsets_[i + 1]).
  std::vector<std::size_t> child_offsets_;
  std::vector<int> child_data_;
};

// Parses a single CoNLL-U sentence block. Comment lines are ignored except
// "# text = ...", which becomes the tree text (otherwise forms are joined by
// spaces). Multiword ranges ("3-4") and empty nodes ("3.1") are skipped. A
// LEMMA of "_" falls back to the lowercased FORM.
//
// Throws ConlluError.
DepTree parse_conllu(std::string_view block);

}  // namespace negforge
