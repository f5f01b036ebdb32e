#include "negforge/deptree.hpp"

#include <sstream>
#include <stdexcept>

#include "negforge/error.hpp"
#include "text.hpp"

namespace negforge {

namespace {

constexpr std::size_t kColumns = 10;

[[noreturn]] void fail(ConlluError::Kind kind, std::size_t line, int token,
                       const std::string& message) {
  std::string where;
  if (line > 0) where += "line " + std::to_string(line) + ": ";
  throw ConlluError(kind, line, token, where + message);
}

}  // namespace

DepTree::DepTree(std::vector<Token> tokens, std::string text)
    : tokens_(std::move(tokens)), text_(std::move(text)) {
  const int n = static_cast<int>(tokens_.size());
  if (n == 0) {
    fail(ConlluError::Kind::NoRoot, 0, 0, "sentence has no tokens");
  }
  for (int i = 0; i < n; ++i) {
    const Token& t = tokens_[i];
    if (t.index != i + 1) {
      fail(ConlluError::Kind::MalformedLine, 0, t.index,
           "token " + std::to_string(t.index) + " found at position " +
               std::to_string(i + 1));
    }
    if (t.form.empty()) {
      fail(ConlluError::Kind::MalformedLine, 0, t.index,
           "token " + std::to_string(t.index) + " has an empty form");
    }
    if (t.head < 0 || t.head > n) {
      fail(ConlluError::Kind::MalformedLine, 0, t.index,
           "token " + std::to_string(t.index) + " has head " +
               std::to_string(t.head) + " outside 0.." + std::to_string(n));
    }
    if (t.head == 0) {
      if (root_ != 0) {
        fail(ConlluError::Kind::MultipleRoots, 0, t.index,
             "tokens " + std::to_string(root_) + " and " +
                 std::to_string(t.index) + " both have head 0");
      }
      root_ = t.index;
    }
  }
  if (root_ == 0) {
    fail(ConlluError::Kind::NoRoot, 0, 0, "no token has head 0");
  }

  // 0 = unvisited, 1 = on the current path, 2 = reaches the root.
  std::vector<std::uint8_t> state(n + 1, 0);
  state[root_] = 2;
  std::vector<int> path;
  for (int start = 1; start <= n; ++start) {
    path.clear();
    int cur = start;
    while (state[cur] == 0) {
      state[cur] = 1;
      path.push_back(cur);
      cur = tokens_[cur - 1].head;
    }
    if (state[cur] == 1) {
      fail(ConlluError::Kind::CyclicHeads, 0, cur,
           "head chain from token " + std::to_string(start) +
               " cycles through token " + std::to_string(cur));
    }
    for (int idx : path) state[idx] = 2;
  }

  child_offsets_.assign(n + 2, 0);
  for (const Token& t : tokens_) ++child_offsets_[t.head + 1];
  for (int i = 1; i < n + 2; ++i) child_offsets_[i] += child_offsets_[i - 1];
  child_data_.resize(n);
  std::vector<std::size_t> fill(child_offsets_.begin(),
                                child_offsets_.end() - 1);
  for (const Token& t : tokens_) child_data_[fill[t.head]++] = t.index;
}

const Token& DepTree::token(int index) const {
  if (!valid_index(index)) {
    throw std::out_of_range("token index " + std::to_string(index) +
                            " out of range");
  }
  return tokens_[index - 1];
}

std::span<const int> DepTree::child_indices(int index) const {
  if (!valid_index(index)) return {};
  const std::size_t begin = child_offsets_[index];
  const std::size_t end = child_offsets_[index + 1];
  return std::span<const int>(child_data_).subspan(begin, end - begin);
}

std::vector<Token> DepTree::children(int index) const {
  std::vector<Token> out;
  for (int child : child_indices(index)) out.push_back(tokens_[child - 1]);
  return out;
}

std::string DepTree::to_conllu() const {
  std::ostringstream out;
  out << "# text = " << text_ << '\n';
  for (const Token& t : tokens_) {
    out << t.index << '\t' << t.form << '\t' << t.lemma << '\t' << t.upos
        << "\t_\t_\t" << t.head << '\t' << t.deprel << "\t_\t_\n";
  }
  return out.str();
}

DepTree parse_conllu(std::string_view block) {
  std::vector<Token> tokens;
  std::string text;
  bool have_text = false;
  std::size_t line_no = 0;

  for (std::string_view line : text::split(block, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view kText = "# text =";
      if (line.starts_with(kText)) {
        text = std::string(text::trim(line.substr(kText.size())));
        have_text = true;
      }
      continue;
    }

    auto cols = text::split(line, '\t');
    if (cols.size() != kColumns) {
      fail(ConlluError::Kind::MalformedLine, line_no, 0,
           "expected " + std::to_string(kColumns) + " tab-separated columns, got " +
               std::to_string(cols.size()));
    }
    const std::string_view id = cols[0];
    if (id.find('-') != std::string_view::npos ||
        id.find('.') != std::string_view::npos) {
      continue;  // multiword range or empty node
    }
    unsigned long long index = 0;
    if (!text::parse_uint(id, index) || index == 0 || index > 1'000'000) {
      fail(ConlluError::Kind::MalformedLine, line_no, 0,
           "non-numeric ID '" + std::string(id) + "'");
    }
    unsigned long long head = 0;
    if (!text::parse_uint(cols[6], head) || head > 1'000'000) {
      fail(ConlluError::Kind::MalformedLine, line_no, static_cast<int>(index),
           "non-numeric HEAD '" + std::string(cols[6]) + "'");
    }
    if (index != tokens.size() + 1) {
      fail(ConlluError::Kind::MalformedLine, line_no, static_cast<int>(index),
           "ID " + std::to_string(index) + " out of sequence");
    }
    if (head == index) {
      fail(ConlluError::Kind::CyclicHeads, line_no, static_cast<int>(index),
           "token " + std::to_string(index) + " is its own head");
    }
    if (cols[1].empty()) {
      fail(ConlluError::Kind::MalformedLine, line_no, static_cast<int>(index),
           "empty FORM");
    }

    Token t;
    t.index = static_cast<int>(index);
    t.form = std::string(cols[1]);
    t.lemma = (cols[2] == "_" || cols[2].empty()) ? text::lower(cols[1])
                                                  : text::lower(cols[2]);
    t.upos = std::string(cols[3]);
    t.head = static_cast<int>(head);
    t.deprel = std::string(cols[7]);
    tokens.push_back(std::move(t));
  }

  if (!have_text) {
    for (const Token& t : tokens) {
      if (!text.empty()) text.push_back(' ');
      text += t.form;
    }
  }
  return DepTree(std::move(tokens), std::move(text));
}

}  // namespace negforge
