#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace negforge {

// Base for every data or usage error the library reports. The CLI maps these
// to exit status 1; anything else escaping is treated as an internal error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConlluError : public Error {
 public:
  enum class Kind { MalformedLine, NoRoot, MultipleRoots, CyclicHeads };

  ConlluError(Kind kind, std::size_t line, int token, const std::string& what)
      : Error(what), kind_(kind), line_(line), token_(token) {}

  Kind kind() const noexcept { return kind_; }
  // 1-based line within the block, 0 when the problem is not tied to a line.
  std::size_t line() const noexcept { return line_; }
  // Offending token index, 0 when not applicable.
  int token() const noexcept { return token_; }

 private:
  Kind kind_;
  std::size_t line_;
  int token_;
};

class WordNetError : public Error {
 public:
  enum class Kind { MissingFile, MalformedIndexLine, MalformedDataLine };

  WordNetError(Kind kind, std::string file, std::size_t line,
               const std::string& what)
      : Error(what), kind_(kind), file_(std::move(file)), line_(line) {}

  Kind kind() const noexcept { return kind_; }
  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  Kind kind_;
  std::string file_;
  std::size_t line_;
};

class CorpusError : public Error {
 public:
  enum class Kind {
    MalformedRecord,
    DuplicateId,
    InsufficientLabel,
    InvalidArgument,
    Io,
  };

  CorpusError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace negforge
