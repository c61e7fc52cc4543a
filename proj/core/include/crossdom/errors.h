#ifndef CROSSDOM_ERRORS_H_
#define CROSSDOM_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace crossdom {

// Problems with input data: unreadable files, malformed graphs, corpus
// pairing failures, missing sentence text. The CLI maps these to exit 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ParseErrorKind {
  kEmptyInput,
  kUnbalancedParens,
  kDuplicateVariable,
  kUndefinedVariable,
  kMissingConcept,
  kUnexpectedToken,
  kTrailingInput,
};

std::string_view ParseErrorKindName(ParseErrorKind kind);

// PENMAN syntax error. Line and column are 1-based and refer to the text
// handed to the parser (or to the file, when raised from ReadCorpus).
class ParseError : public DataError {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, std::size_t column,
             const std::string& detail);

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

// A corpus block whose graph failed to parse, in strict reading mode.
class CorpusEntryError : public DataError {
 public:
  CorpusEntryError(std::size_t index, std::string id, const std::string& what)
      : DataError(what), index_(index), id_(std::move(id)) {}

  // 0-based position among the graph-bearing blocks of the file.
  std::size_t index() const { return index_; }
  const std::string& id() const { return id_; }

 private:
  std::size_t index_;
  std::string id_;
};

// A graph that breaks the AmrGraph invariants (dangling edge, missing root).
class InvariantError : public DataError {
 public:
  using DataError::DataError;
};

// Statistical procedures that cannot produce a defined result, e.g. a
// correlation over a constant series. The CLI maps these to exit 3.
class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConstantSeriesError : public AnalysisError {
 public:
  using AnalysisError::AnalysisError;
};

}  // namespace crossdom

#endif  // CROSSDOM_ERRORS_H_
