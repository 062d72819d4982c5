#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scg {

/// Error categories surfaced by the library. The name of the category is
/// embedded in every exception message so callers (and shell users) can
/// match on it.
enum class Errc {
  InvalidScore,
  EmptyRunSet,
  AllGroupsEmpty,
  OutOfBand,
  InvalidValue,
  BadWeights,
  SyntaxError,
  SchemaError,
  RangeError,
  ConflictError,
  DuplicateDetector,
  EmptyReportSet,
};

constexpr std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidScore: return "InvalidScore";
    case Errc::EmptyRunSet: return "EmptyRunSet";
    case Errc::AllGroupsEmpty: return "AllGroupsEmpty";
    case Errc::OutOfBand: return "OutOfBand";
    case Errc::InvalidValue: return "InvalidValue";
    case Errc::BadWeights: return "BadWeights";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::SchemaError: return "SchemaError";
    case Errc::RangeError: return "RangeError";
    case Errc::ConflictError: return "ConflictError";
    case Errc::DuplicateDetector: return "DuplicateDetector";
    case Errc::EmptyReportSet: return "EmptyReportSet";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code),
        message_(message) {}

  Errc code() const noexcept { return code_; }

  /// The message without the category prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  Errc code_;
  std::string message_;
};

enum class Severity { Error, Warning };

constexpr std::string_view severity_name(Severity s) {
  return s == Severity::Error ? "error" : "warning";
}

/// One finding from validating a record or a document. `path` points at the
/// offending field using the document's own shape, e.g.
/// "robustness.compression[0].score".
struct ValidationIssue {
  Severity severity = Severity::Error;
  Errc code = Errc::SchemaError;
  std::string path;
  std::string message;

  bool operator==(const ValidationIssue&) const = default;
};

/// Raised by the ingest layer; carries every issue found in the document,
/// not just the first one.
class ParseError : public Error {
 public:
  ParseError(Errc code, const std::string& message,
             std::vector<ValidationIssue> issues)
      : Error(code, message), issues_(std::move(issues)) {}

  const std::vector<ValidationIssue>& issues() const noexcept {
    return issues_;
  }

 private:
  std::vector<ValidationIssue> issues_;
};

}  // namespace scg
