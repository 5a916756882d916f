#pragma once

#include <stdexcept>
#include <string>

namespace slimfat {

enum class ErrorKind {
  kConfiguration,
  kPhantomDeletion,
  kUnsupportedOperation,
  kCounterOverflow,
  kParse,
  kUndefinedMetric,
  kIo,
};

const char* to_string(ErrorKind kind);

// Every recoverable failure in the library is reported through this type.
class SketchError : public std::runtime_error {
 public:
  SketchError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

enum class ParseFailure {
  kBadMagic,
  kBadVersion,
  kBadVariant,
  kBadReserved,
  kBadDimensions,
  kTruncated,
  kLengthMismatch,
  kMalformedLine,
  kUnknownOp,
};

const char* to_string(ParseFailure failure);

class ParseError : public SketchError {
 public:
  ParseError(ParseFailure failure, const std::string& what, std::size_t line = 0)
      : SketchError(ErrorKind::kParse, what), failure_(failure), line_(line) {}

  ParseFailure failure() const noexcept { return failure_; }
  // 1-based line number for trace errors, 0 otherwise.
  std::size_t line() const noexcept { return line_; }

 private:
  ParseFailure failure_;
  std::size_t line_;
};

}  // namespace slimfat
