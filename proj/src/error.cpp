#include "slimfat/error.hpp"

namespace slimfat {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfiguration: return "configuration error";
    case ErrorKind::kPhantomDeletion: return "phantom deletion";
    case ErrorKind::kUnsupportedOperation: return "unsupported operation";
    case ErrorKind::kCounterOverflow: return "counter overflow";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kUndefinedMetric: return "undefined metric";
    case ErrorKind::kIo: return "i/o error";
  }
  return "unknown error";
}

const char* to_string(ParseFailure failure) {
  switch (failure) {
    case ParseFailure::kBadMagic: return "bad magic";
    case ParseFailure::kBadVersion: return "unsupported version";
    case ParseFailure::kBadVariant: return "unknown variant code";
    case ParseFailure::kBadReserved: return "reserved bytes not zero";
    case ParseFailure::kBadDimensions: return "invalid dimensions";
    case ParseFailure::kTruncated: return "truncated input";
    case ParseFailure::kLengthMismatch: return "length mismatch";
    case ParseFailure::kMalformedLine: return "malformed line";
    case ParseFailure::kUnknownOp: return "unknown op token";
  }
  return "unknown parse failure";
}

}  // namespace slimfat
