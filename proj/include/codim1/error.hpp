#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace codim1 {

enum class ErrorKind {
  ZeroVector,
  DimensionMismatch,
  InvalidSupport,
  DegenerateStrip,
  MalformedCollection,
  NotCollinear,
  ZeroPolynomial,
  ZeroCoordinate,
  UnalignedExponent,
  NoSolvableCoordinate,
  RetriesExhausted,
  PreconditionViolation,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidSupport: return "InvalidSupport";
    case ErrorKind::DegenerateStrip: return "DegenerateStrip";
    case ErrorKind::MalformedCollection: return "MalformedCollection";
    case ErrorKind::NotCollinear: return "NotCollinear";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::ZeroCoordinate: return "ZeroCoordinate";
    case ErrorKind::UnalignedExponent: return "UnalignedExponent";
    case ErrorKind::NoSolvableCoordinate: return "NoSolvableCoordinate";
    case ErrorKind::RetriesExhausted: return "RetriesExhausted";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the ErrorKind tags.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace codim1
