#include "corefeval/error.hpp"

namespace corefeval {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicateMention: return "DuplicateMention";
    case ErrorKind::UnknownMention: return "UnknownMention";
    case ErrorKind::EmptyClass: return "EmptyClass";
    case ErrorKind::UniverseMismatch: return "UniverseMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::UnknownMode: return "UnknownMode";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::MalformedTag: return "MalformedTag";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::DanglingRef: return "DanglingRef";
    case ErrorKind::NestingViolation: return "NestingViolation";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::AddressInUse: return "AddressInUse";
    case ErrorKind::UnsupportedVersion: return "UnsupportedVersion";
  }
  return "Unknown";
}

}  // namespace corefeval
