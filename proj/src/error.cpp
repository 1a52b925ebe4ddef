#include "chartnav/error.hpp"

namespace chartnav {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedDocument: return "MalformedDocument";
    case ErrorCode::kUnknownChannel: return "UnknownChannel";
    case ErrorCode::kDuplicateChannel: return "DuplicateChannel";
    case ErrorCode::kMissingChannel: return "MissingChannel";
    case ErrorCode::kEmptySource: return "EmptySource";
    case ErrorCode::kRaggedRows: return "RaggedRows";
    case ErrorCode::kEmptyCell: return "EmptyCell";
    case ErrorCode::kMixedTypes: return "MixedTypes";
    case ErrorCode::kFieldNotFound: return "FieldNotFound";
    case ErrorCode::kKindMismatch: return "KindMismatch";
    case ErrorCode::kDuplicateName: return "DuplicateName";
    case ErrorCode::kUnknownToken: return "UnknownToken";
    case ErrorCode::kDuplicateToken: return "DuplicateToken";
    case ErrorCode::kEmptyName: return "EmptyName";
    case ErrorCode::kUnknownPreset: return "UnknownPreset";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kInapplicableToken: return "InapplicableToken";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kBadRequest: return "BadRequest";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace chartnav
