#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chartnav {

enum class ErrorCode {
  kMalformedDocument,
  kUnknownChannel,
  kDuplicateChannel,
  kMissingChannel,
  kEmptySource,
  kRaggedRows,
  kEmptyCell,
  kMixedTypes,
  kFieldNotFound,
  kKindMismatch,
  kDuplicateName,
  kUnknownToken,
  kDuplicateToken,
  kEmptyName,
  kUnknownPreset,
  kVersionMismatch,
  kInapplicableToken,
  kParseError,
  kBadRequest,
  kIo,
};

// Stable wire name, e.g. "DuplicateChannel".
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace chartnav
