// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/error.hpp"

namespace avf {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kDanglingParent: return "DanglingParent";
    case ErrorCode::kEmptyManifest: return "EmptyManifest";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kCorruptHeader: return "CorruptHeader";
    case ErrorCode::kTruncatedFile: return "TruncatedFile";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kUnsupportedRate: return "UnsupportedRate";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kTooShort: return "TooShort";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNegativeInput: return "NegativeInput";
    case ErrorCode::kEmptySequence: return "EmptySequence";
    case ErrorCode::kUnknownOp: return "UnknownOp";
    case ErrorCode::kParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::kAlreadyAugmented: return "AlreadyAugmented";
    case ErrorCode::kInvalidOneHot: return "InvalidOneHot";
    case ErrorCode::kStaleCache: return "StaleCache";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kMissingEmbedding: return "MissingEmbedding";
    case ErrorCode::kEmptyEvalSet: return "EmptyEvalSet";
    case ErrorCode::kMissingArtifacts: return "MissingArtifacts";
    case ErrorCode::kEmptySpace: return "EmptySpace";
  }
  return "Unknown";
}

int exit_code(ErrorCode code) { return 9 + static_cast<int>(code); }

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace avf
