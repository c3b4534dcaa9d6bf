// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace avf {

/// Every failure the toolkit reports maps onto one of these classes. The CLI
/// turns each class into its own process exit code (see exit_code()).
enum class ErrorCode {
  kInvalidArgument = 1,
  kIo,
  kParseError,
  kDuplicateId,
  kDanglingParent,
  kEmptyManifest,
  kDimMismatch,
  kCorruptHeader,
  kTruncatedFile,
  kNonFiniteValue,
  kUnsupportedRate,
  kEmptyInput,
  kTooShort,
  kShapeMismatch,
  kNegativeInput,
  kEmptySequence,
  kUnknownOp,
  kParamOutOfRange,
  kAlreadyAugmented,
  kInvalidOneHot,
  kStaleCache,
  kEmptyDataset,
  kMissingEmbedding,
  kEmptyEvalSet,
  kMissingArtifacts,
  kEmptySpace,
};

std::string_view error_code_name(ErrorCode code);

/// Process exit code for an error class; 0 is reserved for success and 1 for
/// unexpected failures, so classes start at 10.
int exit_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

}  // namespace avf
