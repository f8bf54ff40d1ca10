// Copyright 2026 The idface Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "idface/error.hpp"

namespace idface {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kRangeViolation: return "RangeViolation";
    case ErrorCode::kInvalidAngle: return "InvalidAngle";
    case ErrorCode::kCapacityTooSmall: return "CapacityTooSmall";
    case ErrorCode::kTooManyTemplates: return "TooManyTemplates";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kPrimeGenerationFailure: return "PrimeGenerationFailure";
    case ErrorCode::kSlotOverflow: return "SlotOverflow";
    case ErrorCode::kKeyMismatch: return "KeyMismatch";
    case ErrorCode::kParamMismatch: return "ParamMismatch";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kTransportFailure: return "TransportFailure";
    case ErrorCode::kMalformedFrame: return "MalformedFrame";
    case ErrorCode::kUnknownMessageType: return "UnknownMessageType";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kQuadratureFailure: return "QuadratureFailure";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kInsecureModeRequired: return "InsecureModeRequired";
    case ErrorCode::kMalformedKey: return "MalformedKey";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace idface
