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

#ifndef IDFACE_ERROR_HPP_
#define IDFACE_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace idface {

// Every failure raised by the library carries one of these codes. The
// numeric values are stable: the CLI maps them to exit codes (10 + code) and
// the wire protocol carries them in error frames.
enum class ErrorCode : std::uint16_t {
  kInvalidArgument = 0,
  kDegenerateInput = 1,
  kDimensionMismatch = 2,
  kRangeViolation = 3,
  kInvalidAngle = 4,
  kCapacityTooSmall = 5,
  kTooManyTemplates = 6,
  kOverflow = 7,
  kPrimeGenerationFailure = 8,
  kSlotOverflow = 9,
  kKeyMismatch = 10,
  kParamMismatch = 11,
  kDuplicateId = 12,
  kTransportFailure = 13,
  kMalformedFrame = 14,
  kUnknownMessageType = 15,
  kLengthMismatch = 16,
  kQuadratureFailure = 17,
  kIoFailure = 18,
  kInsecureModeRequired = 19,
  kMalformedKey = 20,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace idface

#endif  // IDFACE_ERROR_HPP_
