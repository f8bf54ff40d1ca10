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

#ifndef IDFACE_PROTOCOL_WIRE_HPP_
#define IDFACE_PROTOCOL_WIRE_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "idface/bitvector.hpp"
#include "idface/error.hpp"

namespace idface::protocol {

// Frame: "IDF1" | type (1 byte) | payload length (8 bytes, big-endian) | payload.
inline constexpr std::size_t kFrameHeaderBytes = 13;
inline constexpr std::uint64_t kMaxPayloadBytes = std::uint64_t{1} << 34;

enum class MessageType : std::uint8_t {
  kScoreBatchRequest = 0x01,
  kIdxResponse = 0x02,
  kEnrollBroadcast = 0x03,
  kErrorResponse = 0x04,
  kIdentifyRequest = 0x05,
  kIdentifyReply = 0x06,
  kTwoPcQuery = 0x10,
  kTwoPcShares = 0x11,
  kTwoPcAck = 0x12,
};

// Ciphertexts travel as opaque minimal big-endian byte strings.
struct WireScorePair {
  std::uint32_t valid_count = 0;  // occupied positions in the batch
  std::vector<std::uint8_t> ct_plus;
  std::vector<std::uint8_t> ct_minus;
  bool operator==(const WireScorePair&) const = default;
};

// Local server to key server: one score pair per batch plus what the key
// server needs to decode and threshold them.
struct ScoreBatchRequest {
  std::int64_t threshold_int = 0;
  std::uint64_t p = 0;
  std::uint32_t m = 0;
  std::vector<WireScorePair> batches;
  bool operator==(const ScoreBatchRequest&) const = default;
};

// Key server reply: reject carries only the flag byte.
struct IdxResponse {
  bool accept = false;
  std::uint32_t batch_idx = 0;
  std::uint32_t within_idx = 0;
  bool operator==(const IdxResponse&) const = default;
};

// Enrollment share pushed to one party of the multi-server variant.
struct EnrollBroadcast {
  std::string id;
  BitVector share_plus;
  BitVector share_minus;
  bool operator==(const EnrollBroadcast&) const = default;
};

struct ErrorResponse {
  ErrorCode code = ErrorCode::kInvalidArgument;
  std::string message;
  bool operator==(const ErrorResponse&) const = default;
};

// Client to local server.
struct IdentifyRequest {
  double threshold = 0.0;
  std::vector<double> features;
  bool operator==(const IdentifyRequest&) const = default;
};

struct IdentifyReply {
  bool accept = false;
  std::string id;
  bool operator==(const IdentifyReply&) const = default;
};

// Public query split sent by the initiating party.
struct TwoPcQuery {
  BitVector plus;
  BitVector minus;
  bool operator==(const TwoPcQuery&) const = default;
};

// Per enrolled identity, the responder's share bits at the query support:
// plus-share at y+, minus-share at y-, plus-share at y-, minus-share at y+,
// concatenated (2 * beta bits per identity).
struct TwoPcShares {
  std::uint32_t bits_per_identity = 0;
  std::vector<BitVector> rows;
  bool operator==(const TwoPcShares&) const = default;
};

struct TwoPcAck {
  std::uint32_t stored = 0;
  bool operator==(const TwoPcAck&) const = default;
};

using Message = std::variant<ScoreBatchRequest, IdxResponse, EnrollBroadcast, ErrorResponse,
                             IdentifyRequest, IdentifyReply, TwoPcQuery, TwoPcShares, TwoPcAck>;

MessageType message_type(const Message& msg);
std::string message_type_name(MessageType type);

std::vector<std::uint8_t> wire_encode(const Message& msg);
// Throws MalformedFrame (bad magic, truncation), UnknownMessageType or
// LengthMismatch (trailing bytes).
Message wire_decode(const std::uint8_t* data, std::size_t len);
inline Message wire_decode(const std::vector<std::uint8_t>& frame) {
  return wire_decode(frame.data(), frame.size());
}

// Parses a header; returns the payload length.
std::uint64_t parse_frame_header(const std::uint8_t* header, MessageType* type = nullptr);

// Rethrows an ErrorResponse as Error; otherwise returns the message.
Message expect_ok(Message msg);

}  // namespace idface::protocol

#endif  // IDFACE_PROTOCOL_WIRE_HPP_
