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

#include "idface/protocol/wire.hpp"

#include <bit>
#include <cstring>

#include "idface/bigint.hpp"

namespace idface::protocol {

namespace {

constexpr std::uint8_t kMagic[4] = {'I', 'D', 'F', '1'};

class Reader {
 public:
  Reader(const std::uint8_t* data, std::size_t len) : data_(data), len_(len) {}

  const std::uint8_t* take(std::size_t n) {
    if (len_ - pos_ < n) fail(ErrorCode::kMalformedFrame, "payload truncated");
    const std::uint8_t* p = data_ + pos_;
    pos_ += n;
    return p;
  }
  std::uint8_t u8() { return *take(1); }
  std::uint16_t u16() {
    const auto* p = take(2);
    return static_cast<std::uint16_t>((p[0] << 8) | p[1]);
  }
  std::uint32_t u32() { return get_u32(take(4)); }
  std::uint64_t u64() { return get_u64(take(8)); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::vector<std::uint8_t> bytes() {
    const std::uint32_t n = u32();
    const auto* p = take(n);
    return {p, p + n};
  }
  std::string str() {
    const std::uint32_t n = u32();
    const auto* p = take(n);
    return {reinterpret_cast<const char*>(p), n};
  }
  BitVector bits(std::size_t count) { return BitVector::from_bytes(take((count + 7) / 8), count); }
  void finish() const {
    if (pos_ != len_) fail(ErrorCode::kLengthMismatch, "trailing bytes in payload");
  }

 private:
  const std::uint8_t* data_;
  std::size_t len_;
  std::size_t pos_ = 0;
};

void put_bytes(std::vector<std::uint8_t>& out, const std::vector<std::uint8_t>& b) {
  put_u32(out, static_cast<std::uint32_t>(b.size()));
  out.insert(out.end(), b.begin(), b.end());
}

void put_str(std::vector<std::uint8_t>& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.insert(out.end(), s.begin(), s.end());
}

void put_bits(std::vector<std::uint8_t>& out, const BitVector& v) {
  const auto b = v.to_bytes();
  out.insert(out.end(), b.begin(), b.end());
}

void put_f64(std::vector<std::uint8_t>& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

struct PayloadWriter {
  std::vector<std::uint8_t>& out;

  void operator()(const ScoreBatchRequest& m) {
    put_u64(out, static_cast<std::uint64_t>(m.threshold_int));
    put_u64(out, m.p);
    put_u32(out, m.m);
    put_u32(out, static_cast<std::uint32_t>(m.batches.size()));
    for (const auto& b : m.batches) {
      put_u32(out, b.valid_count);
      put_bytes(out, b.ct_plus);
      put_bytes(out, b.ct_minus);
    }
  }
  void operator()(const IdxResponse& m) {
    out.push_back(m.accept ? 1 : 0);
    if (m.accept) {
      put_u32(out, m.batch_idx);
      put_u32(out, m.within_idx);
    }
  }
  void operator()(const EnrollBroadcast& m) {
    if (m.share_plus.size() != m.share_minus.size()) {
      fail(ErrorCode::kDimensionMismatch, "share halves differ in length");
    }
    put_str(out, m.id);
    put_u32(out, static_cast<std::uint32_t>(m.share_plus.size()));
    put_bits(out, m.share_plus);
    put_bits(out, m.share_minus);
  }
  void operator()(const ErrorResponse& m) {
    const auto code = static_cast<std::uint16_t>(m.code);
    out.push_back(static_cast<std::uint8_t>(code >> 8));
    out.push_back(static_cast<std::uint8_t>(code));
    put_str(out, m.message);
  }
  void operator()(const IdentifyRequest& m) {
    put_f64(out, m.threshold);
    put_u32(out, static_cast<std::uint32_t>(m.features.size()));
    for (double v : m.features) put_f64(out, v);
  }
  void operator()(const IdentifyReply& m) {
    out.push_back(m.accept ? 1 : 0);
    put_str(out, m.id);
  }
  void operator()(const TwoPcQuery& m) {
    if (m.plus.size() != m.minus.size()) fail(ErrorCode::kDimensionMismatch, "query halves differ in length");
    put_u32(out, static_cast<std::uint32_t>(m.plus.size()));
    put_bits(out, m.plus);
    put_bits(out, m.minus);
  }
  void operator()(const TwoPcShares& m) {
    put_u32(out, m.bits_per_identity);
    put_u32(out, static_cast<std::uint32_t>(m.rows.size()));
    for (const auto& r : m.rows) {
      if (r.size() != m.bits_per_identity) fail(ErrorCode::kDimensionMismatch, "share row has wrong width");
      put_bits(out, r);
    }
  }
  void operator()(const TwoPcAck& m) { put_u32(out, m.stored); }
};

Message read_payload(MessageType type, Reader& r) {
  switch (type) {
    case MessageType::kScoreBatchRequest: {
      ScoreBatchRequest m;
      m.threshold_int = static_cast<std::int64_t>(r.u64());
      m.p = r.u64();
      m.m = r.u32();
      const std::uint32_t n = r.u32();
      for (std::uint32_t i = 0; i < n; ++i) {
        WireScorePair b;
        b.valid_count = r.u32();
        b.ct_plus = r.bytes();
        b.ct_minus = r.bytes();
        m.batches.push_back(std::move(b));
      }
      return m;
    }
    case MessageType::kIdxResponse: {
      IdxResponse m;
      const std::uint8_t flag = r.u8();
      if (flag > 1) fail(ErrorCode::kMalformedFrame, "bad accept flag");
      m.accept = flag == 1;
      if (m.accept) {
        m.batch_idx = r.u32();
        m.within_idx = r.u32();
      }
      return m;
    }
    case MessageType::kEnrollBroadcast: {
      EnrollBroadcast m;
      m.id = r.str();
      const std::uint32_t d = r.u32();
      m.share_plus = r.bits(d);
      m.share_minus = r.bits(d);
      return m;
    }
    case MessageType::kErrorResponse: {
      ErrorResponse m;
      m.code = static_cast<ErrorCode>(r.u16());
      m.message = r.str();
      return m;
    }
    case MessageType::kIdentifyRequest: {
      IdentifyRequest m;
      m.threshold = r.f64();
      const std::uint32_t d = r.u32();
      for (std::uint32_t i = 0; i < d; ++i) m.features.push_back(r.f64());
      return m;
    }
    case MessageType::kIdentifyReply: {
      IdentifyReply m;
      const std::uint8_t flag = r.u8();
      if (flag > 1) fail(ErrorCode::kMalformedFrame, "bad accept flag");
      m.accept = flag == 1;
      m.id = r.str();
      return m;
    }
    case MessageType::kTwoPcQuery: {
      TwoPcQuery m;
      const std::uint32_t d = r.u32();
      m.plus = r.bits(d);
      m.minus = r.bits(d);
      return m;
    }
    case MessageType::kTwoPcShares: {
      TwoPcShares m;
      m.bits_per_identity = r.u32();
      const std::uint32_t n = r.u32();
      for (std::uint32_t i = 0; i < n; ++i) m.rows.push_back(r.bits(m.bits_per_identity));
      return m;
    }
    case MessageType::kTwoPcAck: {
      TwoPcAck m;
      m.stored = r.u32();
      return m;
    }
  }
  fail(ErrorCode::kUnknownMessageType, "unknown message type");
}

bool known_type(std::uint8_t t) {
  switch (static_cast<MessageType>(t)) {
    case MessageType::kScoreBatchRequest:
    case MessageType::kIdxResponse:
    case MessageType::kEnrollBroadcast:
    case MessageType::kErrorResponse:
    case MessageType::kIdentifyRequest:
    case MessageType::kIdentifyReply:
    case MessageType::kTwoPcQuery:
    case MessageType::kTwoPcShares:
    case MessageType::kTwoPcAck:
      return true;
  }
  return false;
}

}  // namespace

MessageType message_type(const Message& msg) {
  static constexpr MessageType kTypes[] = {
      MessageType::kScoreBatchRequest, MessageType::kIdxResponse,   MessageType::kEnrollBroadcast,
      MessageType::kErrorResponse,     MessageType::kIdentifyRequest, MessageType::kIdentifyReply,
      MessageType::kTwoPcQuery,        MessageType::kTwoPcShares,   MessageType::kTwoPcAck,
  };
  return kTypes[msg.index()];
}

std::string message_type_name(MessageType type) {
  switch (type) {
    case MessageType::kScoreBatchRequest: return "ScoreBatchRequest";
    case MessageType::kIdxResponse: return "IdxResponse";
    case MessageType::kEnrollBroadcast: return "EnrollBroadcast";
    case MessageType::kErrorResponse: return "ErrorResponse";
    case MessageType::kIdentifyRequest: return "IdentifyRequest";
    case MessageType::kIdentifyReply: return "IdentifyReply";
    case MessageType::kTwoPcQuery: return "TwoPcQuery";
    case MessageType::kTwoPcShares: return "TwoPcShares";
    case MessageType::kTwoPcAck: return "TwoPcAck";
  }
  return "Unknown";
}

std::vector<std::uint8_t> wire_encode(const Message& msg) {
  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  out.push_back(static_cast<std::uint8_t>(message_type(msg)));
  out.resize(kFrameHeaderBytes, 0);
  std::visit(PayloadWriter{out}, msg);
  const std::uint64_t len = out.size() - kFrameHeaderBytes;
  for (int i = 0; i < 8; ++i) out[5 + i] = static_cast<std::uint8_t>(len >> (56 - 8 * i));
  return out;
}

std::uint64_t parse_frame_header(const std::uint8_t* header, MessageType* type) {
  if (std::memcmp(header, kMagic, 4) != 0) fail(ErrorCode::kMalformedFrame, "bad frame magic");
  if (!known_type(header[4])) {
    fail(ErrorCode::kUnknownMessageType, "message type " + std::to_string(header[4]));
  }
  const std::uint64_t len = get_u64(header + 5);
  if (len > kMaxPayloadBytes) fail(ErrorCode::kMalformedFrame, "payload length out of range");
  if (type) *type = static_cast<MessageType>(header[4]);
  return len;
}

Message wire_decode(const std::uint8_t* data, std::size_t len) {
  if (len < kFrameHeaderBytes) fail(ErrorCode::kMalformedFrame, "frame shorter than its header");
  MessageType type{};
  const std::uint64_t payload = parse_frame_header(data, &type);
  if (len - kFrameHeaderBytes < payload) fail(ErrorCode::kMalformedFrame, "frame truncated");
  if (len - kFrameHeaderBytes > payload) fail(ErrorCode::kLengthMismatch, "bytes after the frame");
  Reader r(data + kFrameHeaderBytes, payload);
  Message m = read_payload(type, r);
  r.finish();
  return m;
}

Message expect_ok(Message msg) {
  if (const auto* e = std::get_if<ErrorResponse>(&msg)) throw Error(e->code, "peer: " + e->message);
  return msg;
}

}  // namespace idface::protocol
