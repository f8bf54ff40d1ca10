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

#include "idface/twopc.hpp"

#include <fstream>
#include <mutex>
#include <sstream>

#include "idface/error.hpp"

namespace idface::twopc {

namespace {

BitVector random_bits(std::size_t d, Rng& rng) {
  BitVector v(d);
  for (auto& w : v.mutable_words()) w = rng.next_u64();
  v.trim();
  return v;
}

std::string to_hex(const BitVector& v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  for (std::uint8_t b : v.to_bytes()) {
    s += kDigits[b >> 4];
    s += kDigits[b & 15];
  }
  return s;
}

BitVector from_hex(const std::string& s, std::size_t d) {
  if (s.size() != 2 * ((d + 7) / 8)) fail(ErrorCode::kIoFailure, "share has the wrong length");
  std::vector<std::uint8_t> bytes(s.size() / 2);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    bytes[i] = static_cast<std::uint8_t>(std::stoul(s.substr(2 * i, 2), nullptr, 16));
  }
  return BitVector::from_bytes(bytes.data(), d);
}

}  // namespace

transform::BinarySplit ShareSet::reconstruct_split() const {
  if (parties.empty()) fail(ErrorCode::kInvalidArgument, "empty share set");
  transform::BinarySplit s{parties[0].plus, parties[0].minus};
  for (std::size_t k = 1; k < parties.size(); ++k) {
    s.plus ^= parties[k].plus;
    s.minus ^= parties[k].minus;
  }
  return s;
}

transform::TernaryTemplate ShareSet::reconstruct() const { return transform::merge(reconstruct_split()); }

ShareSet gen_share_ternary(const transform::TernaryTemplate& z, std::size_t parties, Rng& rng) {
  if (parties < 2) fail(ErrorCode::kInvalidArgument, "sharing needs at least two parties");
  const auto split = transform::split(z);
  ShareSet out;
  out.parties.reserve(parties);
  PartyShare last{split.plus, split.minus};
  for (std::size_t k = 0; k + 1 < parties; ++k) {
    PartyShare s{random_bits(z.dim(), rng), random_bits(z.dim(), rng)};
    last.plus ^= s.plus;
    last.minus ^= s.minus;
    out.parties.push_back(std::move(s));
  }
  out.parties.push_back(std::move(last));
  return out;
}

ShareSet gen_share(const transform::FeatureTemplate& x, std::size_t alpha, std::size_t parties, Rng& rng) {
  return gen_share_ternary(transform::ternarize(x, alpha), parties, rng);
}

BitVector gather(const BitVector& share, const std::vector<std::size_t>& positions) {
  BitVector out(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] >= share.size()) fail(ErrorCode::kDimensionMismatch, "position outside the share");
    if (share.get(positions[i])) out.set(i, true);
  }
  return out;
}

BitVector subvector(const BitVector& share, const BitVector& mask) {
  if (share.size() != mask.size()) fail(ErrorCode::kDimensionMismatch, "share and mask lengths differ");
  return gather(share, mask.support());
}

QuerySupport QuerySupport::of(const transform::BinarySplit& y) {
  return QuerySupport{y.dim(), y.plus.support(), y.minus.support()};
}

BitVector response_row(const PartyShare& share, const QuerySupport& q) {
  if (share.plus.size() != q.d || share.minus.size() != q.d) {
    fail(ErrorCode::kDimensionMismatch, "share and query dimensions differ");
  }
  BitVector row(q.row_bits());
  std::size_t at = 0;
  auto put = [&](const BitVector& src, const std::vector<std::size_t>& pos) {
    for (std::size_t p : pos) {
      if (src.get(p)) row.set(at, true);
      ++at;
    }
  };
  put(share.plus, q.plus);
  put(share.minus, q.minus);
  put(share.plus, q.minus);
  put(share.minus, q.plus);
  return row;
}

std::int64_t score_from_row(const BitVector& combined, const QuerySupport& q) {
  if (combined.size() != q.row_bits()) fail(ErrorCode::kDimensionMismatch, "row has the wrong width");
  const std::size_t half = q.plus.size() + q.minus.size();
  std::int64_t agree = 0;
  std::int64_t disagree = 0;
  for (std::size_t i = 0; i < combined.size(); ++i) {
    if (!combined.get(i)) continue;
    if (i < half) {
      ++agree;
    } else {
      ++disagree;
    }
  }
  return agree - disagree;
}

std::int64_t score_2pc(const ShareSet& shares, const transform::BinarySplit& query) {
  if (shares.dim() != query.dim()) fail(ErrorCode::kDimensionMismatch, "share and query dimensions differ");
  BitVector p1(query.dim()), p2(query.dim()), m1(query.dim()), m2(query.dim());
  for (const auto& s : shares.parties) {
    p1 ^= s.plus & query.plus;
    p2 ^= s.minus & query.minus;
    m1 ^= s.plus & query.minus;
    m2 ^= s.minus & query.plus;
  }
  return static_cast<std::int64_t>(p1.popcount() + p2.popcount()) -
         static_cast<std::int64_t>(m1.popcount() + m2.popcount());
}

std::int64_t score_2pc_subvector(const ShareSet& shares, const transform::BinarySplit& query) {
  if (shares.dim() != query.dim()) fail(ErrorCode::kDimensionMismatch, "share and query dimensions differ");
  const auto q = QuerySupport::of(query);
  BitVector combined(q.row_bits());
  for (const auto& s : shares.parties) combined ^= response_row(s, q);
  return score_from_row(combined, q);
}

std::uint64_t identify_cost_bits(std::uint64_t D, std::size_t beta, std::size_t d, std::size_t parties) {
  return static_cast<std::uint64_t>(parties - 1) * (2 * D * beta + 2 * static_cast<std::uint64_t>(d));
}

std::uint64_t enroll_cost_bits(std::size_t d, std::size_t id_bits, std::size_t parties) {
  return static_cast<std::uint64_t>(parties - 1) * (2 * static_cast<std::uint64_t>(d) + id_bits);
}

void ShareStore::add(const std::string& id, PartyShare share) {
  if (share.plus.size() != share.minus.size()) fail(ErrorCode::kDimensionMismatch, "share halves differ");
  if (!shares_.empty() && share.plus.size() != dim()) fail(ErrorCode::kDimensionMismatch, "share dimension differs");
  if (!seen_.insert(id).second) fail(ErrorCode::kDuplicateId, "identity '" + id + "' already enrolled");
  ids_.push_back(id);
  shares_.push_back(std::move(share));
}

void ShareStore::save(const std::string& path, std::size_t party, std::size_t parties) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(ErrorCode::kIoFailure, "cannot write " + path);
  out << "idface-shares v1 " << party << ' ' << parties << ' ' << dim() << '\n';
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    out << ids_[i] << ' ' << to_hex(shares_[i].plus) << ' ' << to_hex(shares_[i].minus) << '\n';
  }
  if (!out) fail(ErrorCode::kIoFailure, "write to " + path + " failed");
}

ShareStore ShareStore::load(const std::string& path, std::size_t* party, std::size_t* parties) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoFailure, "cannot open " + path);
  std::string magic, version;
  std::size_t k = 0, mu = 0, d = 0;
  if (!(in >> magic >> version >> k >> mu >> d) || magic != "idface-shares" || version != "v1") {
    fail(ErrorCode::kIoFailure, path + " is not a share file");
  }
  if (party) *party = k;
  if (parties) *parties = mu;
  ShareStore store;
  std::string id, plus, minus;
  while (in >> id >> plus >> minus) store.add(id, PartyShare{from_hex(plus, d), from_hex(minus, d)});
  return store;
}

protocol::Message Party::handle_message(const protocol::Message& msg) {
  std::lock_guard<std::mutex> lock(mu_);
  if (const auto* e = std::get_if<protocol::EnrollBroadcast>(&msg)) {
    store_.add(e->id, PartyShare{e->share_plus, e->share_minus});
    return protocol::TwoPcAck{static_cast<std::uint32_t>(store_.size())};
  }
  if (const auto* q = std::get_if<protocol::TwoPcQuery>(&msg)) {
    const auto support = QuerySupport::of(transform::BinarySplit{q->plus, q->minus});
    protocol::TwoPcShares out;
    out.bits_per_identity = static_cast<std::uint32_t>(support.row_bits());
    out.rows.reserve(store_.size());
    for (const auto& s : store_.shares()) out.rows.push_back(response_row(s, support));
    return out;
  }
  fail(ErrorCode::kUnknownMessageType,
       "share party does not handle " + protocol::message_type_name(protocol::message_type(msg)));
}

protocol::Handler Party::handler() {
  return [this](const protocol::Message& m) { return handle_message(m); };
}

Initiator::Initiator(std::size_t d, std::size_t alpha, std::size_t beta, std::vector<protocol::Link*> peers,
                     ShareStore own)
    : d_(d), alpha_(alpha), beta_(beta), peers_(std::move(peers)), own_(std::move(own)) {
  if (peers_.empty()) fail(ErrorCode::kInvalidArgument, "at least one peer party is required");
  if (alpha_ > d_ || beta_ > d_) fail(ErrorCode::kDimensionMismatch, "nonzero count exceeds dimension");
}

void Initiator::enroll_ternary(const transform::TernaryTemplate& z, const std::string& id, Rng& rng) {
  if (z.dim() != d_) fail(ErrorCode::kDimensionMismatch, "template dimension differs");
  const ShareSet shares = gen_share_ternary(z, party_count(), rng);
  for (std::size_t k = 0; k < peers_.size(); ++k) {
    const auto& s = shares.parties[k + 1];
    const protocol::Message reply =
        protocol::expect_ok(peers_[k]->call(protocol::EnrollBroadcast{id, s.plus, s.minus}));
    meter_.enroll_bits += 2 * d_ + 8 * id.size();
    const auto* ack = std::get_if<protocol::TwoPcAck>(&reply);
    if (!ack || ack->stored != own_.size() + 1) {
      fail(ErrorCode::kTransportFailure, "party " + std::to_string(k + 2) + " lost enrollment order");
    }
  }
  own_.add(id, shares.parties[0]);
}

void Initiator::enroll(const transform::FeatureTemplate& x, const std::string& id, Rng& rng) {
  enroll_ternary(transform::ternarize(x, alpha_), id, rng);
}

std::vector<std::int64_t> Initiator::scores_ternary(const transform::TernaryTemplate& z) {
  if (z.dim() != d_) fail(ErrorCode::kDimensionMismatch, "query dimension differs");
  const auto split = transform::split(z);
  const auto support = QuerySupport::of(split);
  std::vector<BitVector> combined;
  combined.reserve(own_.size());
  for (const auto& s : own_.shares()) combined.push_back(response_row(s, support));
  for (std::size_t k = 0; k < peers_.size(); ++k) {
    const protocol::Message reply = protocol::expect_ok(peers_[k]->call(protocol::TwoPcQuery{split.plus, split.minus}));
    meter_.query_bits += 2 * d_;
    const auto* rows = std::get_if<protocol::TwoPcShares>(&reply);
    if (!rows || rows->rows.size() != own_.size() || rows->bits_per_identity != support.row_bits()) {
      fail(ErrorCode::kTransportFailure, "party " + std::to_string(k + 2) + " sent mismatched rows");
    }
    meter_.response_bits += static_cast<std::uint64_t>(rows->rows.size()) * rows->bits_per_identity;
    for (std::size_t i = 0; i < combined.size(); ++i) combined[i] ^= rows->rows[i];
  }
  std::vector<std::int64_t> out(combined.size());
  for (std::size_t i = 0; i < combined.size(); ++i) out[i] = score_from_row(combined[i], support);
  return out;
}

std::vector<std::int64_t> Initiator::scores(const transform::FeatureTemplate& y) {
  return scores_ternary(transform::ternarize(y, beta_));
}

protocol::MatchResult Initiator::identify(const transform::FeatureTemplate& y, double tau) {
  const auto s = scores(y);
  protocol::MatchResult out;
  if (s.empty()) return out;
  std::size_t best = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] > s[best]) best = i;
  }
  if (s[best] > protocol::threshold_int(tau, alpha_, beta_)) {
    out = protocol::MatchResult{true, own_.ids()[best], 0, static_cast<std::uint32_t>(best)};
  }
  return out;
}

}  // namespace idface::twopc
