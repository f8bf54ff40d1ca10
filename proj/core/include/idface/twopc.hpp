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

#ifndef IDFACE_TWOPC_HPP_
#define IDFACE_TWOPC_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_set>
#include <vector>

#include "idface/bitvector.hpp"
#include "idface/protocol/roles.hpp"
#include "idface/protocol/transport.hpp"
#include "idface/random.hpp"
#include "idface/transform.hpp"

namespace idface::twopc {

struct PartyShare {
  BitVector plus;
  BitVector minus;
  bool operator==(const PartyShare&) const = default;
};

// XOR sharing of a sign split across parties.
struct ShareSet {
  std::vector<PartyShare> parties;

  std::size_t party_count() const { return parties.size(); }
  std::size_t dim() const { return parties.empty() ? 0 : parties.front().plus.size(); }
  transform::BinarySplit reconstruct_split() const;
  transform::TernaryTemplate reconstruct() const;
};

// The first parties-1 shares are uniform; the last one corrects the XOR.
ShareSet gen_share(const transform::FeatureTemplate& x, std::size_t alpha, std::size_t parties, Rng& rng);
ShareSet gen_share_ternary(const transform::TernaryTemplate& z, std::size_t parties, Rng& rng);

// Bits of share at the set positions of mask, ascending.
BitVector subvector(const BitVector& share, const BitVector& mask);
BitVector gather(const BitVector& share, const std::vector<std::size_t>& positions);

// Public query support. A response row for one identity concatenates the
// share bits at (plus-share, y+), (minus-share, y-), (plus-share, y-),
// (minus-share, y+), for 2 * (|y+| + |y-|) bits.
struct QuerySupport {
  std::size_t d = 0;
  std::vector<std::size_t> plus;
  std::vector<std::size_t> minus;

  static QuerySupport of(const transform::BinarySplit& y);
  std::size_t row_bits() const { return 2 * (plus.size() + minus.size()); }
};

BitVector response_row(const PartyShare& share, const QuerySupport& q);
// Score from the XOR of all parties' rows:
// HW(first two parts) - HW(last two parts).
std::int64_t score_from_row(const BitVector& combined, const QuerySupport& q);

// Full-length AND / XOR / popcount evaluation over all parties.
std::int64_t score_2pc(const ShareSet& shares, const transform::BinarySplit& query);
// Same value through subvectors.
std::int64_t score_2pc_subvector(const ShareSet& shares, const transform::BinarySplit& query);

// Logical payload bits exchanged, excluding frame headers and byte padding.
struct CommunicationMeter {
  std::uint64_t query_bits = 0;     // initiator to responders
  std::uint64_t response_bits = 0;  // responders to initiator
  std::uint64_t enroll_bits = 0;    // enrollment broadcast
  std::uint64_t identify_bits() const { return query_bits + response_bits; }
};

// Closed forms: one identify moves (parties-1) * (2*D*beta + 2*d) bits; one
// enrollment moves (parties-1) * (2*d + id_bits).
std::uint64_t identify_cost_bits(std::uint64_t D, std::size_t beta, std::size_t d, std::size_t parties);
std::uint64_t enroll_cost_bits(std::size_t d, std::size_t id_bits, std::size_t parties);

// One party's shares, in enrollment order.
class ShareStore {
 public:
  void add(const std::string& id, PartyShare share);
  std::size_t size() const { return ids_.size(); }
  std::size_t dim() const { return shares_.empty() ? 0 : shares_.front().plus.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<PartyShare>& shares() const { return shares_; }

  // Text file: header "idface-shares v1 <party> <parties> <d>", then one
  // "id plus-hex minus-hex" line per identity.
  void save(const std::string& path, std::size_t party, std::size_t parties) const;
  static ShareStore load(const std::string& path, std::size_t* party = nullptr, std::size_t* parties = nullptr);

 private:
  std::vector<std::string> ids_;
  std::vector<PartyShare> shares_;
  std::unordered_set<std::string> seen_;
};

// Responder: stores EnrollBroadcast shares and answers queries with rows.
class Party {
 public:
  explicit Party(ShareStore store = {}) : store_(std::move(store)) {}
  protocol::Message handle_message(const protocol::Message& msg);
  protocol::Handler handler();
  const ShareStore& store() const { return store_; }

 private:
  std::mutex mu_;
  ShareStore store_;
};

// Initiating party: holds share 0 and talks to every other party over a
// star of links.
class Initiator {
 public:
  Initiator(std::size_t d, std::size_t alpha, std::size_t beta, std::vector<protocol::Link*> peers,
            ShareStore own = {});

  std::size_t party_count() const { return peers_.size() + 1; }
  const ShareStore& store() const { return own_; }

  void enroll(const transform::FeatureTemplate& x, const std::string& id, Rng& rng);
  void enroll_ternary(const transform::TernaryTemplate& z, const std::string& id, Rng& rng);

  std::vector<std::int64_t> scores(const transform::FeatureTemplate& y);
  std::vector<std::int64_t> scores_ternary(const transform::TernaryTemplate& z);
  protocol::MatchResult identify(const transform::FeatureTemplate& y, double tau);

  const CommunicationMeter& meter() const { return meter_; }
  void reset_meter() { meter_ = {}; }

 private:
  std::size_t d_;
  std::size_t alpha_;
  std::size_t beta_;
  std::vector<protocol::Link*> peers_;
  ShareStore own_;
  CommunicationMeter meter_;
};

}  // namespace idface::twopc

#endif  // IDFACE_TWOPC_HPP_
