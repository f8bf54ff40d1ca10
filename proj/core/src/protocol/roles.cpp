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

#include "idface/protocol/roles.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include "idface/error.hpp"
#include "idface/parallel.hpp"

namespace idface::protocol {

std::int64_t threshold_int(double tau, std::size_t alpha, std::size_t beta) {
  if (!(tau >= -1.0 && tau <= 1.0)) fail(ErrorCode::kInvalidArgument, "threshold must lie in [-1, 1]");
  const double scaled = tau * std::sqrt(static_cast<double>(alpha) * static_cast<double>(beta));
  return static_cast<std::int64_t>(std::ceil(scaled - 1e-9));
}

KeyServer::KeyServer(std::shared_ptr<const ahe::SecretScheme> sk, std::optional<packing::PackingParams> expected)
    : sk_(std::move(sk)), expected_(expected) {
  if (!sk_) fail(ErrorCode::kInvalidArgument, "key server needs a secret key");
  pk_ = sk_->public_scheme();
}

IdxResponse KeyServer::handle(const ScoreBatchRequest& req) const {
  if (req.p < 2 || req.m == 0) fail(ErrorCode::kParamMismatch, "request carries invalid packing parameters");
  packing::PackingParams pp;
  pp.p = req.p;
  pp.digit_bits = std::max<std::size_t>(1, packing::ceil_log2(req.p));
  pp.m = req.m;
  pp.slot_bits = pp.digit_bits * pp.m;
  if (expected_ && (expected_->p != pp.p || expected_->m != pp.m)) {
    fail(ErrorCode::kParamMismatch, "request packing differs from the key server's");
  }
  const auto desc = pk_->descriptor();
  if (pp.slot_bits > desc.slot_bits) fail(ErrorCode::kParamMismatch, "packing wider than a slot");

  bool have = false;
  std::int64_t best = 0;
  IdxResponse out;
  for (std::size_t b = 0; b < req.batches.size(); ++b) {
    const auto& wb = req.batches[b];
    if (wb.valid_count > pp.m * desc.slot_count) fail(ErrorCode::kRangeViolation, "batch claims too many ids");
    const auto plus = sk_->decrypt(pk_->from_bytes(wb.ct_plus.data(), wb.ct_plus.size()));
    const auto minus = sk_->decrypt(pk_->from_bytes(wb.ct_minus.data(), wb.ct_minus.size()));
    const auto scores = dbenc::decode_scores(plus, minus, pp, wb.valid_count);
    for (std::size_t t = 0; t < scores.size(); ++t) {
      if (!have || scores[t] > best) {
        have = true;
        best = scores[t];
        out.batch_idx = static_cast<std::uint32_t>(b);
        out.within_idx = static_cast<std::uint32_t>(t);
      }
    }
  }
  out.accept = have && best > req.threshold_int;
  if (!out.accept) out = IdxResponse{};
  return out;
}

Message KeyServer::handle_message(const Message& msg) const {
  if (const auto* req = std::get_if<ScoreBatchRequest>(&msg)) return handle(*req);
  fail(ErrorCode::kUnknownMessageType,
       "key server does not handle " + message_type_name(message_type(msg)));
}

Handler KeyServer::handler() const {
  return [this](const Message& m) { return handle_message(m); };
}

LocalServer::LocalServer(std::shared_ptr<const ahe::PublicScheme> pk, const packing::PackingParams& params,
                         std::size_t d, std::size_t threads)
    : pk_(std::move(pk)), params_(params), d_(d), threads_(threads) {
  if (!pk_) fail(ErrorCode::kInvalidArgument, "local server needs a public key");
  if (params_.beta > params_.alpha) fail(ErrorCode::kParamMismatch, "beta must not exceed alpha");
  if (params_.alpha > d_) fail(ErrorCode::kDimensionMismatch, "alpha exceeds the dimension");
}

void LocalServer::enroll(const std::vector<transform::FeatureTemplate>& templates,
                         const std::vector<std::string>& ids) {
  if (templates.size() != ids.size()) fail(ErrorCode::kInvalidArgument, "one id per template required");
  auto check_ids = [&] {
    std::unordered_set<std::string> fresh;
    for (const auto& id : ids) {
      if (ids_.count(id) || !fresh.insert(id).second) {
        fail(ErrorCode::kDuplicateId, "identity '" + id + "' already enrolled");
      }
    }
  };
  {
    std::shared_lock lock(mu_);
    check_ids();
  }
  for (const auto& t : templates) {
    if (t.dim() != d_) fail(ErrorCode::kDimensionMismatch, "template dimension differs from the database");
  }
  auto batches = dbenc::idface_enc_db_all(templates, ids, params_, *pk_, threads_);
  std::unique_lock lock(mu_);
  check_ids();
  for (auto& b : batches) {
    if (store_) store_->append(b, *pk_);
    ids_.insert(b.ids.begin(), b.ids.end());
    db_.push_back(std::move(b));
  }
}

void LocalServer::load(std::vector<dbenc::EncryptedBatch> batches) {
  std::unique_lock lock(mu_);
  for (auto& b : batches) {
    if (b.dim() != d_) fail(ErrorCode::kDimensionMismatch, "batch dimension differs");
    if (!(b.packing == params_)) fail(ErrorCode::kParamMismatch, "batch packing differs");
    for (const auto& id : b.ids) {
      if (!ids_.insert(id).second) fail(ErrorCode::kDuplicateId, "identity '" + id + "' already enrolled");
    }
    db_.push_back(std::move(b));
  }
}

std::size_t LocalServer::batch_count() const {
  std::shared_lock lock(mu_);
  return db_.size();
}

std::size_t LocalServer::identity_count() const {
  std::shared_lock lock(mu_);
  return ids_.size();
}

ScoreBatchRequest LocalServer::score(const transform::FeatureTemplate& y, double tau,
                                     std::vector<dbenc::IpDbStats>* stats) const {
  if (y.dim() != d_) fail(ErrorCode::kDimensionMismatch, "query dimension differs from the database");
  const auto z = transform::ternarize(y, params_.beta);
  ScoreBatchRequest req;
  req.threshold_int = threshold_int(tau, params_.alpha, params_.beta);
  req.p = params_.p;
  req.m = static_cast<std::uint32_t>(params_.m);
  std::shared_lock lock(mu_);
  req.batches.resize(db_.size());
  std::vector<dbenc::IpDbStats> local(db_.size());
  parallel_for(db_.size(), threads_, [&](std::size_t b) {
    const auto pair = dbenc::idface_ip_db_ternary(z, db_[b], *pk_, &local[b]);
    auto& wb = req.batches[b];
    wb.valid_count = static_cast<std::uint32_t>(db_[b].ids.size());
    wb.ct_plus = pk_->to_wire_bytes(pair.ct_plus);
    wb.ct_minus = pk_->to_wire_bytes(pair.ct_minus);
  });
  if (stats) *stats = std::move(local);
  return req;
}

MatchResult LocalServer::resolve(const IdxResponse& resp) const {
  if (!resp.accept) return MatchResult{};
  std::shared_lock lock(mu_);
  if (resp.batch_idx >= db_.size() || resp.within_idx >= db_[resp.batch_idx].ids.size()) {
    fail(ErrorCode::kRangeViolation, "key server returned an index outside the database");
  }
  return MatchResult{true, db_[resp.batch_idx].ids[resp.within_idx], resp.batch_idx, resp.within_idx};
}

MatchResult LocalServer::identify(const transform::FeatureTemplate& y, double tau, Link& key_server) const {
  if (batch_count() == 0) fail(ErrorCode::kInvalidArgument, "database is empty");
  const Message reply = expect_ok(key_server.call(score(y, tau)));
  const auto* resp = std::get_if<IdxResponse>(&reply);
  if (!resp) fail(ErrorCode::kUnknownMessageType, "key server sent " + message_type_name(message_type(reply)));
  return resolve(*resp);
}

Message LocalServer::handle_message(const Message& msg, Link& key_server) const {
  if (const auto* req = std::get_if<IdentifyRequest>(&msg)) {
    const auto result = identify(transform::FeatureTemplate(req->features), req->threshold, key_server);
    return IdentifyReply{result.accepted, result.id};
  }
  fail(ErrorCode::kUnknownMessageType,
       "local server does not handle " + message_type_name(message_type(msg)));
}

std::string LocalServer::state_summary() const {
  std::shared_lock lock(mu_);
  const auto desc = pk_->descriptor();
  std::ostringstream out;
  out << "role=local\n"
      << "d=" << d_ << "\nalpha=" << params_.alpha << "\nbeta=" << params_.beta << "\np=" << params_.p
      << "\nm=" << params_.m << "\nbackend=" << ahe::backend_name(desc.kind) << "\nslot_count=" << desc.slot_count
      << "\nslot_bits=" << desc.slot_bits << "\nciphertext_bytes=" << desc.ciphertext_bytes
      << "\nkey_fingerprint=" << std::hex << pk_->key_id() << std::dec << "\nbatches=" << db_.size()
      << "\nidentities=" << ids_.size() << '\n';
  return out.str();
}

ReferenceResult reference_identify(const std::vector<transform::TernaryTemplate>& enrolled,
                                   const std::vector<std::string>& ids, const transform::FeatureTemplate& y,
                                   std::size_t alpha, std::size_t beta, double tau, std::size_t batch_capacity) {
  if (enrolled.size() != ids.size()) fail(ErrorCode::kInvalidArgument, "one id per template required");
  if (batch_capacity == 0) fail(ErrorCode::kInvalidArgument, "batch capacity must be positive");
  const auto z = transform::ternarize(y, beta);
  ReferenceResult out;
  out.scores.reserve(enrolled.size());
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < enrolled.size(); ++i) {
    out.scores.push_back(transform::ternary_inner(enrolled[i], z));
    if (out.scores[i] > out.scores[best_index]) best_index = i;
  }
  if (!enrolled.empty() && out.scores[best_index] > threshold_int(tau, alpha, beta)) {
    out.match = MatchResult{true, ids[best_index], static_cast<std::uint32_t>(best_index / batch_capacity),
                            static_cast<std::uint32_t>(best_index % batch_capacity)};
  }
  return out;
}

}  // namespace idface::protocol
