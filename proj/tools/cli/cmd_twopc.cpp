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

#include <filesystem>
#include <iostream>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "commands.hpp"
#include "idface/error.hpp"
#include "idface/protocol/transport.hpp"
#include "idface/random.hpp"
#include "idface/template_io.hpp"
#include "idface/twopc.hpp"

namespace idface::cli {

namespace {

struct ServeOptions {
  std::string listen = "127.0.0.1:0";
  std::string shares;
  std::size_t party = 1;
  std::size_t parties = 2;
};

struct InitiatorOptions {
  std::string peers;
  std::string shares = "party0.shares";
  std::string templates;
  std::string ids;
  std::string query;
  std::size_t row = 0;
};

twopc::ShareStore load_if_present(const std::string& path) {
  if (path.empty() || !std::filesystem::exists(path)) return {};
  return twopc::ShareStore::load(path);
}

// Links to every responder, in party order 1..mu-1.
std::vector<std::unique_ptr<protocol::Link>> connect_peers(const std::string& list) {
  std::vector<std::unique_ptr<protocol::Link>> links;
  for (const auto& addr : split_list(list)) {
    links.push_back(std::make_unique<protocol::TcpLink>(protocol::parse_endpoint(addr)));
  }
  if (links.empty()) fail(ErrorCode::kInvalidArgument, "--peers needs at least one host:port");
  return links;
}

std::vector<protocol::Link*> raw(const std::vector<std::unique_ptr<protocol::Link>>& links) {
  std::vector<protocol::Link*> out;
  for (const auto& l : links) out.push_back(l.get());
  return out;
}

Rng share_rng(const RunConfig& cfg) {
  if (cfg.seed) return Rng(derive_seed(*cfg.seed, 0x7368617265));
  std::random_device dev;
  return Rng((static_cast<std::uint64_t>(dev()) << 32) ^ dev());
}

void add_initiator_options(CLI::App* sub, InitiatorOptions& o) {
  sub->add_option("--peers", o.peers, "Comma-separated host:port of parties 1..mu-1")->required();
  sub->add_option("--shares", o.shares, "Share file of party 0")->capture_default_str();
}

}  // namespace

void add_twopc_commands(CLI::App& app, RunConfig& cfg, int* status) {
  auto sopt = std::make_shared<ServeOptions>();
  auto* serve = app.add_subcommand("twopc-serve", "Run a share-holding party of the secret-sharing protocol");
  serve->add_option("--listen", sopt->listen, "host:port to listen on")->capture_default_str();
  serve->add_option("--shares", sopt->shares, "Share file, loaded at start and rewritten after each enrollment");
  serve->add_option("--party", sopt->party, "Index of this party (1..parties-1)")->capture_default_str();
  serve->add_option("--parties", sopt->parties, "Total number of parties")->capture_default_str();
  serve->callback([sopt, status] {
    if (sopt->parties < 2 || sopt->party == 0 || sopt->party >= sopt->parties) {
      fail(ErrorCode::kInvalidArgument, "need 1 <= party < parties and parties >= 2");
    }
    block_shutdown_signals();
    twopc::Party party(load_if_present(sopt->shares));
    std::mutex save_mu;
    auto inner = party.handler();
    protocol::TcpServer server(protocol::parse_endpoint(sopt->listen), [&](const protocol::Message& m) {
      auto reply = inner(m);
      if (!sopt->shares.empty() && std::holds_alternative<protocol::TwoPcAck>(reply)) {
        std::lock_guard<std::mutex> lock(save_mu);
        party.store().save(sopt->shares, sopt->party, sopt->parties);
      }
      return reply;
    });
    std::cout << "twopc-serve party " << sopt->party << " listening on port " << server.port() << " with "
              << party.store().size() << " identities" << std::endl;
    wait_for_shutdown_signal();
    server.stop();
    *status = 0;
  });

  auto eopt = std::make_shared<InitiatorOptions>();
  auto* enroll = app.add_subcommand("twopc-enroll", "Share templates among the parties");
  add_initiator_options(enroll, *eopt);
  enroll->add_option("--templates", eopt->templates, "CSV file of feature templates")->required();
  enroll->add_option("--ids", eopt->ids, "File with one id per template (default: sequential ids)");
  enroll->callback([&cfg, eopt, status] {
    cfg.validate_counts();
    auto links = connect_peers(eopt->peers);
    twopc::Initiator init(cfg.d, cfg.alpha, cfg.beta, raw(links), load_if_present(eopt->shares));
    const auto templates = transform::read_templates_file(eopt->templates);
    const auto ids = eopt->ids.empty() ? numbered_ids(init.store().size(), templates.size()) : read_ids(eopt->ids);
    if (ids.size() != templates.size()) fail(ErrorCode::kInvalidArgument, "id count differs from template count");
    Rng rng = share_rng(cfg);
    for (std::size_t i = 0; i < templates.size(); ++i) init.enroll(templates[i], ids[i], rng);
    init.store().save(eopt->shares, 0, init.party_count());
    std::cout << "enrolled " << templates.size() << " identities across " << init.party_count()
              << " parties; broadcast bits " << init.meter().enroll_bits << "\n";
    *status = 0;
  });

  auto iopt = std::make_shared<InitiatorOptions>();
  auto* identify = app.add_subcommand("twopc-identify", "Identify over shares (exit 0 accept, 3 reject)");
  add_initiator_options(identify, *iopt);
  identify->add_option("--query", iopt->query, "CSV file holding the query template")->required();
  identify->add_option("--row", iopt->row, "Row of the query file to use")->capture_default_str();
  identify->callback([&cfg, iopt, status] {
    cfg.validate_counts();
    auto links = connect_peers(iopt->peers);
    twopc::Initiator init(cfg.d, cfg.alpha, cfg.beta, raw(links), load_if_present(iopt->shares));
    const auto r = init.identify(read_query(iopt->query, iopt->row), cfg.tau);
    if (r.accepted) {
      std::cout << "accept " << r.id << "\n";
    } else {
      std::cout << "reject\n";
    }
    std::cerr << "query_bits=" << init.meter().query_bits << " response_bits=" << init.meter().response_bits << "\n";
    *status = r.accepted ? kExitAccept : kExitReject;
  });
}

}  // namespace idface::cli
