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
#include <string>
#include <vector>

#include "commands.hpp"
#include "idface/ahe/keyfile.hpp"
#include "idface/ahe/paillier.hpp"
#include "idface/db_store.hpp"
#include "idface/error.hpp"
#include "idface/protocol/roles.hpp"
#include "idface/protocol/transport.hpp"
#include "idface/template_io.hpp"

namespace idface::cli {

namespace {

namespace fs = std::filesystem;

struct EnrollOptions {
  std::string templates;
  std::string ids;
};

struct IdentifyOptions {
  std::string query;
  std::size_t row = 0;
  std::string transcript;
};

struct ServeOptions {
  std::string listen = "127.0.0.1:0";
};

std::string require_db(const RunConfig& cfg) {
  if (cfg.db.empty()) fail(ErrorCode::kInvalidArgument, "--db is required");
  return cfg.db;
}

std::string public_key_path(const RunConfig& cfg) {
  if (!cfg.public_key.empty()) return cfg.public_key;
  return (fs::path(require_db(cfg)) / "public.key").string();
}

// Opens the database and returns a local server holding all of it.
std::unique_ptr<protocol::LocalServer> open_local(const RunConfig& cfg) {
  auto pk = load_public(cfg, public_key_path(cfg));
  auto store = dbenc::DbStore::open(require_db(cfg));
  const auto& meta = store.meta();
  auto server = std::make_unique<protocol::LocalServer>(pk, meta.packing, meta.d, cfg.threads);
  server->load(store.load_all(*pk));
  return server;
}

void print_match(const protocol::MatchResult& r) {
  if (r.accepted) {
    std::cout << "accept " << r.id << "\n";
  } else {
    std::cout << "reject\n";
  }
}

}  // namespace

void add_identify_commands(CLI::App& app, RunConfig& cfg, int* status) {
  auto eopt = std::make_shared<EnrollOptions>();
  auto* enroll = app.add_subcommand("enroll", "Encrypt templates into the database directory");
  enroll->add_option("--templates,--input", eopt->templates, "CSV file of feature templates")->required();
  enroll->add_option("--ids", eopt->ids, "File with one id per template (default: sequential ids)");
  enroll->callback([&cfg, eopt, status] {
    cfg.validate_counts();
    const std::string dir = require_db(cfg);
    auto pk = load_public(cfg, public_key_path(cfg));
    const bool fresh = !fs::exists(fs::path(dir) / "meta.json");
    std::optional<dbenc::DbStore> store;
    if (fresh) {
      fs::create_directories(dir);
      dbenc::DbMeta meta;
      meta.d = cfg.d;
      meta.packing = packing_for(cfg, *pk);
      meta.backend = pk->descriptor();
      meta.key_fingerprint = pk->key_id();
      store.emplace(dbenc::DbStore::create(dir, meta));
      if (const auto* paillier = dynamic_cast<const ahe::PaillierPublic*>(pk.get())) {
        ahe::write_public_key((fs::path(dir) / "public.key").string(), paillier->key());
      }
    } else {
      store.emplace(dbenc::DbStore::open(dir));
    }
    const auto& meta = store->meta();
    const auto templates = transform::read_templates_file(eopt->templates);
    const auto ids = eopt->ids.empty() ? numbered_ids(meta.identity_count(), templates.size()) : read_ids(eopt->ids);
    for (const auto& t : templates) {
      if (t.dim() != meta.d) fail(ErrorCode::kDimensionMismatch, "template dimension differs from the database");
    }
    if (ids.size() != templates.size()) fail(ErrorCode::kInvalidArgument, "id count differs from template count");
    auto batches = dbenc::idface_enc_db_all(templates, ids, meta.packing, *pk, cfg.threads);
    for (const auto& b : batches) store->append(b, *pk);
    std::cout << "enrolled " << templates.size() << " identities in " << batches.size() << " batches; database holds "
              << store->meta().identity_count() << " identities, " << store->ciphertext_file_bytes()
              << " ciphertext bytes\n";
    *status = 0;
  });

  auto iopt = std::make_shared<IdentifyOptions>();
  auto* identify = app.add_subcommand("identify", "Identify one query template (exit 0 accept, 3 reject)");
  identify->add_option("--query,--input", iopt->query, "CSV file holding the query template")->required();
  identify->add_option("--row", iopt->row, "Row of the query file to use")->capture_default_str();
  identify->add_option("--transcript", iopt->transcript, "Write every frame sent or received to this file");
  identify->callback([&cfg, iopt, status] {
    const auto y = read_query(iopt->query, iopt->row);
    auto transcript = std::make_shared<protocol::Transcript>();
    protocol::MatchResult result;
    if (!cfg.local_addr.empty()) {
      protocol::TcpLink link(protocol::parse_endpoint(cfg.local_addr));
      link.set_transcript(transcript);
      const auto reply = std::get<protocol::IdentifyReply>(
          protocol::expect_ok(link.call(protocol::IdentifyRequest{cfg.tau, y.values()})));
      result.accepted = reply.accept;
      result.id = reply.id;
    } else {
      auto local = open_local(cfg);
      std::unique_ptr<protocol::Link> key_link;
      std::unique_ptr<protocol::KeyServer> key_server;
      if (!cfg.key_addr.empty()) {
        key_link = std::make_unique<protocol::TcpLink>(protocol::parse_endpoint(cfg.key_addr));
      } else {
        key_server = std::make_unique<protocol::KeyServer>(load_secret(cfg), local->params());
        key_link = std::make_unique<protocol::InProcessLink>(key_server->handler());
      }
      key_link->set_transcript(transcript);
      result = local->identify(y, cfg.tau, *key_link);
    }
    if (!iopt->transcript.empty()) transcript->dump(iopt->transcript);
    print_match(result);
    *status = result.accepted ? kExitAccept : kExitReject;
  });

  auto lopt = std::make_shared<ServeOptions>();
  auto* serve_local = app.add_subcommand("serve-local", "Serve identify requests over the encrypted database");
  serve_local->add_option("--listen", lopt->listen, "host:port to listen on")->capture_default_str();
  serve_local->callback([&cfg, lopt, status] {
    if (cfg.key_addr.empty()) fail(ErrorCode::kInvalidArgument, "--key-addr is required");
    block_shutdown_signals();
    auto local = open_local(cfg);
    protocol::TcpLink key_link(protocol::parse_endpoint(cfg.key_addr));
    protocol::TcpServer server(protocol::parse_endpoint(lopt->listen),
                               [&](const protocol::Message& m) { return local->handle_message(m, key_link); });
    std::cout << "serve-local listening on port " << server.port() << " with " << local->identity_count()
              << " identities" << std::endl;
    wait_for_shutdown_signal();
    server.stop();
    *status = 0;
  });

  auto kopt = std::make_shared<ServeOptions>();
  auto* serve_key = app.add_subcommand("serve-key", "Serve score decryption for a local server");
  serve_key->add_option("--listen", kopt->listen, "host:port to listen on")->capture_default_str();
  serve_key->callback([&cfg, kopt, status] {
    block_shutdown_signals();
    protocol::KeyServer key_server(load_secret(cfg));
    protocol::TcpServer server(protocol::parse_endpoint(kopt->listen), key_server.handler());
    std::cout << "serve-key listening on port " << server.port() << std::endl;
    wait_for_shutdown_signal();
    server.stop();
    *status = 0;
  });
}

}  // namespace idface::cli
