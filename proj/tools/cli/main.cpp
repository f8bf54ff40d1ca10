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

#include <csignal>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "idface/error.hpp"

namespace idface::cli {

void block_shutdown_signals() {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
}

void wait_for_shutdown_signal() {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  int sig = 0;
  sigwait(&set, &sig);
}

}  // namespace idface::cli

namespace {

bool seed_flag_given(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--seed") == 0 || std::strncmp(argv[i], "--seed=", 7) == 0) return true;
  }
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  using idface::cli::RunConfig;
  RunConfig cfg;
  int status = 0;

  CLI::App app{"Privacy-preserving face identification over encrypted templates"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file; flags take precedence");

  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Seed for all randomness (IDFACE_SEED overrides the config file)");
  app.add_option("--d", cfg.d, "Template dimension")->capture_default_str();
  app.add_option("--alpha", cfg.alpha, "Nonzero count of enrolled templates")->capture_default_str();
  app.add_option("--beta", cfg.beta, "Nonzero count of queries")->capture_default_str();
  app.add_option("--tau,--threshold", cfg.tau, "Cosine acceptance threshold")->capture_default_str();
  app.add_option("--backend", cfg.backend, "paillier | simulated-simd")->capture_default_str();
  app.add_option("--mock-mode", cfg.mock_mode, "Must be 'insecure-mock' to use the simulated-simd backend");
  app.add_option("--modulus-bits", cfg.modulus_bits, "Paillier modulus size")->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads (0 = logical cores)")->capture_default_str();
  app.add_option("--db", cfg.db, "Encrypted database directory");
  app.add_option("--secret-key,--keyfile", cfg.secret_key, "Paillier secret key file")->capture_default_str();
  app.add_option("--public-key", cfg.public_key, "Paillier public key file (default: <db>/public.key)");
  app.add_option("--encryption", cfg.encryption, "standard | fixed-base")->capture_default_str();
  app.add_option("--local-addr", cfg.local_addr, "Local server host:port");
  app.add_option("--key-addr,--key-server", cfg.key_addr, "Key server host:port");

  idface::cli::add_data_commands(app, cfg, &status);
  idface::cli::add_identify_commands(app, cfg, &status);
  idface::cli::add_bench_command(app, cfg, &status);
  idface::cli::add_analyze_command(app, cfg, &status);
  idface::cli::add_twopc_commands(app, cfg, &status);

  // Resolve the seed before any subcommand callback runs: an explicit flag
  // wins, then IDFACE_SEED, then the config file.
  app.parse_complete_callback([&] {
    const char* env = std::getenv("IDFACE_SEED");
    if (env != nullptr && !seed_flag_given(argc, argv)) {
      try {
        cfg.seed = std::stoull(env);
      } catch (const std::exception&) {
        idface::fail(idface::ErrorCode::kInvalidArgument, std::string("IDFACE_SEED is not an integer: ") + env);
      }
    } else if (seed_opt->count() > 0) {
      cfg.seed = seed;
    }
    cfg.validate();
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const idface::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 10 + static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return status;
}
