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

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "commands.hpp"
#include "idface/ahe/keyfile.hpp"
#include "idface/ahe/paillier.hpp"
#include "idface/error.hpp"
#include "idface/random.hpp"
#include "idface/template_io.hpp"
#include "idface/transform.hpp"

namespace idface::cli {

namespace {

struct KeygenOptions {
  std::string public_out = "idface.pub";
};

struct GenOptions {
  std::size_t count = 1000;
  std::string out = "templates.csv";
  std::string ids_out;
};

}  // namespace

void add_data_commands(CLI::App& app, RunConfig& cfg, int* status) {
  auto kopt = std::make_shared<KeygenOptions>();
  auto* keygen = app.add_subcommand("keygen", "Generate a Paillier key pair");
  keygen->add_option("--public-out", kopt->public_out, "Public key output file")->capture_default_str();
  keygen->callback([&cfg, kopt, status] {
    auto rng = cfg.random_source(0x6b6579);
    const auto kp = ahe::paillier_keygen(cfg.modulus_bits, *rng);
    ahe::write_secret_key(cfg.secret_key, kp.sec);
    ahe::write_public_key(kopt->public_out, kp.pub);
    std::cout << "modulus_bits=" << kp.pub.modulus_bits() << " fingerprint=" << std::hex << kp.pub.fingerprint()
              << std::dec << "\nsecret=" << cfg.secret_key << "\npublic=" << kopt->public_out << "\n";
    *status = 0;
  });

  auto gopt = std::make_shared<GenOptions>();
  auto* gen = app.add_subcommand("gen-templates", "Write random unit-norm Gaussian templates as CSV");
  gen->add_option("--count", gopt->count, "Number of templates")->capture_default_str()->check(
      CLI::PositiveNumber);
  gen->add_option("--out", gopt->out, "Output CSV file")->capture_default_str();
  gen->add_option("--ids-out", gopt->ids_out, "Optional file receiving one generated id per line");
  gen->callback([&cfg, gopt, status] {
    Rng rng(derive_seed(cfg.seed_or(0), 0x67656e));
    std::vector<transform::FeatureTemplate> rows;
    rows.reserve(gopt->count);
    for (std::size_t i = 0; i < gopt->count; ++i) rows.push_back(transform::random_unit(cfg.d, rng));
    transform::write_templates_file(gopt->out, rows);
    if (!gopt->ids_out.empty()) {
      std::ofstream ids(gopt->ids_out);
      if (!ids) fail(ErrorCode::kIoFailure, "cannot write " + gopt->ids_out);
      for (const auto& id : numbered_ids(0, gopt->count)) ids << id << "\n";
    }
    std::cout << "wrote " << gopt->count << " templates of dimension " << cfg.d << " to " << gopt->out << "\n";
    *status = 0;
  });
}

}  // namespace idface::cli
