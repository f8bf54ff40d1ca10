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

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numbers>
#include <string>

#include "commands.hpp"
#include "idface/ahe/simulated_simd.hpp"
#include "idface/analysis.hpp"
#include "idface/dbenc.hpp"
#include "idface/error.hpp"
#include "idface/random.hpp"

namespace idface::cli {

namespace {

struct AnalyzeOptions {
  std::string kind;
  std::string out;
  std::size_t trials = 200;
  std::size_t grid = 20;
  double theta_lo = 0.05;
  double theta_hi = std::numbers::pi - 0.05;
  std::string dims;
  std::string identities = "1000000";
  std::string parties = "2,3,6,11,21";
};

ahe::BackendDescriptor cost_backend(const RunConfig& cfg) {
  if (ahe::parse_backend(cfg.backend) == ahe::BackendKind::kSimulatedSimd) {
    return {ahe::BackendKind::kSimulatedSimd, ahe::SimulatedSimd::kDefaultSlotCount,
            ahe::SimulatedSimd::kDefaultSlotBits, ahe::SimulatedSimd::kDefaultCiphertextBytes};
  }
  return {ahe::BackendKind::kPaillier, 1, cfg.modulus_bits, 2 * ((cfg.modulus_bits + 7) / 8)};
}

void isometry(const RunConfig& cfg, const AnalyzeOptions& o, std::ostream& out) {
  const auto thetas = analysis::theta_grid(o.grid, o.theta_lo, o.theta_hi);
  const auto rows = analysis::isometry_report(cfg.d, cfg.alpha, cfg.beta, thetas, o.trials, cfg.seed_or(0),
                                              cfg.threads);
  out << "d,alpha,beta,theta,cos_theta,epsilon,mc_mean_abs,mc_max_abs,mc_mean_signed,trials\n";
  for (const auto& r : rows) {
    out << cfg.d << "," << cfg.alpha << "," << cfg.beta << "," << r.theta << "," << std::cos(r.theta) << ","
        << r.epsilon << "," << r.mc.mean_abs << "," << r.mc.max_abs << "," << r.mc.mean_signed << "," << r.mc.trials
        << "\n";
  }
}

void codebook(const std::vector<std::uint64_t>& dims, std::ostream& out) {
  out << "d,alpha,log_size,rule_alpha,optimal_alpha\n";
  for (auto d : dims) {
    const auto rule = analysis::alpha_rule(d);
    const auto best = analysis::optimal_alpha(d);
    for (std::size_t a = 1; a <= d; ++a) {
      out << d << "," << a << "," << analysis::codebook_log_size(d, a) << "," << rule << "," << best << "\n";
    }
  }
}

void cost(const RunConfig& cfg, const AnalyzeOptions& o, std::ostream& out) {
  analysis::CostModel model;
  model.backend = cost_backend(cfg);
  model.packing = packing::capacity(model.backend.slot_bits, cfg.alpha, cfg.beta);
  model.d = cfg.d;
  out << "protocol,backend,identities,d,alpha,beta,m,parties,bytes,mib,mb\n";
  auto row = [&](const std::string& name, std::size_t parties, double bytes) {
    out << name << "," << ahe::backend_name(model.backend.kind) << "," << model.identities << "," << model.d << ","
        << cfg.alpha << "," << cfg.beta << "," << model.packing.m << "," << parties << "," << bytes << ","
        << analysis::to_mib(bytes) << "," << analysis::to_mb(bytes) << "\n";
  };
  for (auto D : parse_u64_list(o.identities)) {
    model.identities = D;
    model.parties = 2;
    row("idface", 2, analysis::comm_cost_bytes(model, analysis::Protocol::kIdface));
    row("twopc", 2, analysis::comm_cost_bytes(model, analysis::Protocol::kTwoPc));
    row("storage", 1, static_cast<double>(dbenc::encrypted_storage_bytes(D, model.packing, model.backend, cfg.d)));
    for (auto mu : parse_u64_list(o.parties)) {
      model.parties = mu;
      row("multi", mu, analysis::comm_cost_bytes(model, analysis::Protocol::kMulti));
      row("enroll-broadcast", mu, analysis::enroll_broadcast_bytes(model));
    }
  }
}

void orderstat(const RunConfig& cfg, const AnalyzeOptions& o, const std::vector<std::uint64_t>& dims,
               std::ostream& out) {
  out << "d,alpha,trials,empirical_mean,theoretical,deviation,empirical_std,predicted_std,standard_error\n";
  for (auto d : dims) {
    // Keep the configured alpha/d ratio when scanning dimensions.
    const auto alpha = static_cast<std::size_t>(
        std::llround(static_cast<double>(cfg.alpha) * static_cast<double>(d) / static_cast<double>(cfg.d)));
    const auto r = analysis::order_stat_check(d, alpha, o.trials, cfg.seed_or(0), cfg.threads);
    out << d << "," << alpha << "," << r.trials << "," << r.empirical_mean << "," << r.theoretical << ","
        << r.deviation << "," << r.empirical_std << "," << r.predicted_std << "," << r.standard_error << "\n";
  }
}

}  // namespace

void add_analyze_command(CLI::App& app, RunConfig& cfg, int* status) {
  auto opt = std::make_shared<AnalyzeOptions>();
  auto* analyze = app.add_subcommand("analyze", "Numerical reports as CSV: isometry | codebook | cost | orderstat");
  analyze->add_option("kind", opt->kind, "Report kind")
      ->required()
      ->check(CLI::IsMember({"isometry", "codebook", "cost", "orderstat"}));
  analyze->add_option("--out", opt->out, "CSV output file (default: stdout)");
  analyze->add_option("--trials", opt->trials, "Monte-Carlo trials per point")->capture_default_str();
  analyze->add_option("--grid", opt->grid, "Number of angles (isometry)")->capture_default_str();
  analyze->add_option("--theta-lo", opt->theta_lo, "Smallest angle in radians")->capture_default_str();
  analyze->add_option("--theta-hi", opt->theta_hi, "Largest angle in radians")->capture_default_str();
  analyze->add_option("--dims", opt->dims, "Comma-separated dimensions (codebook, orderstat; default: --d)");
  analyze->add_option("--identities", opt->identities, "Comma-separated database sizes (cost)")
      ->capture_default_str();
  analyze->add_option("--parties", opt->parties, "Comma-separated party counts (cost)")->capture_default_str();
  analyze->callback([&cfg, opt, status] {
    cfg.validate_counts();
    std::ofstream file;
    if (!opt->out.empty()) {
      file.open(opt->out);
      if (!file) fail(ErrorCode::kIoFailure, "cannot write " + opt->out);
    }
    std::ostream& out = opt->out.empty() ? std::cout : file;
    out << std::setprecision(10);
    const auto dims = opt->dims.empty() ? std::vector<std::uint64_t>{cfg.d} : parse_u64_list(opt->dims);
    if (opt->kind == "isometry") {
      isometry(cfg, *opt, out);
    } else if (opt->kind == "codebook") {
      codebook(dims, out);
    } else if (opt->kind == "cost") {
      cost(cfg, *opt, out);
    } else {
      orderstat(cfg, *opt, dims, out);
    }
    *status = 0;
  });
}

}  // namespace idface::cli
