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

#ifndef IDFACE_ANALYSIS_HPP_
#define IDFACE_ANALYSIS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "idface/ahe/scheme.hpp"
#include "idface/packing.hpp"

namespace idface::analysis {

// Inverse error function on (-1, 1): rational initial guess refined by two
// Newton steps on std::erf.
double erfinv(double y);
double normal_cdf(double x);
// Upper tail 1 - normal_cdf(x), accurate for large x.
double normal_sf(double x);

// Adaptive Gauss-Kronrod (7/15) on [a, b]. Throws QuadratureFailure when the
// absolute tolerance is not met within the subdivision budget.
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 std::size_t max_intervals = 4096);

// Cut-off of the alpha-th largest |N(0,1)| coordinate: sqrt(2) erfinv(1 - alpha/d).
double order_threshold(std::size_t d, std::size_t alpha);

// Per-coordinate agreement term: probability that a coordinate survives in
// both transformed vectors with equal sign minus the probability it
// survives with opposite signs, for Gaussian coordinates at angle theta.
double agreement_probability(std::size_t d, std::size_t alpha, double theta, double abs_tol = 1e-9);

// |cos(theta) - 2 P(theta) d / alpha|.
double epsilon_theoretical(std::size_t d, std::size_t alpha, double theta, double abs_tol = 1e-6);

struct IsometryStats {
  double mean_abs = 0.0;     // mean |rescaled score - cos(theta)|
  double max_abs = 0.0;
  double mean_signed = 0.0;  // mean (rescaled score - cos(theta))
  std::size_t trials = 0;
};

// Exact-angle pairs; trial i uses the generator seeded with derive_seed(seed, i).
IsometryStats isometry_mc(std::size_t d, std::size_t alpha, std::size_t beta, double theta, std::size_t trials,
                          std::uint64_t seed, std::size_t threads = 0);

struct IsometryRow {
  double theta = 0.0;
  double epsilon = 0.0;
  IsometryStats mc;
};

// n evenly spaced angles on [lo, hi], skipping any within 1e-9 of pi/2.
std::vector<double> theta_grid(std::size_t n, double lo = 0.05, double hi = 3.0915926535897933);

std::vector<IsometryRow> isometry_report(std::size_t d, std::size_t alpha, std::size_t beta,
                                         const std::vector<double>& thetas, std::size_t trials,
                                         std::uint64_t seed, std::size_t threads = 0);

// log(C(d, alpha) * 2^alpha) via lgamma.
double codebook_log_size(std::size_t d, std::size_t alpha);
// Smallest alpha maximizing the codebook size, from the exact ratio
// f(a+1)/f(a) = 2(d-a)/(a+1).
std::size_t optimal_alpha(std::size_t d);
// All maximizers of the log-gamma scan (values within rel_tol of the max).
std::vector<std::size_t> codebook_scan_argmax(std::size_t d, double rel_tol = 1e-12);
// The floor(2d/3) rule.
std::size_t alpha_rule(std::size_t d);

struct OrderStatReport {
  double empirical_mean = 0.0;
  double theoretical = 0.0;
  double deviation = 0.0;        // |empirical_mean - theoretical|
  double empirical_std = 0.0;    // spread of the order statistic itself
  double predicted_std = 0.0;    // asymptotic normal approximation
  double standard_error = 0.0;   // empirical_std / sqrt(trials)
  std::size_t trials = 0;
};

// (d - alpha)-th smallest of d half-normal samples against order_threshold.
OrderStatReport order_stat_check(std::size_t d, std::size_t alpha, std::size_t trials, std::uint64_t seed,
                                 std::size_t threads = 0);

struct Assumption1Report {
  double mean_cosine = 0.0;     // mean <X,W>/(|X||W|)
  double bias = 0.0;            // |mean_cosine - cos(theta)|
  double mean_abs_error = 0.0;  // mean |<X,W>/(|X||W|) - cos(theta)|
  std::size_t samples = 0;
};

Assumption1Report assumption1_check(std::size_t d, double theta, std::size_t samples, std::uint64_t seed);

// ---- Communication and storage ---------------------------------------------

enum class Protocol { kIdface, kTwoPc, kMulti };

struct CostModel {
  std::uint64_t identities = 0;  // D
  ahe::BackendDescriptor backend;
  packing::PackingParams packing;
  std::size_t d = 0;
  std::size_t parties = 2;       // mu
};

// idface: 2 * ceil(D / (slot_count * m)) * ciphertext_bytes + ceil(log2 D) / 8
// twopc:  (2 * D * beta + 2 * d) / 8
// multi:  (parties - 1) * (2 * D * beta + 2 * d) / 8
double comm_cost_bytes(const CostModel& model, Protocol protocol);
// (parties - 1) * (2d + ceil(log2 D)) / 8 bytes per enrollment.
double enroll_broadcast_bytes(const CostModel& model);

std::size_t ceil_log2_u64(std::uint64_t v);

// Unit helpers. table_mb divides by 1024 then 1000, table_gb by 1024 then
// 10^6; these reproduce the mixed conventions of published cost tables.
inline double to_mib(double bytes) { return bytes / (1024.0 * 1024.0); }
inline double to_mb(double bytes) { return bytes / 1e6; }
inline double to_kib(double bytes) { return bytes / 1024.0; }
inline double table_mb(double bytes) { return bytes / 1024.0 / 1000.0; }
inline double table_gb(double bytes) { return bytes / 1024.0 / 1e6; }

}  // namespace idface::analysis

#endif  // IDFACE_ANALYSIS_HPP_
