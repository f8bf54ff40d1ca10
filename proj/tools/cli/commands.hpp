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

#ifndef IDFACE_TOOLS_COMMANDS_HPP_
#define IDFACE_TOOLS_COMMANDS_HPP_

#include <CLI11.hpp>

#include "run_config.hpp"

namespace idface::cli {

// Each function adds its subcommands to app. Callbacks read cfg after
// parsing and store the process exit status in *status.
void add_data_commands(CLI::App& app, RunConfig& cfg, int* status);
void add_identify_commands(CLI::App& app, RunConfig& cfg, int* status);
void add_bench_command(CLI::App& app, RunConfig& cfg, int* status);
void add_analyze_command(CLI::App& app, RunConfig& cfg, int* status);
void add_twopc_commands(CLI::App& app, RunConfig& cfg, int* status);

// Exit status of identify-style commands.
inline constexpr int kExitAccept = 0;
inline constexpr int kExitReject = 3;

// Servers block SIGINT and SIGTERM before starting threads, then wait for
// one of them on the main thread.
void block_shutdown_signals();
void wait_for_shutdown_signal();

}  // namespace idface::cli

#endif  // IDFACE_TOOLS_COMMANDS_HPP_
