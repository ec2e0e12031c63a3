// SPDX-License-Identifier: Apache-2.0
//
// dofbc - DoF region and achievability lab for the two-user MISO broadcast channel
// Copyright (C) 2026 The dofbc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dofbc/scheduler.hpp"
#include "dofbc/simlink.hpp"

namespace dofbc::cli
{
    /// Environment variable naming the default output directory.
    inline constexpr const char *out_dir_env = "DOFBC_OUT_DIR";

    struct ExperimentConfig
    {
        double alpha1 = 0.5;
        double alpha2 = 0.2;
        Scheme scheme = Scheme::X1;
        std::optional<double> delta; // unset: default_delta
        int phases = 10;
        int t1 = 1;
        double snr_min_db = 30.0;
        double snr_max_db = 80.0;
        int snr_points = 6;
        std::size_t trials = 10000;
        std::uint64_t seed = 1;
        std::string out_dir = ".";
        double grid_step = 0.1; // sweep
        unsigned threads = 0;   // 0: hardware concurrency
        std::string plan_file;  // simulate: import this plan instead of building one

        bool operator==(const ExperimentConfig &) const = default;
    };

    /// `key = value` lines, one per field; an unset delta is omitted.
    std::string emit_config(const ExperimentConfig &cfg);

    /// Reads `key = value` lines over `base`. Unknown keys and unparsable values throw
    /// DomainError naming the key.
    ExperimentConfig parse_config(std::istream &is, ExperimentConfig base = {});

    /// Throws DomainError naming the first violated constraint.
    void validate(const ExperimentConfig &cfg);

    /// Plan for cfg.scheme; X1 uses cfg.delta or default_delta.
    PhasePlan build_plan(const ExperimentConfig &cfg);

    TrialConfig trial_config(const ExperimentConfig &cfg, PhasePlan plan);

    // Subcommands. Each writes into cfg.out_dir and returns the files it wrote.
    std::vector<std::filesystem::path> cmd_region(const ExperimentConfig &cfg);
    std::vector<std::filesystem::path> cmd_plan(const ExperimentConfig &cfg);
    std::vector<std::filesystem::path> cmd_calc(const ExperimentConfig &cfg);
    std::vector<std::filesystem::path> cmd_simulate(const ExperimentConfig &cfg);
    std::vector<std::filesystem::path> cmd_sweep(const ExperimentConfig &cfg);

    /// Entry point of the dofbc tool; returns the process exit code. Precedence of
    /// settings: built-in defaults, then DOFBC_OUT_DIR, then --config, then flags.
    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
}
