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

#include "dofbc/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dofbc/dofcalc.hpp"
#include "dofbc/error.hpp"
#include "dofbc/io.hpp"
#include "dofbc/region.hpp"

namespace dofbc::cli
{
    namespace fs = std::filesystem;

    namespace
    {
        template <typename T>
        T parse_number(const std::string &key, const std::string &text)
        {
            T value{};
            const char *first = text.data(), *last = text.data() + text.size();
            const auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec != std::errc{} || ptr != last)
                throw DomainError("config: cannot parse " + key + " = '" + text + "'");
            return value;
        }

        Scheme parse_scheme(const std::string &text)
        {
            const auto s = scheme_from_string(text);
            if (!s)
                throw DomainError("scheme must be one of x1, x2, x3 (got '" + text + "')");
            return *s;
        }

        void write_text(const fs::path &path, const std::string &text)
        {
            std::ofstream f(path, std::ios::binary);
            if (!f)
                throw DomainError("cannot open " + path.string() + " for writing");
            f << text;
            if (!f)
                throw DomainError("write failed: " + path.string());
        }

        fs::path out_path(const ExperimentConfig &cfg, const std::string &name)
        {
            fs::create_directories(cfg.out_dir);
            return fs::path(cfg.out_dir) / name;
        }

        CsitQuality quality_of(const ExperimentConfig &cfg)
        {
            return CsitQuality(cfg.alpha1, cfg.alpha2);
        }
    }

    std::string emit_config(const ExperimentConfig &cfg)
    {
        using io::format_real;
        std::ostringstream os;
        os << "alpha1 = " << format_real(cfg.alpha1) << '\n';
        os << "alpha2 = " << format_real(cfg.alpha2) << '\n';
        os << "scheme = " << to_string(cfg.scheme) << '\n';
        if (cfg.delta)
            os << "delta = " << format_real(*cfg.delta) << '\n';
        os << "phases = " << cfg.phases << '\n';
        os << "t1 = " << cfg.t1 << '\n';
        os << "snr_min_db = " << format_real(cfg.snr_min_db) << '\n';
        os << "snr_max_db = " << format_real(cfg.snr_max_db) << '\n';
        os << "snr_points = " << cfg.snr_points << '\n';
        os << "trials = " << cfg.trials << '\n';
        os << "seed = " << cfg.seed << '\n';
        os << "out_dir = \"" << cfg.out_dir << "\"\n";
        os << "grid_step = " << format_real(cfg.grid_step) << '\n';
        os << "threads = " << cfg.threads << '\n';
        if (!cfg.plan_file.empty())
            os << "plan_file = \"" << cfg.plan_file << "\"\n";
        return os.str();
    }

    ExperimentConfig parse_config(std::istream &is, ExperimentConfig base)
    {
        std::vector<CLI::ConfigItem> items;
        try
        {
            items = CLI::ConfigINI().from_config(is);
        }
        catch (const CLI::Error &e)
        {
            throw DomainError(std::string("config: ") + e.what());
        }

        ExperimentConfig cfg = std::move(base);
        for (const auto &item : items)
        {
            // section markers emitted by the INI reader
            if (item.name == "++" || item.name == "--")
                continue;
            const std::string key = item.fullname();
            if (item.inputs.size() != 1)
                throw DomainError("config: " + key + " needs exactly one value");
            const std::string &v = item.inputs.front();

            if (key == "alpha1")
                cfg.alpha1 = parse_number<double>(key, v);
            else if (key == "alpha2")
                cfg.alpha2 = parse_number<double>(key, v);
            else if (key == "scheme")
                cfg.scheme = parse_scheme(v);
            else if (key == "delta")
                cfg.delta = parse_number<double>(key, v);
            else if (key == "phases")
                cfg.phases = parse_number<int>(key, v);
            else if (key == "t1")
                cfg.t1 = parse_number<int>(key, v);
            else if (key == "snr_min_db")
                cfg.snr_min_db = parse_number<double>(key, v);
            else if (key == "snr_max_db")
                cfg.snr_max_db = parse_number<double>(key, v);
            else if (key == "snr_points")
                cfg.snr_points = parse_number<int>(key, v);
            else if (key == "trials")
                cfg.trials = parse_number<std::size_t>(key, v);
            else if (key == "seed")
                cfg.seed = parse_number<std::uint64_t>(key, v);
            else if (key == "out_dir")
                cfg.out_dir = v;
            else if (key == "grid_step")
                cfg.grid_step = parse_number<double>(key, v);
            else if (key == "threads")
                cfg.threads = parse_number<unsigned>(key, v);
            else if (key == "plan_file")
                cfg.plan_file = v;
            else
                throw DomainError("config: unknown key '" + key + "'");
        }
        return cfg;
    }

    void validate(const ExperimentConfig &cfg)
    {
        if (!(cfg.alpha1 >= 0.0 && cfg.alpha1 <= 1.0))
            throw DomainError("alpha1 must lie in [0, 1]");
        if (!(cfg.alpha2 >= 0.0 && cfg.alpha2 <= cfg.alpha1))
            throw DomainError("alpha2 must lie in [0, alpha1]");
        if (cfg.phases < 3)
            throw DomainError("phases (S) must be at least 3");
        if (cfg.t1 < 1)
            throw DomainError("t1 must be at least 1");
        if (cfg.snr_points < 3)
            throw DomainError("snr_points must be at least 3");
        if (!(cfg.snr_max_db - cfg.snr_min_db >= 30.0))
            throw DomainError("snr grid must span at least 30 dB (3 decades)");
        if (!(cfg.snr_max_db <= 80.0))
            throw DomainError("snr_max_db must not exceed 80 dB");
        if (cfg.trials < 1)
            throw DomainError("trials must be at least 1");
        if (!(cfg.grid_step > 0.0 && cfg.grid_step <= 1.0))
            throw DomainError("grid_step must lie in (0, 1]");
        if (cfg.out_dir.empty())
            throw DomainError("out_dir must not be empty");
    }

    PhasePlan build_plan(const ExperimentConfig &cfg)
    {
        const CsitQuality q = quality_of(cfg);
        switch (cfg.scheme)
        {
        case Scheme::X1:
            if (region_case(q) != RegionCase::Case1)
                throw DomainError("scheme x1 requires 2 alpha1 - alpha2 < 1");
            return plan_x1(q, cfg.delta.value_or(default_delta(q)), cfg.phases, cfg.t1);
        case Scheme::X2:
            return plan_x2(q, cfg.phases, cfg.t1);
        case Scheme::X3:
            return plan_x3(q);
        }
        throw DomainError("unknown scheme");
    }

    TrialConfig trial_config(const ExperimentConfig &cfg, PhasePlan plan)
    {
        return TrialConfig{.plan = std::move(plan),
                           .snr_grid = snr_grid_db(cfg.snr_min_db, cfg.snr_max_db, cfg.snr_points),
                           .trials = cfg.trials,
                           .seed = cfg.seed,
                           .threads = cfg.threads};
    }

    // ------------------------------------------------------------------------

    std::vector<fs::path> cmd_region(const ExperimentConfig &cfg)
    {
        validate(cfg);
        const auto region = corners(quality_of(cfg));
        const auto json_path = out_path(cfg, "region.json");
        write_text(json_path, io::region_to_json(region).dump(2) + "\n");

        std::ostringstream csv;
        io::write_boundary_csv(csv, region, 20);
        const auto csv_path = out_path(cfg, "region_boundary.csv");
        write_text(csv_path, csv.str());
        return {json_path, csv_path};
    }

    std::vector<fs::path> cmd_plan(const ExperimentConfig &cfg)
    {
        validate(cfg);
        const auto plan = build_plan(cfg);
        const auto report = validate_plan(plan);
        if (!report.valid())
            throw DomainError("plan fails validation");
        const auto path = out_path(cfg, "plan_" + std::string(to_string(plan.scheme)) + ".json");
        write_text(path, io::plan_to_json(plan).dump(2) + "\n");
        return {path};
    }

    std::vector<fs::path> cmd_calc(const ExperimentConfig &cfg)
    {
        validate(cfg);
        const CsitQuality q = quality_of(cfg);
        std::vector<io::CalcRow> rows;
        const DofPoint limit = asymptotic_dof(cfg.scheme, q);
        if (cfg.scheme == Scheme::X3)
        {
            rows.push_back({Scheme::X3, q, 0.0, 1, achieved_dof(plan_x3(q)).point(), limit});
        }
        else
        {
            ExperimentConfig c = cfg;
            for (int s = 3; s <= cfg.phases; ++s)
            {
                c.phases = s;
                const auto plan = build_plan(c);
                rows.push_back({cfg.scheme, q, plan.delta, s, achieved_dof(plan).point(), limit});
            }
        }
        std::ostringstream csv;
        io::write_calc_csv(csv, rows);
        const auto path = out_path(cfg, "calc_" + std::string(to_string(cfg.scheme)) + ".csv");
        write_text(path, csv.str());
        return {path};
    }

    std::vector<fs::path> cmd_simulate(const ExperimentConfig &cfg)
    {
        validate(cfg);
        PhasePlan plan = [&] {
            if (cfg.plan_file.empty())
                return build_plan(cfg);
            std::ifstream f(cfg.plan_file);
            if (!f)
                throw DomainError("cannot open plan file " + cfg.plan_file);
            io::json doc;
            try
            {
                f >> doc;
            }
            catch (const io::json::exception &e)
            {
                throw DomainError("plan file: " + std::string(e.what()));
            }
            return io::plan_from_json(doc);
        }();

        const auto report = run_campaign(trial_config(cfg, std::move(plan)));
        const std::string stem = "link_" + std::string(to_string(report.scheme));

        std::ostringstream csv;
        io::write_link_csv(csv, report);
        const auto csv_path = out_path(cfg, stem + ".csv");
        write_text(csv_path, csv.str());
        const auto json_path = out_path(cfg, stem + ".json");
        write_text(json_path, io::link_to_json(report).dump(2) + "\n");
        return {csv_path, json_path};
    }

    std::vector<fs::path> cmd_sweep(const ExperimentConfig &cfg)
    {
        validate(cfg);
        const int n = static_cast<int>(std::floor(1.0 / cfg.grid_step + 1e-9));
        std::vector<double> grid;
        for (int k = 0; k <= n; ++k)
            grid.push_back(std::min(1.0, k * cfg.grid_step));
        if (grid.back() < 1.0)
            grid.push_back(1.0);

        std::vector<io::SweepRow> rows;
        for (std::size_t i = 0; i < grid.size(); ++i)
            for (std::size_t j = 0; j <= i; ++j)
            {
                const CsitQuality q(grid[i], grid[j]);
                const auto region = corners(q);
                rows.push_back({q, region.case_tag, polygon_area(region.corners),
                                region_coverage(q, std::nullopt, cfg.phases)});
            }

        std::ostringstream sweep, mono;
        io::write_sweep_csv(sweep, rows);
        io::write_monotonicity_csv(mono, rows);
        const auto sweep_path = out_path(cfg, "sweep.csv");
        write_text(sweep_path, sweep.str());
        const auto mono_path = out_path(cfg, "sweep_monotonicity.csv");
        write_text(mono_path, mono.str());
        return {sweep_path, mono_path};
    }

    // ------------------------------------------------------------------------

    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"dofbc: DoF region and achievability lab for the two-user MISO broadcast channel", "dofbc"};
        app.require_subcommand(1);
        app.fallthrough();

        ExperimentConfig flags;
        std::string scheme_text, config_file;
        double delta = 0.0;

        app.add_option("--alpha1", flags.alpha1, "CSIT quality of user 1");
        app.add_option("--alpha2", flags.alpha2, "CSIT quality of user 2");
        app.add_option("--scheme", scheme_text, "x1, x2 or x3")->check(CLI::IsMember({"x1", "x2", "x3"}));
        app.add_option("--delta", delta, "X1 slack parameter (default: half its upper bound)");
        app.add_option("--phases", flags.phases, "number of phases S");
        app.add_option("--t1", flags.t1, "duration of the first phase");
        app.add_option("--snr-min-db", flags.snr_min_db, "lowest grid SNR in dB");
        app.add_option("--snr-max-db", flags.snr_max_db, "highest grid SNR in dB");
        app.add_option("--snr-points", flags.snr_points, "number of grid points");
        app.add_option("--trials", flags.trials, "Monte Carlo slots per grid point");
        app.add_option("--seed", flags.seed, "random seed");
        app.add_option("--out", flags.out_dir, std::string("output directory (default: $") + out_dir_env + " or .)");
        app.add_option("--config", config_file, "key = value configuration file; flags override it");
        app.add_option("--grid-step", flags.grid_step, "sweep: step of the (alpha1, alpha2) grid");
        app.add_option("--threads", flags.threads, "worker threads, 0 for all cores");
        app.add_option("--plan", flags.plan_file, "simulate: plan JSON to import");

        auto *region = app.add_subcommand("region", "optimal DoF polygon as JSON plus boundary samples");
        auto *plan = app.add_subcommand("plan", "phase plan of the chosen scheme as JSON");
        auto *calc = app.add_subcommand("calc", "finite-S DoF accounting against the limit, S = 3..phases");
        auto *simulate = app.add_subcommand("simulate", "Monte Carlo link-level campaign");
        auto *sweep = app.add_subcommand("sweep", "region coverage over an (alpha1, alpha2) grid");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError &e)
        {
            return app.exit(e, out, err);
        }

        try
        {
            ExperimentConfig cfg;
            if (const char *env = std::getenv(out_dir_env); env && *env)
                cfg.out_dir = env;
            if (!config_file.empty())
            {
                std::ifstream f(config_file);
                if (!f)
                    throw DomainError("cannot open config file " + config_file);
                cfg = parse_config(f, cfg);
            }

            auto given = [&app](const char *name) { return app.count(name) > 0; };
            if (given("--alpha1"))
                cfg.alpha1 = flags.alpha1;
            if (given("--alpha2"))
                cfg.alpha2 = flags.alpha2;
            if (given("--scheme"))
                cfg.scheme = parse_scheme(scheme_text);
            if (given("--delta"))
                cfg.delta = delta;
            if (given("--phases"))
                cfg.phases = flags.phases;
            if (given("--t1"))
                cfg.t1 = flags.t1;
            if (given("--snr-min-db"))
                cfg.snr_min_db = flags.snr_min_db;
            if (given("--snr-max-db"))
                cfg.snr_max_db = flags.snr_max_db;
            if (given("--snr-points"))
                cfg.snr_points = flags.snr_points;
            if (given("--trials"))
                cfg.trials = flags.trials;
            if (given("--seed"))
                cfg.seed = flags.seed;
            if (given("--out"))
                cfg.out_dir = flags.out_dir;
            if (given("--grid-step"))
                cfg.grid_step = flags.grid_step;
            if (given("--threads"))
                cfg.threads = flags.threads;
            if (given("--plan"))
                cfg.plan_file = flags.plan_file;

            std::vector<fs::path> written;
            if (region->parsed())
                written = cmd_region(cfg);
            else if (plan->parsed())
                written = cmd_plan(cfg);
            else if (calc->parsed())
                written = cmd_calc(cfg);
            else if (simulate->parsed())
                written = cmd_simulate(cfg);
            else if (sweep->parsed())
                written = cmd_sweep(cfg);

            for (const auto &p : written)
                out << p.string() << '\n';
            return 0;
        }
        catch (const std::exception &e)
        {
            err << "dofbc: " << e.what() << '\n';
            return 2;
        }
    }
}
