// SPDX-License-Identifier: Apache-2.0
//
// fsochan - statistical channel model for hovering-UAV optical links
// Copyright (C) 2026 The fsochan authors
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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "fsochan/commands.hpp"

namespace
{
    struct Args
    {
        std::string scenario;
        std::string out;
        std::string raw;
        std::uint64_t seed = 0;
        std::size_t trials = 0;
        std::string mode;
        int grid = 0;
        double perturb = 1.0;
    };

    void add_common(CLI::App *cmd, Args &a, bool needs_scenario, bool sampling)
    {
        auto *s = cmd->add_option("--scenario", a.scenario, "scenario file (JSON)");
        if (needs_scenario)
            s->required()->check(CLI::ExistingFile);
        cmd->add_option("--out", a.out, "CSV output path (default: stdout)");
        cmd->add_option("--grid", a.grid, "number of grid points")->check(CLI::PositiveNumber);
        if (sampling)
        {
            cmd->add_option("--seed", a.seed, "random seed");
            cmd->add_option("--trials", a.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
            cmd->add_option("--mode", a.mode, "exact_quadrature | approx_formula | linearized_u");
            cmd->add_option("--raw", a.raw, "write the h samples as little-endian f64 to this file");
        }
    }

    void emit(const Args &a, const std::string &csv)
    {
        if (a.out.empty())
        {
            std::cout << csv;
            return;
        }
        std::ofstream f(a.out, std::ios::binary);
        if (!f)
            throw fsochan::ScenarioError("cannot open output file: " + a.out);
        f << csv;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"fsochan: GML statistics, outage and ergodic rate of hovering-UAV optical links"};
    app.require_subcommand(1);
    Args a;
    auto *sweep = app.add_subcommand("conditional-sweep", "conditional GML vs mean-position azimuth");
    auto *dist = app.add_subcommand("dist", "analytical PDF/CDF of the GML and Monte Carlo ECDF");
    auto *outage = app.add_subcommand("outage", "outage probability vs mean SNR");
    auto *rate = app.add_subcommand("rate", "ergodic rate vs mean SNR");
    auto *val = app.add_subcommand("validate", "run the invariant suite");
    add_common(sweep, a, true, false);
    add_common(dist, a, true, true);
    add_common(outage, a, true, true);
    add_common(rate, a, true, true);
    val->add_option("--seed", a.seed, "random seed");
    val->add_option("--trials", a.trials, "Monte Carlo trials per case")->check(CLI::PositiveNumber);
    val->add_option("--out", a.out, "report path (default: stdout)");
    val->add_option("--perturb-peak-gain", a.perturb, "scale the analytical peak gain (suite self-test)");

    CLI11_PARSE(app, argc, argv);

    try
    {
        fsochan::cli::Options o;
        o.workers = fsochan::cli::workers_from_env();
        if (a.grid > 0)
            o.grid = a.grid;
        if (a.trials > 0)
            o.trials = a.trials;
        if (!a.mode.empty())
            o.mode = fsochan::sim_mode_from_string(a.mode);
        std::vector<double> raw;
        if (!a.raw.empty())
            o.raw = &raw;

        if (val->parsed())
        {
            fsochan::cli::ValidateOptions vo;
            if (a.trials > 0)
                vo.trials = a.trials;
            if (a.seed > 0)
                vo.seed = a.seed;
            if (o.workers)
                vo.workers = *o.workers;
            vo.peak_gain_scale = a.perturb;
            const auto rep = fsochan::cli::validate(vo);
            emit(a, rep.text + (rep.passed ? "validation passed\n" : "validation FAILED\n"));
            return rep.passed ? 0 : 1;
        }

        const fsochan::Scenario sc = fsochan::load_scenario(a.scenario);
        if (a.seed > 0 || (dist->parsed() && dist->count("--seed")) || (outage->parsed() && outage->count("--seed")) ||
            (rate->parsed() && rate->count("--seed")))
            o.seed = a.seed;

        std::string csv;
        if (sweep->parsed())
            csv = fsochan::cli::conditional_sweep(sc, o);
        else if (dist->parsed())
            csv = fsochan::cli::distribution(sc, o);
        else if (outage->parsed())
            csv = fsochan::cli::outage_table(sc, o);
        else
            csv = fsochan::cli::rate_table(sc, o);
        emit(a, csv);
        if (!a.raw.empty())
            fsochan::cli::write_raw(a.raw, raw);
    }
    catch (const std::exception &e)
    {
        std::cerr << "fsochan: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
