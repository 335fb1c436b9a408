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
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fsochan/commands.hpp"
#include "fsochan/presets.hpp"
#include "fsochan/scenario.hpp"

using namespace fsochan;

namespace
{
    const std::string scenario_dir = FSOCHAN_SCENARIO_DIR;

    Scenario load(const std::string &name) { return load_scenario(scenario_dir + "/" + name + ".json"); }

    struct Csv
    {
        std::map<std::string, std::string> meta;
        std::vector<std::string> columns;
        std::vector<std::vector<double>> rows;

        std::size_t col(const std::string &name) const
        {
            for (std::size_t i = 0; i < columns.size(); ++i)
                if (columns[i] == name)
                    return i;
            ADD_FAILURE() << "no column " << name;
            return 0;
        }
        double meta_num(const std::string &key) const { return std::strtod(meta.at(key).c_str(), nullptr); }
    };

    Csv parse_csv(const std::string &text)
    {
        Csv c;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line))
        {
            if (line.rfind("# ", 0) == 0)
            {
                const auto colon = line.find(": ");
                if (colon != std::string::npos)
                    c.meta[line.substr(2, colon - 2)] = line.substr(colon + 2);
                continue;
            }
            std::vector<std::string> cells;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ','))
                cells.push_back(cell);
            if (c.columns.empty())
            {
                c.columns = cells;
                continue;
            }
            std::vector<double> row;
            for (const auto &s : cells)
                row.push_back(std::strtod(s.c_str(), nullptr));
            c.rows.push_back(row);
        }
        return c;
    }

    std::string slurp(const std::string &path)
    {
        std::ifstream f(path, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }

    const char *minimal = R"({"geometry": {"distance_m": 500}, "fluctuation": {"model": "independent_gaussian"}})";
}

TEST(Scenario, MinimalFileTakesReferenceDefaults)
{
    const Scenario sc = parse_scenario(minimal);
    EXPECT_EQ(sc.distance, 500.0);
    EXPECT_DOUBLE_EQ(sc.azimuth, std::numbers::pi / 8.0);
    EXPECT_DOUBLE_EQ(sc.polar, 5.0 * std::numbers::pi / 8.0);
    EXPECT_EQ(sc.altitude, 120.0);
    EXPECT_EQ(sc.beam_width(), 0.3);
    EXPECT_EQ(sc.aperture_radius, 0.1);
    EXPECT_NEAR(sc.snr_threshold, 2.0 * std::numbers::pi / std::numbers::e, 1e-15);
    EXPECT_EQ(sc.hash.size(), 16u);
}

TEST(Scenario, UnknownKeysRejectedAtEveryLevel)
{
    EXPECT_THROW(parse_scenario(R"({"geometry": {}, "fluctuation": {"model": "independent_gaussian"}, "extra": 1})"),
                 ScenarioError);
    EXPECT_THROW(parse_scenario(R"({"geometry": {"distance": 500}, "fluctuation": {"model": "independent_gaussian"}})"),
                 ScenarioError);
    EXPECT_THROW(parse_scenario(R"({"geometry": {}, "fluctuation": {"model": "independent_gaussian", "sigma": 1}})"),
                 ScenarioError);
    EXPECT_THROW(parse_scenario(
                     R"({"geometry": {}, "fluctuation": {"model": "independent_gaussian"}, "simulation": {"trails": 5}})"),
                 ScenarioError);
    try
    {
        parse_scenario(R"({"geometry": {}, "fluctuation": {"model": "independent_gaussian"}, "link": {"rate": 1}})");
        FAIL() << "expected ScenarioError";
    }
    catch (const ScenarioError &e)
    {
        EXPECT_NE(std::string(e.what()).find("link"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("rate"), std::string::npos);
    }
}

TEST(Scenario, AnglesNeedUnitSuffix)
{
    const Scenario deg = parse_scenario(
        R"({"geometry": {"azimuth": "30deg", "polar": "90 deg"}, "fluctuation": {"model": "independent_gaussian"}})");
    const Scenario rad = parse_scenario(
        R"({"geometry": {"azimuth": "0.5235987755982988rad", "polar": "1.5707963267948966rad"},
            "fluctuation": {"model": "independent_gaussian"}})");
    EXPECT_NEAR(deg.azimuth, std::numbers::pi / 6.0, 1e-15);
    EXPECT_NEAR(deg.polar, std::numbers::pi / 2.0, 1e-15);
    EXPECT_NEAR(rad.azimuth, deg.azimuth, 1e-15);
    EXPECT_NEAR(rad.polar, deg.polar, 1e-15);
    EXPECT_THROW(parse_scenario(R"({"geometry": {"azimuth": 0.5}, "fluctuation": {"model": "independent_gaussian"}})"),
                 ScenarioError);
    EXPECT_THROW(parse_scenario(R"({"geometry": {"azimuth": "0.5"}, "fluctuation": {"model": "independent_gaussian"}})"),
                 ScenarioError);
    EXPECT_THROW(
        parse_scenario(R"({"geometry": {"azimuth": "0.5grad"}, "fluctuation": {"model": "independent_gaussian"}})"),
        ScenarioError);
}

TEST(Scenario, InvalidContentRejected)
{
    EXPECT_THROW(parse_scenario("{"), ScenarioError);
    EXPECT_THROW(parse_scenario(R"({"fluctuation": {"model": "independent_gaussian"}})"), ScenarioError);
    EXPECT_THROW(parse_scenario(R"({"geometry": {}})"), ScenarioError);
    EXPECT_THROW(parse_scenario(R"({"geometry": {}, "fluctuation": {"model": "brownian"}})"), ScenarioError);
    EXPECT_THROW(parse_scenario(R"({"geometry": {"distance_m": -1}, "fluctuation": {"model": "independent_gaussian"}})"),
                 ScenarioError);
    EXPECT_THROW(parse_scenario(R"({"geometry": {}, "fluctuation": {"model": "correlated_uniform"}})"), ScenarioError);
    EXPECT_THROW(parse_scenario(R"({"geometry": {}, "fluctuation": {"model": "correlated_uniform", "wind_std_m": 0.1,
                                    "position_std_m": [0.1, 0.1, 0.1]}})"),
                 ScenarioError);
    EXPECT_THROW(parse_scenario(R"({"geometry": {}, "fluctuation": {"model": "independent_gaussian"},
                                    "link": {"rate_threshold": 0.5, "snr_threshold": 2}})"),
                 ScenarioError);
    EXPECT_THROW(parse_scenario(R"({"geometry": {}, "fluctuation": {"model": "independent_gaussian"},
                                    "weather": "volcanic_ash"})"),
                 ScenarioError);
    EXPECT_THROW(parse_scenario(R"({"geometry": {}, "fluctuation": {"model": "independent_gaussian"},
                                    "simulation": {"mode": "guess"}})"),
                 ScenarioError);
}

TEST(Scenario, HashTracksContentNotFormatting)
{
    const Scenario a = parse_scenario(minimal);
    const Scenario b = parse_scenario(R"({ "geometry" : { "distance_m" : 500 },
                                            "fluctuation" : { "model" : "independent_gaussian" } })");
    const Scenario c = parse_scenario(R"({"geometry": {"distance_m": 501}, "fluctuation": {"model": "independent_gaussian"}})");
    EXPECT_EQ(a.hash, b.hash);
    EXPECT_NE(a.hash, c.hash);
}

TEST(Scenario, RateThresholdAndSnrGrid)
{
    const Scenario sc = parse_scenario(R"({"geometry": {}, "fluctuation": {"model": "independent_gaussian"},
        "link": {"rate_threshold": 1, "mean_snr_db": {"start": 10, "stop": 30, "step": 10}}})");
    EXPECT_NEAR(sc.snr_threshold, 2.0 * std::numbers::pi / std::numbers::e * 2.0, 1e-14);
    EXPECT_EQ(sc.snr_grid_db(), (std::vector<double>{10.0, 20.0, 30.0}));
    EXPECT_EQ(sc.snr_grid_db(5), (std::vector<double>{10.0, 15.0, 20.0, 25.0, 30.0}));
}

TEST(Scenario, ShippedDistributionFilesMatchReferenceCases)
{
    for (const auto &c : presets::distribution_cases())
    {
        SCOPED_TRACE(c.name);
        const Scenario sc = load("dist_" + c.name);
        const GmlDist a = sc.gml_dist();
        const GmlDist b = make_gml_dist(c.setup.model, c.setup.mean, c.setup.beam_width, c.setup.aperture_radius);
        EXPECT_EQ(a.mis.kind, b.mis.kind);
        EXPECT_NEAR(a.approx.peak_gain, b.approx.peak_gain, 1e-13 * b.approx.peak_gain);
        EXPECT_NEAR(a.approx.width_factor, b.approx.width_factor, 1e-12 * b.approx.width_factor);
        EXPECT_NEAR(a.mis.mean_square, b.mis.mean_square, 1e-12 * b.mis.mean_square);
        EXPECT_NEAR(a.mis.q, b.mis.q, 1e-9);
        EXPECT_EQ(sc.sim.mode, SimMode::linearized);
    }
}

TEST(Scenario, ShippedLinkFilesMatchReferenceCases)
{
    for (const auto &c : presets::link_cases())
    {
        SCOPED_TRACE(c.name);
        const Scenario sc = load("link_" + c.name);
        const GmlDist a = sc.gml_dist();
        const GmlDist b = make_gml_dist(c.setup.model, c.setup.mean, c.setup.beam_width, c.setup.aperture_radius);
        EXPECT_EQ(a.mis.kind, b.mis.kind);
        EXPECT_NEAR(a.approx.peak_gain, b.approx.peak_gain, 1e-13 * b.approx.peak_gain);
        EXPECT_NEAR(a.mis.mean_square, b.mis.mean_square, 1e-12 * b.mis.mean_square);
        EXPECT_NEAR(sc.snr_threshold, 2.0 * std::numbers::pi / std::numbers::e, 1e-14);
    }
}

TEST(Cli, FormatIsSeventeenDigitScientific)
{
    EXPECT_EQ(cli::fmt(0.1), "1.0000000000000001e-01");
    EXPECT_EQ(cli::fmt(0.0), "0.0000000000000000e+00");
    EXPECT_EQ(cli::fmt(-2.5e-300), "-2.5000000000000000e-300");
    EXPECT_EQ(cli::fmt(std::nan("")), "nan");
}

TEST(Cli, WorkersFromEnvironment)
{
    ::setenv("FSO_WORKERS", "7", 1);
    EXPECT_EQ(cli::workers_from_env(), 7u);
    ::setenv("FSO_WORKERS", "0", 1);
    EXPECT_THROW(cli::workers_from_env(), ScenarioError);
    ::setenv("FSO_WORKERS", "3x", 1);
    EXPECT_THROW(cli::workers_from_env(), ScenarioError);
    ::unsetenv("FSO_WORKERS");
    EXPECT_FALSE(cli::workers_from_env().has_value());
}

TEST(Cli, HeaderCarriesHashAndModelConstants)
{
    const Scenario sc = load("dist_independent_oblique_sigma1");
    cli::Options o;
    o.trials = 2000;
    const Csv c = parse_csv(cli::distribution(sc, o));
    EXPECT_EQ(c.meta.at("scenario_hash"), sc.hash);
    const GmlDist g = sc.gml_dist();
    EXPECT_EQ(c.meta_num("A0"), g.approx.peak_gain);
    EXPECT_EQ(c.meta_num("t"), g.approx.width_factor);
    EXPECT_EQ(c.meta_num("varpi"), *g.shape());
    EXPECT_EQ(c.meta_num("q"), g.mis.q);
    EXPECT_EQ(c.meta_num("Omega"), g.mis.mean_square);
    EXPECT_EQ(c.meta_num("h1"), g.h_min());
    EXPECT_EQ(c.meta.at("trials"), "2000");
    EXPECT_EQ(c.columns, (std::vector<std::string>{"h", "pdf_analytic", "cdf_analytic", "ecdf_mc"}));
    EXPECT_EQ(c.rows.size(), 200u);
}

TEST(Cli, ConditionalSweepProperties)
{
    const Scenario sc = load("conditional_sweep_orthogonal_plane");
    const Csv c = parse_csv(cli::conditional_sweep(sc, {}));
    ASSERT_EQ(c.columns.size(), 8u);
    ASSERT_EQ(c.rows.size(), 2u * 181u);
    const std::size_t ia = c.col("alpha_d"), ie = c.col("h_exact"), iy = c.col("b_y"), iz = c.col("b_z");

    std::vector<std::vector<double>> zero; // u = 0 rows in alpha order
    for (const auto &r : c.rows)
        if (r[iy] == 0.0 && r[iz] == 0.0)
            zero.push_back(r);
    ASSERT_EQ(zero.size(), 181u);

    // orthogonal incidence: exact and both bounds equal 1 - exp(-2 r0^2 / w^2); the two
    // approximations share t1 = t2 and the erf-product peak erf(nu)^2, 0.46 % below it
    const auto &mid = zero[90];
    EXPECT_NEAR(mid[ia], 0.0, 1e-15);
    const double w = sc.beam_width(), r0 = sc.aperture_radius;
    const double closed = -std::expm1(-2.0 * r0 * r0 / (w * w));
    EXPECT_NEAR(mid[ie], closed, 2e-9);
    EXPECT_NEAR(mid[c.col("h_low")], closed, 2e-9);
    EXPECT_NEAR(mid[c.col("h_upp")], closed, 2e-9);
    const double nu = r0 / w * std::sqrt(0.5 * std::numbers::pi);
    EXPECT_NEAR(mid[c.col("h_approx_arith")], std::erf(nu) * std::erf(nu), 1e-15);
    EXPECT_EQ(mid[c.col("h_approx_arith")], mid[c.col("h_approx_geom")]);
    EXPECT_NEAR(mid[c.col("h_approx_geom")] / closed, 1.0, 5e-3);

    // grazing endpoints for both footprints
    for (const auto &r : c.rows)
        if (std::abs(std::abs(r[ia]) - 0.5 * std::numbers::pi) < 1e-12)
            EXPECT_LE(r[ie], 1e-6);

    // h_exact decreases in |alpha| for u = 0
    for (int i = 91; i < 181; ++i)
    {
        EXPECT_LE(zero[i][ie], zero[i - 1][ie] + 1e-12) << i;
        EXPECT_NEAR(zero[i][ie], zero[180 - i][ie], 1e-9) << i;
    }
    EXPECT_GT(zero[90][ie], zero[135][ie]);
}

TEST(Cli, ConditionalSweepGridOverride)
{
    const Scenario sc = load("conditional_sweep_orthogonal_plane");
    cli::Options o;
    o.grid = 5;
    const Csv c = parse_csv(cli::conditional_sweep(sc, o));
    EXPECT_EQ(c.rows.size(), 10u);
    EXPECT_NEAR(c.rows[1][0], -std::numbers::pi / 4.0, 1e-15);
}

TEST(Cli, BreezeScenariosReportSubUnitTailExponent)
{
    // wind only: half-normal with shape < 1; wind plus jitter: Hoyt with q * shape < 1;
    // jitter alone stays light-tailed
    const Csv wind = parse_csv(cli::header(load("dist_breeze_wind"), "dist", nullptr));
    EXPECT_EQ(wind.meta.at("distribution"), "half_normal");
    EXPECT_LT(wind.meta_num("varpi"), 1.0);
    EXPECT_EQ(wind.meta_num("q_varpi"), wind.meta_num("varpi"));
    const Csv both = parse_csv(cli::header(load("dist_breeze_combined"), "dist", nullptr));
    EXPECT_EQ(both.meta.at("distribution"), "hoyt");
    EXPECT_LT(both.meta_num("q_varpi"), 1.0);
    EXPECT_NEAR(both.meta_num("q_varpi"), both.meta_num("q") * both.meta_num("varpi"), 1e-15);
    const Csv ind = parse_csv(cli::header(load("dist_breeze_independent"), "dist", nullptr));
    EXPECT_GT(ind.meta_num("q_varpi"), 1.0);
}

TEST(Cli, UniformCdfZeroBelowFloor)
{
    const Scenario sc = load("dist_uniform_xi3_w3");
    cli::Options o;
    o.trials = 20000;
    const Csv c = parse_csv(cli::distribution(sc, o));
    const double h1 = c.meta_num("h1");
    ASSERT_GT(h1, 0.0);
    int below = 0;
    for (const auto &r : c.rows)
        if (r[0] < h1)
        {
            ++below;
            EXPECT_EQ(r[c.col("cdf_analytic")], 0.0);
            EXPECT_EQ(r[c.col("pdf_analytic")], 0.0);
            EXPECT_EQ(r[c.col("ecdf_mc")], 0.0);
        }
    EXPECT_GT(below, 10);
}

TEST(Cli, StaticScenarioEcdfIsStepAtPeak)
{
    const Scenario sc = load("dist_static");
    const Csv c = parse_csv(cli::distribution(sc, {}));
    const double a0 = gml_approx_params(sc.mean().orientation, sc.beam_width(), sc.aperture_radius).peak_gain;
    ASSERT_EQ(c.rows.size(), 50u);
    for (const auto &r : c.rows)
        EXPECT_EQ(r[c.col("ecdf_mc")], r[0] < a0 ? 0.0 : 1.0) << r[0];
    EXPECT_EQ(c.rows.back()[0], a0);
}

TEST(Cli, DistributionIsByteStableAcrossWorkers)
{
    const Scenario sc = load("dist_breeze_combined");
    cli::Options o;
    o.trials = 30000;
    o.workers = 1;
    std::vector<double> raw1, raw5;
    o.raw = &raw1;
    const std::string a = cli::distribution(sc, o);
    o.workers = 5;
    o.raw = &raw5;
    const std::string b = cli::distribution(sc, o);
    EXPECT_EQ(a, b);
    EXPECT_EQ(raw1, raw5);
    EXPECT_EQ(raw1.size(), 30000u);
    o.seed = 2;
    EXPECT_NE(cli::distribution(sc, o), a);
}

TEST(Cli, UniformOutageExactlyZeroBeyondCriticalSnr)
{
    const Scenario sc = load("link_correlated_uniform");
    cli::Options o;
    o.trials = 20000;
    const Csv c = parse_csv(cli::outage_table(sc, o));
    const double crit = c.meta_num("critical_snr_dB");
    EXPECT_EQ(c.columns, (std::vector<std::string>{"gamma_bar_dB", "analytic", "asymptotic", "mc", "mc_with_gg"}));
    int beyond = 0;
    for (const auto &r : c.rows)
    {
        if (r[0] >= crit)
        {
            ++beyond;
            EXPECT_EQ(r[1], 0.0) << r[0];
            EXPECT_EQ(r[3], 0.0) << r[0];
        }
        else
            EXPECT_GT(r[1], 0.0) << r[0];
    }
    EXPECT_GT(beyond, 0);
}

TEST(Cli, RateTableColumnsAndHighSnrGap)
{
    const Scenario sc = load("link_correlated_gaussian");
    cli::Options o;
    o.trials = 20000;
    const Csv c = parse_csv(cli::rate_table(sc, o));
    EXPECT_EQ(c.columns, (std::vector<std::string>{"gamma_bar_dB", "analytic", "asymptotic", "mc", "mc_with_gg"}));
    ASSERT_EQ(c.rows.size(), 21u);
    for (std::size_t i = 1; i < c.rows.size(); ++i)
        EXPECT_GT(c.rows[i][1], c.rows[i - 1][1]);
    EXPECT_LT(std::abs(c.rows.back()[1] - c.rows.back()[2]), 0.01);
}

TEST(Cli, RawSamplesAreLittleEndianDoubles)
{
    const std::string path = ::testing::TempDir() + "fsochan_raw.bin";
    const std::vector<double> v{1.0, -0.5, 3.25e-7};
    cli::write_raw(path, v);
    const std::string bytes = slurp(path);
    ASSERT_EQ(bytes.size(), 24u);
    // 1.0 = 0x3FF0000000000000, least significant byte first
    EXPECT_EQ((unsigned char)bytes[0], 0x00);
    EXPECT_EQ((unsigned char)bytes[6], 0xF0);
    EXPECT_EQ((unsigned char)bytes[7], 0x3F);
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        std::uint64_t bits = 0;
        for (int k = 0; k < 8; ++k)
            bits |= std::uint64_t((unsigned char)bytes[8 * i + k]) << (8 * k);
        double x;
        std::memcpy(&x, &bits, 8);
        EXPECT_EQ(x, v[i]);
    }
}

TEST(Cli, ValidatePassesAndDetectsPerturbation)
{
    cli::ValidateOptions vo;
    vo.trials = 100000;
    vo.workers = 4;
    const auto ok = cli::validate(vo);
    EXPECT_TRUE(ok.passed) << ok.text;
    EXPECT_NE(ok.text.find("ecdf/uniform_xi4_w4: sup distance"), std::string::npos);

    vo.peak_gain_scale = 1.05;
    const auto bad = cli::validate(vo);
    EXPECT_FALSE(bad.passed);
    EXPECT_NE(bad.text.find("FAIL ecdf/"), std::string::npos);
}

TEST(CliBinary, OutputIndependentOfWorkerEnvironment)
{
    const std::string exe = FSOCHAN_CLI_PATH;
    const std::string dir = ::testing::TempDir();
    const std::string sc = scenario_dir + "/link_independent.json";
    auto run = [&](const std::string &workers, const std::string &out)
    {
        const std::string cmd = "FSO_WORKERS=" + workers + " " + exe + " outage --scenario " + sc +
                                " --trials 20000 --seed 9 --grid 6 --out " + out;
        return std::system(cmd.c_str());
    };
    ASSERT_EQ(run("1", dir + "fsochan_w1.csv"), 0);
    ASSERT_EQ(run("6", dir + "fsochan_w6.csv"), 0);
    const std::string a = slurp(dir + "fsochan_w1.csv"), b = slurp(dir + "fsochan_w6.csv");
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, b);
    EXPECT_NE(a.find("# seed: 9"), std::string::npos);
    EXPECT_EQ(parse_csv(a).rows.size(), 6u);
}

TEST(CliBinary, ErrorsExitNonZero)
{
    const std::string exe = FSOCHAN_CLI_PATH;
    const std::string bad = ::testing::TempDir() + "fsochan_bad.json";
    {
        std::ofstream f(bad);
        f << R"({"geometry": {"distance_m": 500}, "fluctuation": {"model": "independent_gaussian"}, "typo": 1})";
    }
    EXPECT_NE(std::system((exe + " dist --scenario " + bad + " 2>/dev/null").c_str()), 0);
    EXPECT_NE(std::system((exe + " dist 2>/dev/null >/dev/null").c_str()), 0);
    EXPECT_NE(std::system(("FSO_WORKERS=abc " + exe + " conditional-sweep --scenario " + scenario_dir +
                           "/conditional_sweep_orthogonal_plane.json >/dev/null 2>&1")
                              .c_str()),
              0);
}
