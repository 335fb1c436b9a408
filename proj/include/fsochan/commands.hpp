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

#ifndef FSOCHAN_COMMANDS_HPP
#define FSOCHAN_COMMANDS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "conditional_gml.hpp"
#include "gml_statistics.hpp"
#include "link_performance.hpp"
#include "monte_carlo.hpp"
#include "presets.hpp"
#include "scenario.hpp"

// Subcommands of the command-line tool. Each one returns its CSV as a string so
// that tests can compare outputs byte for byte.

namespace fsochan::cli
{
    // 17 significant digits, scientific notation
    inline std::string fmt(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.16e", v);
        return buf;
    }

    struct Options
    {
        std::optional<std::uint64_t> seed;
        std::optional<std::size_t> trials;
        std::optional<SimMode> mode;
        std::optional<int> grid;
        std::optional<unsigned> workers;
        std::vector<double> *raw = nullptr; // receives the h samples in trial order
    };

    // FSO_WORKERS, when set to a positive integer.
    inline std::optional<unsigned> workers_from_env()
    {
        const char *s = std::getenv("FSO_WORKERS");
        if (!s || !*s)
            return std::nullopt;
        char *end = nullptr;
        const long v = std::strtol(s, &end, 10);
        if (*end != '\0' || v < 1 || v > 4096)
            throw ScenarioError("FSO_WORKERS must be a positive integer");
        return unsigned(v);
    }

    inline SimConfig resolve_sim(const Scenario &sc, const Options &o)
    {
        SimConfig c = sc.sim;
        if (o.seed)
            c.seed = *o.seed;
        if (o.trials)
            c.n_trials = *o.trials;
        if (o.mode)
            c.mode = *o.mode;
        if (o.workers)
            c.workers = *o.workers;
        if (c.n_trials < 1)
            throw ScenarioError("trials must be >= 1");
        return c;
    }

    // Comment block with the scenario hash and the constants of the analytical model.
    inline std::string header(const Scenario &sc, const std::string &command, const SimConfig *cfg)
    {
        std::ostringstream o;
        o << "# fsochan " << command << "\n";
        o << "# scenario_hash: " << sc.hash << "\n";
        if (!sc.name.empty())
            o << "# scenario: " << sc.name << "\n";
        if (cfg)
        {
            o << "# seed: " << cfg->seed << "\n";
            o << "# trials: " << cfg->n_trials << "\n";
            o << "# mode: " << to_string(cfg->mode) << "\n";
        }
        o << "# model: " << model_name(sc.model) << "\n";
        o << "# width_rule: " << to_string(sc.width_rule) << "\n";
        o << "# w_L: " << fmt(sc.beam_width()) << "\n";
        try
        {
            const GmlDist g = sc.gml_dist();
            const auto shape = g.shape();
            o << "# distribution: " << to_string(g.mis.kind) << "\n";
            o << "# A0: " << fmt(g.approx.peak_gain) << "\n";
            o << "# t: " << fmt(g.approx.width_factor) << "\n";
            o << "# varpi: " << fmt(shape ? *shape : std::nan("")) << "\n";
            o << "# q: " << fmt(g.mis.kind == MisalignmentKind::hoyt ? g.mis.q : std::nan("")) << "\n";
            const auto tail = g.tail_exponent();
            o << "# q_varpi: " << fmt(tail ? *tail : std::nan("")) << "\n";
            o << "# Omega: " << fmt(g.mis.mean_square) << "\n";
            o << "# h1: " << fmt(g.h_min()) << "\n";
        }
        catch (const std::exception &e)
        {
            o << "# analytical model unavailable: " << e.what() << "\n";
        }
        return o.str();
    }

    // GML against the azimuth of the mean position, for fixed footprint offsets.
    inline std::string conditional_sweep(const Scenario &sc, const Options &o)
    {
        const int n = o.grid ? *o.grid : sc.azimuth_points;
        if (n < 2)
            throw ScenarioError("conditional-sweep: grid must have at least 2 points");
        const double w = sc.beam_width(), r0 = sc.aperture_radius;
        std::ostringstream out;
        out << header(sc, "conditional-sweep", nullptr);
        out << "alpha_d,h_exact,h_low,h_upp,h_approx_arith,h_approx_geom,b_y,b_z\n";
        for (const Footprint &b : sc.footprints)
        {
            for (int i = 0; i < n; ++i)
            {
                const double alpha = -0.5 * std::numbers::pi + std::numbers::pi * i / (n - 1);
                double he = 0.0, hl = 0.0, hu = 0.0, ha = 0.0, hg = 0.0;
                try
                {
                    const MeanState m = make_mean_state(sc.distance, alpha, sc.polar);
                    const double s = incidence_sine(m.orientation);
                    if (s > parallel_epsilon)
                    {
                        he = gml_exact(b, m.orientation, w, r0);
                        const GmlBounds bd = gml_bounds(b.norm(), s, w, r0);
                        hl = bd.lower;
                        hu = bd.upper;
                        ha = gml_approx(b.norm(), gml_approx_params(s, w, r0, WidthRule::arithmetic));
                        hg = gml_approx(b.norm(), gml_approx_params(s, w, r0, WidthRule::geometric));
                    }
                }
                catch (const BeamParallelError &)
                {
                }
                out << fmt(alpha) << ',' << fmt(he) << ',' << fmt(hl) << ',' << fmt(hu) << ',' << fmt(ha) << ','
                    << fmt(hg) << ',' << fmt(b.y) << ',' << fmt(b.z) << '\n';
            }
        }
        return out.str();
    }

    inline std::string distribution(const Scenario &sc, const Options &o)
    {
        const SimConfig cfg = resolve_sim(sc, o);
        const int n = o.grid ? *o.grid : sc.dist_points;
        if (n < 2)
            throw ScenarioError("dist: grid must have at least 2 points");
        const GmlDist g = sc.gml_dist();
        const SimResult res = run(sc.setup(), cfg);
        if (o.raw)
            *o.raw = res.samples;
        const double top = std::max(g.approx.peak_gain, res.dist.sorted.back());
        std::ostringstream out;
        out << header(sc, "dist", &cfg);
        out << "# parallel_trials: " << res.parallel_hits << "\n";
        out << "h,pdf_analytic,cdf_analytic,ecdf_mc\n";
        for (int i = 1; i <= n; ++i)
        {
            const double h = top * i / n;
            out << fmt(h) << ',' << fmt(g.pdf(h)) << ',' << fmt(g.cdf(h)) << ',' << fmt(res.dist.ecdf(h)) << '\n';
        }
        return out.str();
    }

    inline std::string outage_table(const Scenario &sc, const Options &o)
    {
        SimConfig cfg = resolve_sim(sc, o);
        const GmlDist g = sc.gml_dist();
        cfg.include_turbulence = false;
        const SimResult plain = run(sc.setup(), cfg);
        if (o.raw)
            *o.raw = plain.samples;
        cfg.include_turbulence = true;
        const SimResult turb = run(sc.setup(), cfg);
        std::ostringstream out;
        out << header(sc, "outage", &cfg);
        out << "# snr_threshold: " << fmt(sc.snr_threshold) << "\n";
        out << "# path_loss: " << fmt(sc.path_loss()) << "\n";
        out << "# diversity_gain: " << fmt(diversity_gain(g)) << "\n";
        if (g.mis.kind == MisalignmentKind::uniform)
            out << "# critical_snr_dB: " << fmt(linear_to_db(*outage(g, sc.budget(0.0)).critical_snr)) << "\n";
        out << "gamma_bar_dB,analytic,asymptotic,mc,mc_with_gg\n";
        for (double db : sc.snr_grid_db(o.grid))
        {
            const LinkBudget lb = sc.budget(db);
            const auto asym = outage_asymptotic(g, lb);
            out << fmt(db) << ',' << fmt(outage(g, lb).p_out) << ',' << fmt(asym ? *asym : std::nan("")) << ','
                << fmt(empirical_outage(plain.dist, lb.responsivity, lb.path_loss, lb.mean_snr, lb.snr_threshold))
                << ','
                << fmt(empirical_outage(turb.dist, lb.responsivity, lb.path_loss, lb.mean_snr, lb.snr_threshold))
                << '\n';
        }
        return out.str();
    }

    inline std::string rate_table(const Scenario &sc, const Options &o)
    {
        SimConfig cfg = resolve_sim(sc, o);
        const GmlDist g = sc.gml_dist();
        cfg.include_turbulence = false;
        const SimResult plain = run(sc.setup(), cfg);
        if (o.raw)
            *o.raw = plain.samples;
        cfg.include_turbulence = true;
        const SimResult turb = run(sc.setup(), cfg);
        std::ostringstream out;
        out << header(sc, "rate", &cfg);
        out << "# path_loss: " << fmt(sc.path_loss()) << "\n";
        out << "# rate_loss: " << fmt(ergodic_rate_asymptotic(g, sc.budget(0.0)).delta_r) << "\n";
        out << "gamma_bar_dB,analytic,asymptotic,mc,mc_with_gg\n";
        for (double db : sc.snr_grid_db(o.grid))
        {
            const LinkBudget lb = sc.budget(db);
            const RateAsymptote ra = ergodic_rate_asymptotic(g, lb);
            out << fmt(db) << ',' << fmt(ergodic_rate(g, lb)) << ',' << fmt(ra.r_max - ra.delta_r) << ','
                << fmt(empirical_rate(plain.dist, lb.rate_scale()).mean) << ','
                << fmt(empirical_rate(turb.dist, lb.rate_scale()).mean) << '\n';
        }
        return out.str();
    }

    // Little-endian binary doubles.
    inline void write_raw(const std::string &path, const std::vector<double> &v)
    {
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw ScenarioError("cannot open raw output file: " + path);
        for (double x : v)
        {
            std::uint64_t bits;
            std::memcpy(&bits, &x, sizeof bits);
            unsigned char b[8];
            for (int i = 0; i < 8; ++i)
                b[i] = static_cast<unsigned char>(bits >> (8 * i));
            f.write(reinterpret_cast<const char *>(b), 8);
        }
    }

    struct ValidateOptions
    {
        std::size_t trials = 200000;
        std::uint64_t seed = 1;
        unsigned workers = 1;
        double peak_gain_scale = 1.0; // != 1 corrupts the analytical model (self-test of the suite)
    };

    struct ValidationReport
    {
        bool passed = true;
        std::string text;

        void check(const std::string &name, bool ok, const std::string &detail)
        {
            passed = passed && ok;
            text += (ok ? "PASS " : "FAIL ") + name + ": " + detail + "\n";
        }
    };

    // Invariant suite: special functions, bounds, closed forms, normalisation,
    // distribution agreement with the linearised Monte Carlo, determinism.
    inline ValidationReport validate(const ValidateOptions &opt)
    {
        ValidationReport rep;
        {
            // Q1(a,b) + Q1(b,a) = 1 + exp(-(a^2+b^2)/2) I0(ab)
            double worst = 0.0;
            for (double a : {0.3, 1.0, 2.5, 6.0, 9.0})
                for (double b : {0.2, 1.5, 4.0, 7.0})
                {
                    const double lhs = marcum_q1(a, b) + marcum_q1(b, a);
                    const double rhs = 1.0 + std::exp(-0.5 * (a - b) * (a - b)) * bessel_i0e(a * b);
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
            rep.check("marcum_symmetry", worst < 1e-12, "max deviation " + fmt(worst));
        }
        {
            double worst = 0.0;
            for (double alpha : {-0.7, -0.3, 0.0, 0.4, 0.75})
                for (double u : {0.0, 0.05, 0.12, 0.2})
                {
                    const MeanState m = make_mean_state(presets::distance, alpha, presets::oblique_polar);
                    const Footprint b{u / std::sqrt(2.0), u / std::sqrt(2.0)};
                    const double h = gml_exact(b, m.orientation, presets::beam_width, presets::aperture);
                    const GmlBounds bd = gml_bounds(b, m.orientation, presets::beam_width, presets::aperture);
                    worst = std::max({worst, bd.lower - h, h - bd.upper});
                }
            rep.check("bound_sandwich", worst <= 2e-9, "max violation " + fmt(std::max(0.0, worst)));
        }
        {
            const MeanState m = presets::orthogonal();
            const GmlDist g = make_gml_dist(presets::equal_jitter(0.1), m, presets::beam_width, presets::aperture);
            double worst = 0.0;
            const double w = *g.shape(), a0 = g.approx.peak_gain;
            for (int i = 1; i < 50; ++i)
            {
                const double h = a0 * i / 50.0;
                worst = std::max(worst, std::abs(g.pdf(h) - w / a0 * std::pow(h / a0, w - 1.0)) / (w / a0));
            }
            rep.check("rayleigh_collapse", worst < 1e-12, "max relative deviation " + fmt(worst));
        }
        for (const auto &c : presets::distribution_cases())
        {
            GmlDist g = make_gml_dist(c.setup.model, c.setup.mean, c.setup.beam_width, c.setup.aperture_radius);
            const double y_hi = g.mis.kind == MisalignmentKind::uniform ? std::sqrt(std::log(g.approx.peak_gain / g.h_min()))
                                                                         : std::sqrt(80.0 * g.mis.lambda_large * 2.0 / g.approx.spread());
            auto dens = [&](double y)
            {
                const double h = g.approx.peak_gain * std::exp(-y * y);
                return g.pdf(h) * 2.0 * y * h;
            };
            const double mass = quad::integrate(dens, 0.0, y_hi, 1e-12, 1e-10);
            rep.check("normalisation/" + c.name, std::abs(mass - 1.0) < 1e-6, "integral " + fmt(mass));

            SimConfig cfg;
            cfg.n_trials = opt.trials;
            cfg.seed = opt.seed;
            cfg.workers = opt.workers;
            cfg.mode = SimMode::linearized;
            const SimResult r = run(c.setup, cfg);
            g.approx.peak_gain *= opt.peak_gain_scale;
            // DKW bound at 1e-4 false-alarm probability
            const double eps = std::sqrt(std::log(2.0 / 1e-4) / (2.0 * double(opt.trials)));
            const double d = sup_distance(r.dist, [&](double h) { return g.cdf(h); });
            rep.check("ecdf/" + c.name, d <= eps, "sup distance " + fmt(d) + " (limit " + fmt(eps) + ")");
        }
        {
            const auto c = presets::distribution_cases().front();
            SimConfig cfg;
            cfg.n_trials = 5000;
            cfg.seed = opt.seed;
            cfg.mode = SimMode::approx_formula;
            cfg.include_turbulence = true;
            cfg.workers = 1;
            const auto a = run(c.setup, cfg).samples;
            cfg.workers = 3;
            const auto b = run(c.setup, cfg).samples;
            rep.check("determinism", a == b, "1 vs 3 workers");
        }
        return rep;
    }
}

#endif
