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

#ifndef FSOCHAN_MONTE_CARLO_HPP
#define FSOCHAN_MONTE_CARLO_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include "atmosphere.hpp"
#include "conditional_gml.hpp"
#include "errors.hpp"
#include "fluctuation_models.hpp"
#include "random.hpp"

namespace fsochan
{
    enum class SimMode
    {
        exact_quadrature, // sampled state, footprint by ray intersection, GML by disk quadrature
        approx_formula,   // sampled state, footprint by ray intersection, closed-form GML at the mean state
        linearized        // first-order footprint, closed-form GML at the mean state
    };

    inline std::string_view to_string(SimMode m)
    {
        switch (m)
        {
        case SimMode::exact_quadrature:
            return "exact_quadrature";
        case SimMode::approx_formula:
            return "approx_formula";
        default:
            return "linearized_u";
        }
    }

    inline SimMode sim_mode_from_string(std::string_view s)
    {
        if (s == "exact_quadrature" || s == "exact")
            return SimMode::exact_quadrature;
        if (s == "approx_formula" || s == "approx")
            return SimMode::approx_formula;
        if (s == "linearized_u" || s == "linearized")
            return SimMode::linearized;
        throw InvalidParameterError("unknown simulation mode: " + std::string(s));
    }

    struct SimConfig
    {
        std::size_t n_trials = 100000;
        std::uint64_t seed = 1;
        SimMode mode = SimMode::linearized;
        bool include_turbulence = false;
        unsigned workers = 1;
    };

    // Everything a trial needs besides its random numbers.
    struct ChannelSetup
    {
        MeanState mean;
        FluctuationModel model;
        double beam_width = 0.0;      // w_L at the mean distance [m]
        double aperture_radius = 0.0; // r0 [m]
        WidthRule rule = WidthRule::geometric;
        TurbulenceParams turbulence;  // used when include_turbulence is set
    };

    struct EmpiricalDist
    {
        std::vector<double> sorted;

        std::size_t n() const { return sorted.size(); }

        // fraction of samples <= x
        double ecdf(double x) const
        {
            if (sorted.empty())
                return 0.0;
            const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
            return double(it - sorted.begin()) / double(sorted.size());
        }
    };

    inline EmpiricalDist make_empirical(std::vector<double> samples)
    {
        std::sort(samples.begin(), samples.end());
        return {std::move(samples)};
    }

    struct SimResult
    {
        std::vector<double> samples; // in trial order
        EmpiricalDist dist;
        std::size_t parallel_hits = 0; // trials whose beam was parallel to the lens (recorded as h = 0)
    };

    // Zero-mean state deviation drawn from the fluctuation model.
    inline StateDeviation sample_state(const FluctuationModel &model, TrialRng &rng)
    {
        StateDeviation e;
        auto add_wind = [&e](const WindGain &g, double delta)
        {
            e.dx += delta * g.vx;
            e.dy += delta * g.vy;
            e.dz += delta * g.vz;
            e.dtheta += delta * g.tau_theta;
            e.dphi += delta * g.tau_phi;
        };
        auto add_independent = [&](const IndependentGaussian &ig)
        {
            e.dx = ig.std_x * rng.normal();
            e.dy = ig.std_y * rng.normal();
            e.dz = ig.std_z * rng.normal();
            e.dtheta = ig.std_theta * rng.normal();
            e.dphi = ig.std_phi * rng.normal();
        };
        if (const auto *ig = std::get_if<IndependentGaussian>(&model))
            add_independent(*ig);
        else if (const auto *cg = std::get_if<CorrelatedGaussian>(&model))
        {
            add_independent(cg->independent);
            add_wind(cg->gain, cg->wind_std * rng.normal());
        }
        else
        {
            const auto &cu = std::get<CorrelatedUniform>(model);
            add_wind(cu.gain, std::sqrt(3.0) * cu.wind_std * (2.0 * rng.uniform() - 1.0));
        }
        return e;
    }

    // Gamma-Gamma irradiance with unit mean.
    inline double sample_gamma_gamma(const TurbulenceParams &tp, TrialRng &rng)
    {
        const double x = rng.gamma(tp.alpha) / tp.alpha;
        const double y = rng.gamma(tp.beta) / tp.beta;
        return x * y;
    }

    namespace detail
    {
        struct TrialContext
        {
            const ChannelSetup &setup;
            const SimConfig &cfg;
            LinearCoeffs coeffs;
            GmlApprox approx;
        };

        // returns {h, beam parallel}
        inline std::pair<double, bool> run_trial(const TrialContext &ctx, std::uint64_t trial)
        {
            const ChannelSetup &s = ctx.setup;
            TrialRng rng(ctx.cfg.seed, trial, 0);
            const StateDeviation e = sample_state(s.model, rng);
            double h = 0.0;
            bool parallel = false;
            if (ctx.cfg.mode == SimMode::linearized)
                h = gml_approx(linear_footprint(ctx.coeffs, e).norm(), ctx.approx);
            else
            {
                const Position3 r{s.mean.position.x + e.dx, s.mean.position.y + e.dy, s.mean.position.z + e.dz};
                const Orientation w{s.mean.orientation.theta + e.dtheta, s.mean.orientation.phi + e.dphi};
                try
                {
                    const Footprint b = footprint_center(r, w);
                    if (ctx.cfg.mode == SimMode::approx_formula)
                        h = gml_approx(b.norm(), ctx.approx);
                    else
                        h = gml_exact(b, w, s.beam_width, s.aperture_radius);
                }
                catch (const BeamParallelError &)
                {
                    h = 0.0;
                    parallel = true;
                }
            }
            if (ctx.cfg.include_turbulence)
            {
                TrialRng trng(ctx.cfg.seed, trial, 1);
                h *= sample_gamma_gamma(s.turbulence, trng);
            }
            return {h, parallel};
        }
    }

    // Runs cfg.n_trials independent trials. The output is identical for any worker count.
    inline SimResult run(const ChannelSetup &setup, const SimConfig &cfg)
    {
        if (cfg.n_trials < 1)
            throw InvalidParameterError("run: n_trials must be >= 1");
        validate(setup.model);
        const WindGain gain = std::visit(
            [](const auto &m) -> WindGain
            {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, IndependentGaussian>)
                    return {};
                else
                    return m.gain;
            },
            setup.model);
        const detail::TrialContext ctx{setup, cfg, linear_coeffs(setup.mean, gain),
                                       gml_approx_params(setup.mean.orientation, setup.beam_width,
                                                         setup.aperture_radius, setup.rule)};
        if (cfg.include_turbulence && !(setup.turbulence.alpha > 0.0 && setup.turbulence.beta > 0.0))
            throw InvalidParameterError("run: turbulence parameters not set");

        SimResult res;
        res.samples.assign(cfg.n_trials, 0.0);
        std::vector<unsigned char> par(cfg.n_trials, 0);
        const unsigned nw = std::max(1u, std::min<unsigned>(cfg.workers, unsigned(std::min<std::size_t>(cfg.n_trials, 1024))));
        std::vector<std::exception_ptr> errors(nw);
        auto work = [&](unsigned w)
        {
            try
            {
                const std::size_t lo = cfg.n_trials * w / nw, hi = cfg.n_trials * (w + 1) / nw;
                for (std::size_t i = lo; i < hi; ++i)
                {
                    const auto [h, p] = detail::run_trial(ctx, i);
                    res.samples[i] = h;
                    par[i] = p ? 1 : 0;
                }
            }
            catch (...)
            {
                errors[w] = std::current_exception();
            }
        };
        if (nw == 1)
            work(0);
        else
        {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < nw; ++w)
                pool.emplace_back(work, w);
            for (auto &t : pool)
                t.join();
        }
        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
        for (auto p : par)
            res.parallel_hits += p;
        res.dist = make_empirical(res.samples);
        return res;
    }

    // Fraction of samples with eta h_p h <= sqrt(gamma_thr / mean_snr).
    inline double empirical_outage(const EmpiricalDist &d, double responsivity, double path_loss, double mean_snr,
                                   double snr_threshold)
    {
        return d.ecdf(std::sqrt(snr_threshold / mean_snr) / (responsivity * path_loss));
    }

    struct RateEstimate
    {
        double mean = 0.0;
        double std_error = 0.0;
    };

    // Sample mean of 0.5 log2(1 + c h^2) and its standard error.
    inline RateEstimate empirical_rate(const EmpiricalDist &d, double rate_scale)
    {
        RateEstimate r;
        const std::size_t n = d.n();
        if (n == 0)
            return r;
        double sum = 0.0, sum2 = 0.0;
        for (double h : d.sorted)
        {
            const double v = 0.5 * std::log2(1.0 + rate_scale * h * h);
            sum += v;
            sum2 += v * v;
        }
        r.mean = sum / double(n);
        const double var = std::max(0.0, sum2 / double(n) - r.mean * r.mean) * double(n) / std::max<double>(1.0, double(n) - 1.0);
        r.std_error = std::sqrt(var / double(n));
        return r;
    }

    // sup_x |F(x) - ECDF(x)|, checked on both sides of every jump.
    inline double sup_distance(const EmpiricalDist &d, const std::function<double(double)> &cdf)
    {
        const std::size_t n = d.n();
        double worst = 0.0;
        std::size_t i = 0;
        while (i < n)
        {
            std::size_t j = i;
            while (j + 1 < n && d.sorted[j + 1] == d.sorted[i])
                ++j;
            const double f = cdf(d.sorted[i]);
            worst = std::max({worst, std::abs(f - double(i) / double(n)), std::abs(f - double(j + 1) / double(n))});
            i = j + 1;
        }
        return worst;
    }
}

#endif
