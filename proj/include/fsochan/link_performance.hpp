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

#ifndef FSOCHAN_LINK_PERFORMANCE_HPP
#define FSOCHAN_LINK_PERFORMANCE_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "errors.hpp"
#include "gml_statistics.hpp"
#include "quadrature.hpp"

// Outage probability and ergodic rate of an IM/DD link whose channel gain is
// eta * h_p * h_g (turbulence is taken at its mean, E{h_a} = 1).

namespace fsochan
{
    struct LinkBudget
    {
        double responsivity = 1.0;  // eta
        double path_loss = 1.0;     // h_p
        double mean_snr = 1.0;      // transmit SNR, linear
        double snr_threshold = 1.0; // linear

        void check() const
        {
            if (!(responsivity > 0.0) || !(path_loss > 0.0) || !(path_loss <= 1.0) || !(mean_snr > 0.0) ||
                !(snr_threshold > 0.0))
                throw InvalidParameterError("link budget: eta, h_p, mean SNR and threshold must be > 0, h_p <= 1");
        }

        // channel value h_g below which the link is in outage
        double gain_threshold() const
        {
            return std::sqrt(snr_threshold) / (responsivity * path_loss * std::sqrt(mean_snr));
        }

        // c in E{log2(1 + c h^2)}
        double rate_scale() const
        {
            return std::numbers::e / (2.0 * std::numbers::pi) * responsivity * responsivity * path_loss * path_loss *
                   mean_snr;
        }
    };

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

    // Threshold SNR for a target rate in bits/symbol: (2 pi / e) 2^(2 R - 1).
    inline double gamma_thr_from_rate(double rate)
    {
        if (!(rate > 0.0))
            throw InvalidParameterError("gamma_thr_from_rate: rate must be > 0");
        return 2.0 * std::numbers::pi / std::numbers::e * std::exp2(2.0 * rate - 1.0);
    }

    struct OutageResult
    {
        double p_out = 0.0;
        double diversity_gain = 0.0;       // +inf for bounded fluctuations
        std::optional<double> critical_snr; // uniform model: outage is zero above this mean SNR
    };

    inline double diversity_gain(const GmlDist &g)
    {
        const double sp = g.approx.spread();
        switch (g.mis.kind)
        {
        case MisalignmentKind::hoyt:
            return (1.0 + g.mis.q * g.mis.q) * sp / (8.0 * g.mis.mean_square);
        case MisalignmentKind::half_normal:
            return sp / (8.0 * g.mis.lambda_large);
        default:
            return std::numeric_limits<double>::infinity();
        }
    }

    inline OutageResult outage(const GmlDist &g, const LinkBudget &lb, const Tolerance &tol = {})
    {
        lb.check();
        OutageResult r;
        r.p_out = g.cdf(lb.gain_threshold(), tol);
        r.diversity_gain = diversity_gain(g);
        if (g.mis.kind == MisalignmentKind::uniform)
        {
            const double h1 = g.h_min();
            r.critical_snr =
                lb.snr_threshold / (lb.responsivity * lb.responsivity * lb.path_loss * lb.path_loss * h1 * h1);
        }
        return r;
    }

    // High-SNR outage P ~ a gamma^-d [ln(gamma / b^2)]^(-1/2) for the Hoyt model with 0 < q < 1.
    struct HoytAsymptote
    {
        double a = 0.0;
        double b = 0.0;
        double d = 0.0;

        double operator()(double mean_snr) const
        {
            const double l = std::log(mean_snr / (b * b));
            if (!(l > 0.0))
                return std::numeric_limits<double>::quiet_NaN();
            return a * std::pow(mean_snr, -d) / std::sqrt(l);
        }
    };

    inline HoytAsymptote hoyt_asymptote(const GmlDist &g, const LinkBudget &lb)
    {
        if (g.mis.kind != MisalignmentKind::hoyt || !(g.mis.q < 1.0))
            throw DomainError("hoyt_asymptote: requires a Hoyt model with q < 1");
        const double q = g.mis.q, om = g.mis.mean_square, sp = g.approx.spread();
        HoytAsymptote h;
        h.b = std::sqrt(lb.snr_threshold) / (lb.responsivity * lb.path_loss * g.approx.peak_gain);
        h.d = (1.0 + q * q) * sp / (8.0 * om);
        h.a = 2.0 * std::sqrt(2.0 * om) * std::pow(h.b, 2.0 * h.d) /
              std::sqrt(std::numbers::pi * (1.0 - q * q * q * q) * sp);
        return h;
    }

    // High-SNR approximation of the outage for each family: the Hoyt asymptote,
    // the exact power law at q = 1, the leading Gaussian tail term for the
    // half-normal model. Empty for bounded models and below the asymptotic range.
    inline std::optional<double> outage_asymptotic(const GmlDist &g, const LinkBudget &lb)
    {
        lb.check();
        const double thr = lb.gain_threshold();
        const double a0 = g.approx.peak_gain;
        if (!(thr < a0))
            return std::nullopt;
        const double s = std::log(a0 / thr);
        switch (g.mis.kind)
        {
        case MisalignmentKind::hoyt:
            if (g.mis.q < 1.0)
                return hoyt_asymptote(g, lb)(lb.mean_snr);
            return std::exp(-*g.shape() * s);
        case MisalignmentKind::half_normal:
        {
            const double x = std::sqrt(g.approx.spread() * s / (2.0 * g.mis.lambda_large));
            return 2.0 * std::exp(-0.5 * x * x) / (x * std::sqrt(2.0 * std::numbers::pi));
        }
        default:
            return std::nullopt;
        }
    }

    // Average of 0.5 log2(1 + c h^2) over the GML distribution. The integral is taken
    // over y = sqrt(ln(A0 / h)), which removes the endpoint singularities of the density.
    inline double ergodic_rate(const GmlDist &g, const LinkBudget &lb, const Tolerance &tol = {})
    {
        lb.check();
        const double c = lb.rate_scale();
        const double a0 = g.approx.peak_gain;
        auto rate = [&](double h) { return 0.5 * std::log2(1.0 + c * h * h); };
        if (g.mis.kind == MisalignmentKind::degenerate)
            return rate(a0);
        double y_max;
        if (g.mis.kind == MisalignmentKind::uniform)
            y_max = std::sqrt(std::log(a0 / g.h_min()));
        else
        {
            // u beyond sqrt(80 lambda_large) carries less than e^-40 of the mass
            const double u_cut = std::sqrt(80.0 * g.mis.lambda_large);
            y_max = u_cut * std::sqrt(2.0 / g.approx.spread());
        }
        auto integrand = [&](double y) { return rate(a0 * std::exp(-y * y)) * g.y_density(y); };
        return quad::integrate(integrand, 0.0, y_max, tol.abs_tol, tol.rel_tol);
    }

    struct RateAsymptote
    {
        double r_max = 0.0;   // rate without misalignment at high SNR
        double delta_r = 0.0; // loss caused by misalignment
    };

    inline RateAsymptote ergodic_rate_asymptotic(const GmlDist &g, const LinkBudget &lb)
    {
        lb.check();
        const double a0 = g.approx.peak_gain;
        return {0.5 * std::log2(lb.rate_scale() * a0 * a0),
                2.0 * g.mis.mean_square / (g.approx.spread() * std::numbers::ln2)};
    }
}

#endif
