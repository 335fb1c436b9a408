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

#ifndef FSOCHAN_GML_STATISTICS_HPP
#define FSOCHAN_GML_STATISTICS_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string_view>
#include <variant>

#include "conditional_gml.hpp"
#include "errors.hpp"
#include "fluctuation_models.hpp"
#include "special_math.hpp"

// Distribution of the misalignment u = |b| under the linearised footprint
// model, and the induced distribution of the GML h = A0 exp(-2 u^2 / (t w^2)).

namespace fsochan
{
    // Below this axial ratio the footprint covariance is treated as rank one.
    inline constexpr double hoyt_q_floor = 1e-8;

    enum class MisalignmentKind
    {
        hoyt,        // norm of a bivariate Gaussian (q = 1 is Rayleigh)
        half_normal, // rank-one Gaussian
        uniform,     // rank-one uniform
        degenerate   // u == 0
    };

    inline std::string_view to_string(MisalignmentKind k)
    {
        switch (k)
        {
        case MisalignmentKind::hoyt:
            return "hoyt";
        case MisalignmentKind::half_normal:
            return "half_normal";
        case MisalignmentKind::uniform:
            return "uniform";
        default:
            return "degenerate";
        }
    }

    // How a correlated Gaussian model picks its distribution family.
    enum class RoutingRule
    {
        rank,       // half-normal only when the total covariance is (numerically) rank one
        wind_trace  // half-normal whenever the wind covariance trace dominates
    };

    struct MisalignmentDist
    {
        MisalignmentKind kind = MisalignmentKind::degenerate;
        double q = 0.0;            // Hoyt axial ratio sqrt(lambda_small / lambda_large)
        double mean_square = 0.0;  // E{u^2}
        double lambda_large = 0.0; // Hoyt / half-normal variance along the major axis
        double lambda_small = 0.0;
        double u_max = 0.0;        // uniform support [0, u_max]

        double pdf(double u) const
        {
            if (!(u >= 0.0))
                return 0.0;
            switch (kind)
            {
            case MisalignmentKind::hoyt:
            {
                const double q2 = q * q;
                const double om = mean_square;
                // exp(-A u^2) I0(B u^2) folded into the scaled Bessel function
                const double bu2 = (1.0 - q2 * q2) * u * u / (4.0 * q2 * om);
                return (1.0 + q2) / (q * om) * u * std::exp(-(1.0 + q2) * u * u / (2.0 * om)) * bessel_i0e(bu2);
            }
            case MisalignmentKind::half_normal:
                return std::sqrt(2.0 / (std::numbers::pi * lambda_large)) * std::exp(-u * u / (2.0 * lambda_large));
            case MisalignmentKind::uniform:
                return u <= u_max ? 1.0 / u_max : 0.0;
            default:
                return 0.0;
            }
        }

        // P(U >= u)
        double survival(double u, const Tolerance &tol = {}) const
        {
            if (!(u > 0.0))
                return 1.0;
            switch (kind)
            {
            case MisalignmentKind::hoyt:
            {
                const double g = std::sqrt((1.0 + q * q) / mean_square) * u;
                const double a = (1.0 + q) / (2.0 * q) * g, b = (1.0 - q) / (2.0 * q) * g;
                return std::min(1.0, marcum_q1_complement(a, b, tol) + marcum_q1(b, a, tol));
            }
            case MisalignmentKind::half_normal:
                return 2.0 * gaussian_q(u / std::sqrt(lambda_large));
            case MisalignmentKind::uniform:
                return u >= u_max ? 0.0 : 1.0 - u / u_max;
            default:
                return 0.0;
            }
        }

        double cdf(double u, const Tolerance &tol = {}) const { return u <= 0.0 ? 0.0 : 1.0 - survival(u, tol); }
    };

    // Family and parameters for a zero-mean Gaussian footprint centre with covariance s.
    inline MisalignmentDist from_covariance(const Sym2 &s)
    {
        const Eigen2 e = eigen(s);
        if (!(e.large >= 0.0) || e.small < 0.0)
            throw InvalidParameterError("footprint covariance is not positive semi-definite");
        MisalignmentDist d;
        d.lambda_large = e.large;
        d.lambda_small = e.small;
        d.mean_square = e.large + e.small;
        if (e.large == 0.0)
            return d;
        d.q = std::sqrt(e.small / e.large);
        if (d.q < hoyt_q_floor)
        {
            d.kind = MisalignmentKind::half_normal;
            d.q = 0.0;
            d.mean_square = e.large;
            d.lambda_small = 0.0;
            return d;
        }
        d.kind = MisalignmentKind::hoyt;
        return d;
    }

    inline MisalignmentDist misalignment_dist(const FluctuationModel &model, const MeanState &mean,
                                              RoutingRule rule = RoutingRule::rank)
    {
        validate(model);
        if (const auto *ig = std::get_if<IndependentGaussian>(&model))
            return from_covariance(sigma_independent(*ig, linear_coeffs(mean)));
        if (const auto *cg = std::get_if<CorrelatedGaussian>(&model))
        {
            const LinearCoeffs c = linear_coeffs(mean, cg->gain);
            const Sym2 si = sigma_independent(cg->independent, c);
            const Sym2 sw = sigma_wind(cg->wind_std, c);
            if (rule == RoutingRule::wind_trace && sw.trace() >= si.trace() && sw.trace() > 0.0)
            {
                MisalignmentDist d;
                d.kind = MisalignmentKind::half_normal;
                d.lambda_large = d.mean_square = sw.trace();
                return d;
            }
            return from_covariance(si + sw);
        }
        const auto &cu = std::get<CorrelatedUniform>(model);
        const LinearCoeffs c = linear_coeffs(mean, cu.gain);
        MisalignmentDist d;
        const double n2 = c.wind_norm2();
        if (n2 == 0.0)
            return d;
        d.kind = MisalignmentKind::uniform;
        d.u_max = std::sqrt(3.0 * n2) * cu.wind_std;
        d.mean_square = n2 * cu.wind_std * cu.wind_std;
        return d;
    }

    // Statistical GML model: closed-form conditional GML at the mean state combined
    // with the misalignment distribution.
    struct GmlDist
    {
        GmlApprox approx;
        MisalignmentDist mis;

        double peak_gain() const { return approx.peak_gain; }

        // Exponent governing the density near h = 0 (Hoyt, half-normal); empty otherwise.
        std::optional<double> shape() const
        {
            const double sp = approx.spread();
            switch (mis.kind)
            {
            case MisalignmentKind::hoyt:
                return (1.0 + mis.q * mis.q) * sp / (4.0 * mis.q * mis.mean_square);
            case MisalignmentKind::half_normal:
                return sp / (4.0 * mis.lambda_large);
            default:
                return std::nullopt;
            }
        }

        // Power-law exponent of the density near h = 0: q * shape for Hoyt, and its
        // q -> 0 limit (the shape itself) for the half-normal; empty otherwise.
        std::optional<double> tail_exponent() const
        {
            if (mis.kind == MisalignmentKind::hoyt)
                return *shape() * mis.q;
            if (mis.kind == MisalignmentKind::half_normal)
                return shape();
            return std::nullopt;
        }

        // Lower end of the support.
        double h_min() const
        {
            switch (mis.kind)
            {
            case MisalignmentKind::uniform:
                return approx.peak_gain * std::exp(-2.0 * mis.u_max * mis.u_max / approx.spread());
            case MisalignmentKind::degenerate:
                return approx.peak_gain;
            default:
                return 0.0;
            }
        }

        double u_of_h(double h) const { return std::sqrt(0.5 * approx.spread() * std::log(approx.peak_gain / h)); }

        double h_of_u(double u) const { return gml_approx(u, approx); }

        // Natural log of the density of h at h = A0 exp(-s); -inf outside the support.
        double log_pdf_at(double s) const
        {
            const double a0 = approx.peak_gain;
            const double ninf = -std::numeric_limits<double>::infinity();
            if (!(s >= 0.0) || std::isinf(s))
                return ninf;
            switch (mis.kind)
            {
            case MisalignmentKind::hoyt:
            {
                const double w = *shape(), q = mis.q;
                const double arg = s * (1.0 - q * q) * w / (2.0 * q);
                return std::log(w / a0) + s * (1.0 - q * w) + std::log(bessel_i0e(arg));
            }
            case MisalignmentKind::half_normal:
            {
                const double w = *shape();
                if (s == 0.0)
                    return std::numeric_limits<double>::infinity();
                return 0.5 * std::log(w / std::numbers::pi) - std::log(a0) - 0.5 * std::log(s) + s * (1.0 - w);
            }
            case MisalignmentKind::uniform:
            {
                if (s > 2.0 * mis.u_max * mis.u_max / approx.spread())
                    return ninf;
                if (s == 0.0)
                    return std::numeric_limits<double>::infinity();
                const double alpha1 = std::sqrt(approx.spread() / (8.0 * mis.u_max * mis.u_max));
                return std::log(alpha1) - std::log(a0) + s - 0.5 * std::log(s);
            }
            default:
                return ninf;
            }
        }

        double log_pdf(double h) const
        {
            if (!(h > 0.0) || h > approx.peak_gain)
                return -std::numeric_limits<double>::infinity();
            return log_pdf_at(std::log(approx.peak_gain / h));
        }

        // Density of y = sqrt(ln(A0 / h)). It is bounded at both ends, and being
        // written in y it does not lose h = A0 exp(-y^2) to rounding near A0.
        double y_density(double y) const
        {
            if (!(y > 0.0))
                return 0.0;
            const double s = y * y;
            const double lp = log_pdf_at(s);
            if (std::isinf(lp) && lp < 0.0)
                return 0.0;
            return std::exp(lp + std::log(2.0 * y * approx.peak_gain) - s);
        }

        double pdf(double h) const { return std::exp(log_pdf(h)); }

        // P(h_g <= h)
        double cdf(double h, const Tolerance &tol = {}) const
        {
            const double a0 = approx.peak_gain;
            if (mis.kind == MisalignmentKind::degenerate)
                return h >= a0 ? 1.0 : 0.0;
            if (!(h > 0.0))
                return 0.0;
            if (h >= a0)
                return 1.0;
            const double s = std::log(a0 / h);
            const double u = std::sqrt(0.5 * approx.spread() * s);
            double p = 0.0;
            switch (mis.kind)
            {
            case MisalignmentKind::hoyt:
                if (mis.q == 1.0)
                    p = std::exp(-*shape() * s);
                else
                    p = mis.survival(u, tol);
                break;
            default:
                p = mis.survival(u, tol);
            }
            return std::clamp(p, 0.0, 1.0);
        }
    };

    inline GmlDist make_gml_dist(const GmlApprox &approx, const MisalignmentDist &mis)
    {
        return {approx, mis};
    }

    inline GmlDist make_gml_dist(const FluctuationModel &model, const MeanState &mean, double w_L, double r0,
                                 WidthRule rule = WidthRule::geometric, RoutingRule routing = RoutingRule::rank)
    {
        return {gml_approx_params(mean.orientation, w_L, r0, rule), misalignment_dist(model, mean, routing)};
    }
}

#endif
