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

#ifndef FSOCHAN_CONDITIONAL_GML_HPP
#define FSOCHAN_CONDITIONAL_GML_HPP

#include <cmath>
#include <numbers>
#include <string_view>

#include "errors.hpp"
#include "geometry.hpp"
#include "quadrature.hpp"
#include "special_math.hpp"

// Geometric and misalignment loss (GML): fraction of the transmitted power
// collected by a circular lens of radius r0 for a fixed UAV state.

namespace fsochan
{
    inline constexpr Tolerance gml_tolerance{1e-9, 1e-9, 10000};

    // Which equivalent width factor is used in the closed-form approximation.
    enum class WidthRule
    {
        narrow_axis, // matched along the narrow principal axis of the footprint
        wide_axis,   // matched along the elongated axis
        arithmetic,  // arithmetic mean of the two
        geometric    // geometric mean of the two (default)
    };

    inline std::string_view to_string(WidthRule r)
    {
        switch (r)
        {
        case WidthRule::narrow_axis:
            return "narrow";
        case WidthRule::wide_axis:
            return "wide";
        case WidthRule::arithmetic:
            return "arithmetic";
        default:
            return "geometric";
        }
    }

    inline WidthRule width_rule_from_string(std::string_view s)
    {
        if (s == "narrow")
            return WidthRule::narrow_axis;
        if (s == "wide")
            return WidthRule::wide_axis;
        if (s == "arithmetic")
            return WidthRule::arithmetic;
        if (s == "geometric")
            return WidthRule::geometric;
        throw InvalidParameterError("unknown width rule: " + std::string(s));
    }

    // Quadratic form of the received intensity around the footprint centre.
    struct FootprintShape
    {
        double cyy = 1.0, czz = 1.0, cyz = 0.0;
        double incidence = 1.0; // |sin(phi) cos(theta)|

        explicit FootprintShape(const Orientation &w)
        {
            const double sp = std::sin(w.phi), cp = std::cos(w.phi);
            const double st = std::sin(w.theta), ct = std::cos(w.theta);
            cyy = cp * cp + sp * sp * ct * ct;
            czz = sp * sp;
            cyz = -cp * sp * st;
            incidence = std::abs(sp * ct);
        }
    };

    namespace detail
    {
        inline void check_beam(double w_L, double r0)
        {
            if (!(w_L > 0.0) || !(r0 > 0.0))
                throw InvalidParameterError("beam width and aperture radius must be > 0");
        }
    }

    // Received power density at (0, y, z) for a UAV at r with orientation w.
    inline double power_density(double y, double z, const Position3 &r, const Orientation &w, double w_L)
    {
        if (!(w_L > 0.0))
            throw InvalidParameterError("power_density: beam width must be > 0");
        const Footprint b = footprint_center(r, w);
        const FootprintShape f(w);
        const double dy = y - b.y, dz = z - b.z;
        const double q = f.cyy * dy * dy + f.czz * dz * dz + 2.0 * f.cyz * dy * dz;
        return 2.0 * f.incidence / (std::numbers::pi * w_L * w_L) * std::exp(-2.0 * q / (w_L * w_L));
    }

    // GML for a given footprint centre b and orientation, by disk quadrature.
    inline double gml_exact(const Footprint &b, const Orientation &w, double w_L, double r0,
                            const Tolerance &tol = gml_tolerance)
    {
        detail::check_beam(w_L, r0);
        const FootprintShape f(w);
        if (f.incidence <= parallel_epsilon)
            throw BeamParallelError("gml_exact: beam axis parallel to the receiver plane");
        const double k = 2.0 / (w_L * w_L);
        const double pre = k * f.incidence / std::numbers::pi;
        auto integrand = [&](double y, double z)
        {
            const double dy = y - b.y, dz = z - b.z;
            return std::exp(-k * (f.cyy * dy * dy + f.czz * dz * dz + 2.0 * f.cyz * dy * dz));
        };
        return pre * quad::integrate_disk(integrand, r0, tol.abs_tol / pre);
    }

    struct ExactGml
    {
        double value = 0.0;
        Footprint center;
        bool far_field = true; // |r| > 100 max(|b|, r0): the intensity model is valid
    };

    inline ExactGml gml_exact(const Position3 &r, const Orientation &w, double w_L, double r0,
                              const Tolerance &tol = gml_tolerance)
    {
        ExactGml out;
        out.center = footprint_center(r, w);
        out.value = gml_exact(out.center, w, w_L, r0, tol);
        out.far_field = r.norm() > 100.0 * std::max(out.center.norm(), r0);
        return out;
    }

    struct GmlBounds
    {
        double lower = 0.0, upper = 0.0;
    };

    // Lower and upper bounds on the GML at misalignment u for incidence sine s.
    // The bounds align the elongated footprint axis with, respectively across, the
    // misalignment direction.
    inline GmlBounds gml_bounds(double u, double s, double w_L, double r0, const Tolerance &tol = gml_tolerance)
    {
        detail::check_beam(w_L, r0);
        if (!(u >= 0.0))
            throw InvalidParameterError("gml_bounds: u must be >= 0");
        if (!(s > parallel_epsilon) || s > 1.0 + 1e-15)
            throw BeamParallelError("gml_bounds: incidence sine outside (eps, 1]");
        const double k = 2.0 / (w_L * w_L);
        const double pre = k * s / std::numbers::pi;
        const double s2 = s * s;
        auto low = [&](double y, double z)
        { return std::exp(-k * ((y - u) * (y - u) + s2 * z * z)); };
        auto upp = [&](double y, double z)
        { return std::exp(-k * (s2 * (y - u) * (y - u) + z * z)); };
        return {pre * quad::integrate_disk(low, r0, tol.abs_tol / pre),
                pre * quad::integrate_disk(upp, r0, tol.abs_tol / pre)};
    }

    inline GmlBounds gml_bounds(const Footprint &b, const Orientation &w, double w_L, double r0,
                                const Tolerance &tol = gml_tolerance)
    {
        return gml_bounds(b.norm(), incidence_sine(w), w_L, r0, tol);
    }

    // Closed-form approximation h ~ peak_gain * exp(-2 u^2 / (width_factor * w_L^2)).
    struct GmlApprox
    {
        double peak_gain = 0.0;    // GML at zero misalignment
        double width_factor = 0.0; // selected equivalent width factor
        double width_narrow = 0.0;
        double width_wide = 0.0;
        double nu_narrow = 0.0;
        double nu_wide = 0.0;
        double beam_width = 0.0;
        WidthRule rule = WidthRule::geometric;

        // t w_L^2, the quantity that appears in every distribution formula
        double spread() const { return width_factor * beam_width * beam_width; }
    };

    inline GmlApprox gml_approx_params(double s, double w_L, double r0, WidthRule rule = WidthRule::geometric)
    {
        detail::check_beam(w_L, r0);
        if (!(s > parallel_epsilon) || s > 1.0 + 1e-15)
            throw BeamParallelError("gml_approx_params: incidence sine outside (eps, 1]");
        GmlApprox p;
        p.beam_width = w_L;
        p.rule = rule;
        p.nu_narrow = r0 / w_L * std::sqrt(0.5 * std::numbers::pi);
        p.nu_wide = p.nu_narrow * s;
        const double e1 = std::erf(p.nu_narrow), e2 = std::erf(p.nu_wide);
        const double sqpi = std::sqrt(std::numbers::pi);
        p.peak_gain = e1 * e2;
        p.width_narrow = sqpi * e1 * std::exp(p.nu_narrow * p.nu_narrow) / (2.0 * p.nu_narrow);
        p.width_wide = sqpi * e2 * std::exp(p.nu_wide * p.nu_wide) / (2.0 * p.nu_wide * s * s);
        switch (rule)
        {
        case WidthRule::narrow_axis:
            p.width_factor = p.width_narrow;
            break;
        case WidthRule::wide_axis:
            p.width_factor = p.width_wide;
            break;
        case WidthRule::arithmetic:
            p.width_factor = 0.5 * (p.width_narrow + p.width_wide);
            break;
        default:
            p.width_factor = std::sqrt(p.width_narrow * p.width_wide);
        }
        return p;
    }

    inline GmlApprox gml_approx_params(const Orientation &w, double w_L, double r0,
                                       WidthRule rule = WidthRule::geometric)
    {
        return gml_approx_params(incidence_sine(w), w_L, r0, rule);
    }

    inline double gml_approx(double u, const GmlApprox &p)
    {
        if (!(u >= 0.0))
            throw InvalidParameterError("gml_approx: u must be >= 0");
        return p.peak_gain * std::exp(-2.0 * u * u / p.spread());
    }
}

#endif
