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

#ifndef FSOCHAN_PRESETS_HPP
#define FSOCHAN_PRESETS_HPP

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "atmosphere.hpp"
#include "fluctuation_models.hpp"
#include "geometry.hpp"
#include "monte_carlo.hpp"

// Reference link used throughout the examples and tests: a UAV 500 m from the
// ground station at 120 m altitude, 1550 nm, 10 cm lens radius, 30 cm beam.

namespace fsochan::presets
{
    inline constexpr double distance = 500.0;
    inline constexpr double altitude = 120.0;
    inline constexpr double wavelength = 1550e-9;
    inline constexpr double aperture = 0.1;
    inline constexpr double beam_width = 0.3;
    inline constexpr double oblique_azimuth = std::numbers::pi / 8.0;
    inline constexpr double oblique_polar = 5.0 * std::numbers::pi / 8.0;

    inline MeanState oblique() { return make_mean_state(distance, oblique_azimuth, oblique_polar); }
    inline MeanState orthogonal() { return make_mean_state(distance, 0.0, 0.5 * std::numbers::pi); }

    // default wind gain: position along (3,1,2), orientation (1,2)/(sqrt(5) L)
    inline WindGain default_gain()
    {
        const double n = std::sqrt(5.0) * distance;
        return make_wind_gain(3.0, 1.0, 2.0, 1.0 / n, 2.0 / n);
    }

    // steeper wind direction (3,4,5) without orientation coupling
    inline WindGain breeze_gain() { return make_wind_gain(3.0, 4.0, 5.0, 0.0, 0.0); }

    // Independent jitter scaled by sigma: position sigma r0 (3,1,2)/|.|, orientation sigma r0 (1,2)/(|.| L).
    inline IndependentGaussian scaled_jitter(double sigma)
    {
        const WindGain g = default_gain();
        const double s = sigma * aperture;
        return {s * g.vx, s * g.vy, s * g.vz, s * g.tau_theta, s * g.tau_phi};
    }

    // Equal jitter on all axes: position sp, both angles sp / L.
    inline IndependentGaussian equal_jitter(double sp) { return {sp, sp, sp, sp / distance, sp / distance}; }

    // Independent jitter whose variances match a wind of strength zeta along g.
    inline IndependentGaussian jitter_like_wind(double zeta, const WindGain &g)
    {
        return {zeta * std::abs(g.vx), zeta * std::abs(g.vy), zeta * std::abs(g.vz), zeta * std::abs(g.tau_theta),
                zeta * std::abs(g.tau_phi)};
    }

    struct NamedCase
    {
        std::string name;
        ChannelSetup setup;
    };

    inline ChannelSetup make_setup(const MeanState &m, const FluctuationModel &f, double w = beam_width)
    {
        ChannelSetup s;
        s.mean = m;
        s.model = f;
        s.beam_width = w;
        s.aperture_radius = aperture;
        s.rule = WidthRule::geometric;
        s.turbulence = gamma_gamma_params(distance, altitude, wavelength);
        return s;
    }

    // Distribution reference cases covering every fluctuation family.
    inline std::vector<NamedCase> distribution_cases()
    {
        std::vector<NamedCase> v;
        for (double sigma : {0.5, 1.0})
        {
            const std::string tag = sigma == 0.5 ? "0.5" : "1";
            v.push_back({"independent_oblique_sigma" + tag, make_setup(oblique(), scaled_jitter(sigma))});
            v.push_back({"independent_orthogonal_sigma" + tag, make_setup(orthogonal(), scaled_jitter(sigma))});
        }
        for (double k : {0.75, 1.0, 2.0})
        {
            const std::string tag = k == 0.75 ? "0.75" : (k == 1.0 ? "1" : "2");
            v.push_back({"equal_orthogonal_sp" + tag, make_setup(orthogonal(), equal_jitter(k * aperture))});
        }
        const double zeta = 2.0 * aperture;
        const WindGain bg = breeze_gain();
        v.push_back({"breeze_independent", make_setup(oblique(), jitter_like_wind(zeta, bg))});
        v.push_back({"breeze_wind", make_setup(oblique(), CorrelatedGaussian{IndependentGaussian{}, zeta, bg})});
        v.push_back({"breeze_combined",
                     make_setup(oblique(), CorrelatedGaussian{jitter_like_wind(zeta, bg), zeta, bg})});
        for (double xi : {3.0, 4.0})
            for (double w : {3.0, 4.0})
            {
                const std::string tag = "xi" + std::to_string(int(xi)) + "_w" + std::to_string(int(w));
                v.push_back({"uniform_" + tag, make_setup(oblique(), CorrelatedUniform{xi * aperture, default_gain()},
                                                          w * aperture)});
            }
        return v;
    }

    // Link-level cases: independent jitter with the breeze covariance (zeta = 2 r0),
    // wind-only Gaussian and uniform disturbances of strength `strength` along the breeze direction.
    inline std::vector<NamedCase> link_cases(double strength = aperture)
    {
        const WindGain bg = breeze_gain();
        return {
            {"independent", make_setup(oblique(), jitter_like_wind(2.0 * aperture, bg))},
            {"correlated_gaussian", make_setup(oblique(), CorrelatedGaussian{IndependentGaussian{}, strength, bg})},
            {"correlated_uniform", make_setup(oblique(), CorrelatedUniform{strength, bg})},
        };
    }
}

#endif
