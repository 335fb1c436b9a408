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

#ifndef FSOCHAN_GEOMETRY_HPP
#define FSOCHAN_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"

// Frame: the receiver lens lies in the plane x = 0, centred at the origin.
// The UAV transmitter sits at r (x > 0); its beam axis is given by the
// polar angle phi (from +z) and azimuth theta (from +x).

namespace fsochan
{
    // Beams whose axis makes |sin(phi) cos(theta)| below this with the
    // receiver normal are treated as parallel to the receiver plane.
    inline constexpr double parallel_epsilon = 1e-6;

    struct Position3
    {
        double x = 0.0, y = 0.0, z = 0.0;

        double norm() const { return std::sqrt(x * x + y * y + z * z); }
    };

    struct Orientation
    {
        double theta = 0.0; // azimuth [rad]
        double phi = 0.0;   // polar angle [rad]
    };

    // Beam footprint centre on the receiver plane (the x coordinate is always 0).
    struct Footprint
    {
        double y = 0.0, z = 0.0;

        double norm() const { return std::hypot(y, z); }
    };

    struct MeanState
    {
        Position3 position;
        Orientation orientation;

        double distance() const { return position.norm(); }
    };

    inline Position3 beam_direction(const Orientation &w)
    {
        const double sp = std::sin(w.phi);
        return {sp * std::cos(w.theta), sp * std::sin(w.theta), std::cos(w.phi)};
    }

    // |sin(phi) cos(theta)|: cosine between the beam axis and the receiver normal,
    // equal to the sine of the incidence angle on the receiver plane.
    inline double incidence_sine(const Orientation &w) { return std::abs(std::sin(w.phi) * std::cos(w.theta)); }

    inline double incidence_angle(const Orientation &w) { return std::asin(std::min(1.0, incidence_sine(w))); }

    // Intersection of the beam axis through r with the plane x = 0.
    inline Footprint footprint_center(const Position3 &r, const Orientation &w,
                                      double eps_parallel = parallel_epsilon)
    {
        const Position3 d = beam_direction(w);
        if (std::abs(d.x) <= eps_parallel)
            throw BeamParallelError("footprint_center: beam axis parallel to the receiver plane");
        const double s = -r.x / d.x;
        return {r.y + s * d.y, r.z + s * d.z};
    }

    // Orientation that points the beam from mu at the lens centre.
    inline Orientation mean_orientation(const Position3 &mu)
    {
        const double n = mu.norm();
        if (!(n > 0.0))
            throw DomainError("mean_orientation: position at the origin");
        double theta;
        if (mu.x > 0.0)
            theta = std::numbers::pi + std::atan(mu.y / mu.x);
        else if (mu.x < 0.0)
            theta = std::atan(mu.y / mu.x);
        else
            theta = mu.y > 0.0 ? 0.5 * std::numbers::pi : (mu.y < 0.0 ? -0.5 * std::numbers::pi : 0.0);
        if (theta < 0.0)
            theta += 2.0 * std::numbers::pi;
        const double phi = std::numbers::pi - std::acos(std::clamp(mu.z / n, -1.0, 1.0));
        return {theta, phi};
    }

    // Position at distance L, azimuth alpha (from +x) and polar angle beta (from +z).
    inline Position3 spherical_to_cartesian(double L, double alpha, double beta)
    {
        const double sb = std::sin(beta);
        return {L * sb * std::cos(alpha), L * sb * std::sin(alpha), L * std::cos(beta)};
    }

    inline MeanState make_mean_state(const Position3 &mu)
    {
        return {mu, mean_orientation(mu)};
    }

    inline MeanState make_mean_state(double L, double alpha, double beta)
    {
        return make_mean_state(spherical_to_cartesian(L, alpha, beta));
    }
}

#endif
