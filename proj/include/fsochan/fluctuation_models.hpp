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

#ifndef FSOCHAN_FLUCTUATION_MODELS_HPP
#define FSOCHAN_FLUCTUATION_MODELS_HPP

#include <cmath>
#include <string>
#include <utility>
#include <variant>

#include "errors.hpp"
#include "geometry.hpp"

// Hovering fluctuation models and their first-order effect on the footprint centre.

namespace fsochan
{
    // Deviation of the UAV state from its mean.
    struct StateDeviation
    {
        double dx = 0.0, dy = 0.0, dz = 0.0;
        double dtheta = 0.0, dphi = 0.0;
    };

    // Direction in state space along which a common disturbance (wind) moves the UAV.
    // The position part is a unit vector; the orientation part is in rad/m.
    struct WindGain
    {
        double vx = 0.0, vy = 0.0, vz = 0.0;
        double tau_theta = 0.0, tau_phi = 0.0;
    };

    // Normalises the position direction; throws when it is the zero vector.
    inline WindGain make_wind_gain(double vx, double vy, double vz, double tau_theta, double tau_phi)
    {
        const double n = std::sqrt(vx * vx + vy * vy + vz * vz);
        if (!(n > 0.0) || !std::isfinite(n) || !std::isfinite(tau_theta) || !std::isfinite(tau_phi))
            throw InvalidParameterError("wind gain: position direction must be a finite non-zero vector");
        return {vx / n, vy / n, vz / n, tau_theta, tau_phi};
    }

    // Independent zero-mean Gaussian jitter of all five state variables.
    struct IndependentGaussian
    {
        double std_x = 0.0, std_y = 0.0, std_z = 0.0; // [m]
        double std_theta = 0.0, std_phi = 0.0;        // [rad]
    };

    // Independent jitter plus a common Gaussian disturbance delta ~ N(0, wind_std^2)
    // acting along the wind gain.
    struct CorrelatedGaussian
    {
        IndependentGaussian independent;
        double wind_std = 0.0; // [m]
        WindGain gain;
    };

    // Common disturbance only, uniform on [-sqrt(3) wind_std, sqrt(3) wind_std].
    struct CorrelatedUniform
    {
        double wind_std = 0.0; // [m]
        WindGain gain;
    };

    using FluctuationModel = std::variant<IndependentGaussian, CorrelatedGaussian, CorrelatedUniform>;

    inline void validate(const IndependentGaussian &m)
    {
        for (double s : {m.std_x, m.std_y, m.std_z, m.std_theta, m.std_phi})
            if (!(s >= 0.0) || !std::isfinite(s))
                throw InvalidParameterError("independent fluctuation: standard deviations must be finite and >= 0");
    }

    inline void validate(const WindGain &g)
    {
        const double n = std::sqrt(g.vx * g.vx + g.vy * g.vy + g.vz * g.vz);
        if (std::abs(n - 1.0) > 1e-12)
            throw InvalidParameterError("wind gain: position direction must have unit norm");
        if (!std::isfinite(g.tau_theta) || !std::isfinite(g.tau_phi))
            throw InvalidParameterError("wind gain: orientation gain must be finite");
    }

    inline void validate(const CorrelatedGaussian &m)
    {
        validate(m.independent);
        validate(m.gain);
        if (!(m.wind_std >= 0.0) || !std::isfinite(m.wind_std))
            throw InvalidParameterError("correlated Gaussian: wind standard deviation must be finite and >= 0");
    }

    inline void validate(const CorrelatedUniform &m)
    {
        validate(m.gain);
        if (!(m.wind_std > 0.0) || !std::isfinite(m.wind_std))
            throw InvalidParameterError("correlated uniform: wind standard deviation must be finite and > 0");
    }

    inline void validate(const FluctuationModel &m)
    {
        std::visit([](const auto &x) { validate(x); }, m);
    }

    inline std::string model_name(const FluctuationModel &m)
    {
        switch (m.index())
        {
        case 0:
            return "independent_gaussian";
        case 1:
            return "correlated_gaussian";
        default:
            return "correlated_uniform";
        }
    }

    // Partial derivatives of the footprint centre at the mean state, and the
    // projection of the wind gain onto the receiver plane.
    struct LinearCoeffs
    {
        double dy_dx = 0.0;     // d b_y / d x
        double dy_dtheta = 0.0; // d b_y / d theta
        double dz_dphi = 0.0;   // d b_z / d phi
        double dz_dtheta = 0.0; // d b_z / d theta
        double dz_dx = 0.0;     // d b_z / d x
        double wind_y = 0.0;    // footprint shift per unit wind, y
        double wind_z = 0.0;    // footprint shift per unit wind, z

        double wind_norm2() const { return wind_y * wind_y + wind_z * wind_z; }
    };

    inline LinearCoeffs linear_coeffs(const MeanState &mean, const WindGain &g = {},
                                      double eps = parallel_epsilon)
    {
        const double th = mean.orientation.theta, ph = mean.orientation.phi;
        const double ct = std::cos(th), sp = std::sin(ph);
        if (std::abs(ct) <= eps || std::abs(sp) <= eps)
            throw DegenerateMeanError("linear_coeffs: cos(theta) or sin(phi) vanishes at the mean orientation");
        const double tt = std::tan(th), cotp = std::cos(ph) / sp;
        const double mx = mean.position.x;
        LinearCoeffs c;
        c.dy_dx = -tt;
        c.dy_dtheta = -mx / (ct * ct);
        c.dz_dphi = mx / (sp * sp * ct);
        c.dz_dtheta = -mx * cotp * tt / ct;
        c.dz_dx = -cotp / ct;
        c.wind_y = g.vy + g.vx * c.dy_dx + g.tau_theta * c.dy_dtheta;
        c.wind_z = g.vz + g.vx * c.dz_dx + g.tau_phi * c.dz_dphi + g.tau_theta * c.dz_dtheta;
        return c;
    }

    // First-order footprint centre for a state deviation.
    inline Footprint linear_footprint(const LinearCoeffs &c, const StateDeviation &e)
    {
        return {e.dy + c.dy_dx * e.dx + c.dy_dtheta * e.dtheta,
                e.dz + c.dz_dphi * e.dphi + c.dz_dtheta * e.dtheta + c.dz_dx * e.dx};
    }

    // Symmetric 2x2 covariance of (b_y, b_z).
    struct Sym2
    {
        double yy = 0.0, yz = 0.0, zz = 0.0;

        double trace() const { return yy + zz; }
        double det() const { return yy * zz - yz * yz; }

        Sym2 operator+(const Sym2 &o) const { return {yy + o.yy, yz + o.yz, zz + o.zz}; }
    };

    struct Eigen2
    {
        double small = 0.0, large = 0.0;
        // unit eigenvector of the large eigenvalue; the other one is (-vz, vy)
        double vy = 1.0, vz = 0.0;
    };

    inline Eigen2 eigen(const Sym2 &m)
    {
        const double half_diff = 0.5 * (m.yy - m.zz);
        const double r = std::hypot(half_diff, m.yz);
        const double mid = 0.5 * (m.yy + m.zz);
        Eigen2 e;
        e.large = mid + r;
        e.small = mid - r;
        if (e.small < 0.0 && e.small > -1e-14 * std::max(1.0, std::abs(e.large)))
            e.small = 0.0;
        if (r > 0.0)
        {
            // angle of the major axis
            const double a = 0.5 * std::atan2(m.yz, half_diff);
            e.vy = std::cos(a);
            e.vz = std::sin(a);
        }
        return e;
    }

    inline Sym2 sigma_independent(const IndependentGaussian &m, const LinearCoeffs &c)
    {
        validate(m);
        const double vx = m.std_x * m.std_x, vth = m.std_theta * m.std_theta, vph = m.std_phi * m.std_phi;
        Sym2 s;
        s.yy = m.std_y * m.std_y + c.dy_dx * c.dy_dx * vx + c.dy_dtheta * c.dy_dtheta * vth;
        s.yz = c.dy_dx * c.dz_dx * vx + c.dy_dtheta * c.dz_dtheta * vth;
        s.zz = m.std_z * m.std_z + c.dz_dphi * c.dz_dphi * vph + c.dz_dtheta * c.dz_dtheta * vth +
               c.dz_dx * c.dz_dx * vx;
        return s;
    }

    inline Sym2 sigma_wind(double wind_std, const LinearCoeffs &c)
    {
        const double z2 = wind_std * wind_std;
        return {z2 * c.wind_y * c.wind_y, z2 * c.wind_y * c.wind_z, z2 * c.wind_z * c.wind_z};
    }

    // Covariance of the linearised footprint centre. For the uniform model this is the
    // covariance of its (rank one) displacement.
    inline Sym2 sigma_total(const FluctuationModel &model, const MeanState &mean)
    {
        validate(model);
        if (const auto *ig = std::get_if<IndependentGaussian>(&model))
            return sigma_independent(*ig, linear_coeffs(mean));
        if (const auto *cg = std::get_if<CorrelatedGaussian>(&model))
        {
            const LinearCoeffs c = linear_coeffs(mean, cg->gain);
            return sigma_independent(cg->independent, c) + sigma_wind(cg->wind_std, c);
        }
        const auto &cu = std::get<CorrelatedUniform>(model);
        return sigma_wind(cu.wind_std, linear_coeffs(mean, cu.gain));
    }
}

#endif
