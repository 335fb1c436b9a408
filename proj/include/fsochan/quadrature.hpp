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

#ifndef FSOCHAN_QUADRATURE_HPP
#define FSOCHAN_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>

#include "errors.hpp"

namespace fsochan::quad
{
    // Gauss-Legendre nodes and weights on [-1, 1], Newton iteration on P_N.
    template <int N>
    struct GaussLegendre
    {
        std::array<double, N> x{};
        std::array<double, N> w{};

        GaussLegendre()
        {
            for (int i = 0; i < (N + 1) / 2; ++i)
            {
                double z = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
                double dp = 0.0;
                for (int it = 0; it < 100; ++it)
                {
                    double p0 = 1.0, p1 = 0.0;
                    for (int j = 1; j <= N; ++j)
                    {
                        double p2 = p1;
                        p1 = p0;
                        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
                    }
                    dp = N * (z * p0 - p1) / (z * z - 1.0);
                    double dz = p0 / dp;
                    z -= dz;
                    if (std::abs(dz) < 1e-16)
                        break;
                }
                // recompute derivative at the converged node
                double p0 = 1.0, p1 = 0.0;
                for (int j = 1; j <= N; ++j)
                {
                    double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
                }
                dp = N * (z * p0 - p1) / (z * z - 1.0);
                x[i] = -z;
                x[N - 1 - i] = z;
                w[i] = w[N - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
            }
        }
    };

    template <int N>
    inline const GaussLegendre<N> &gauss_legendre()
    {
        static const GaussLegendre<N> rule;
        return rule;
    }

    template <int N, typename F>
    inline double gl_panel(F &&f, double a, double b)
    {
        const auto &g = gauss_legendre<N>();
        const double h = 0.5 * (b - a), c = 0.5 * (b + a);
        double s = 0.0;
        for (int i = 0; i < N; ++i)
            s += g.w[i] * f(c + h * g.x[i]);
        return s * h;
    }

    namespace detail
    {
        template <typename F>
        double adaptive_rec(F &f, double a, double b, double whole, double abs_tol, double rel_tol,
                            int depth, int max_depth)
        {
            const double m = 0.5 * (a + b);
            const double left = gl_panel<20>(f, a, m);
            const double right = gl_panel<20>(f, m, b);
            const double sum = left + right;
            if (std::abs(sum - whole) <= std::max(abs_tol, rel_tol * std::abs(sum)) || std::abs(b - a) < 1e-300)
                return sum;
            if (depth >= max_depth)
                throw ConvergenceError("adaptive quadrature: maximum subdivision depth reached");
            return adaptive_rec(f, a, m, left, 0.5 * abs_tol, rel_tol, depth + 1, max_depth) +
                   adaptive_rec(f, m, b, right, 0.5 * abs_tol, rel_tol, depth + 1, max_depth);
        }
    }

    // Adaptive 20-point Gauss-Legendre on [a, b] (bisection until two halves agree with the whole).
    template <typename F>
    inline double integrate(F &&f, double a, double b, double abs_tol = 1e-12, double rel_tol = 1e-10,
                            int max_depth = 40)
    {
        if (a == b)
            return 0.0;
        const double whole = gl_panel<20>(f, a, b);
        return detail::adaptive_rec(f, a, b, whole, abs_tol, rel_tol, 0, max_depth);
    }

    // Integral of f(y, z) over the disk of radius r0 centred at the origin.
    // Polar 64 x 64 Gauss-Legendre panels, refined dyadically in (rho, angle)
    // until a panel and the sum of its four children agree within the tolerance.
    template <typename F>
    class DiskIntegrator
    {
    public:
        DiskIntegrator(F &f, double abs_tol, int max_depth) : f_(f), abs_tol_(abs_tol), max_depth_(max_depth) {}

        double operator()(double r0)
        {
            const double two_pi = 2.0 * std::numbers::pi;
            const double whole = panel(0.0, r0, 0.0, two_pi);
            return refine(0.0, r0, 0.0, two_pi, whole, abs_tol_, 0);
        }

    private:
        double panel(double ra, double rb, double pa, double pb) const
        {
            const auto &g = gauss_legendre<64>();
            const double hr = 0.5 * (rb - ra), cr = 0.5 * (rb + ra);
            const double hp = 0.5 * (pb - pa), cp = 0.5 * (pb + pa);
            std::array<double, 64> cs{}, sn{};
            for (int j = 0; j < 64; ++j)
            {
                const double p = cp + hp * g.x[j];
                cs[j] = std::cos(p);
                sn[j] = std::sin(p);
            }
            double s = 0.0;
            for (int i = 0; i < 64; ++i)
            {
                const double rho = cr + hr * g.x[i];
                double inner = 0.0;
                for (int j = 0; j < 64; ++j)
                    inner += g.w[j] * f_(rho * cs[j], rho * sn[j]);
                s += g.w[i] * rho * inner;
            }
            return s * hr * hp;
        }

        double refine(double ra, double rb, double pa, double pb, double whole, double tol, int depth) const
        {
            const double rm = 0.5 * (ra + rb), pm = 0.5 * (pa + pb);
            const double q1 = panel(ra, rm, pa, pm), q2 = panel(rm, rb, pa, pm);
            const double q3 = panel(ra, rm, pm, pb), q4 = panel(rm, rb, pm, pb);
            const double sum = q1 + q2 + q3 + q4;
            if (std::abs(sum - whole) <= tol)
                return sum;
            if (depth >= max_depth_)
                throw ConvergenceError("disk quadrature: maximum refinement depth reached");
            const double t = 0.25 * tol;
            return refine(ra, rm, pa, pm, q1, t, depth + 1) + refine(rm, rb, pa, pm, q2, t, depth + 1) +
                   refine(ra, rm, pm, pb, q3, t, depth + 1) + refine(rm, rb, pm, pb, q4, t, depth + 1);
        }

        F &f_;
        double abs_tol_;
        int max_depth_;
    };

    template <typename F>
    inline double integrate_disk(F &&f, double r0, double abs_tol = 1e-9, int max_depth = 6)
    {
        DiskIntegrator<std::remove_reference_t<F>> d(f, abs_tol, max_depth);
        return d(r0);
    }
}

#endif
