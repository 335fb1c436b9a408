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

#ifndef FSOCHAN_SPECIAL_MATH_HPP
#define FSOCHAN_SPECIAL_MATH_HPP

#include <cmath>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "quadrature.hpp"

namespace fsochan
{
    struct Tolerance
    {
        double abs_tol = 1e-12;
        double rel_tol = 1e-10;
        int max_terms = 10000;
    };

    // erf comes from the C library; it is odd-symmetric bit for bit.
    inline double erf(double x) { return std::erf(x); }

    // Gaussian tail probability Q(x) = P(N(0,1) > x).
    inline double gaussian_q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

    // Exponentially scaled modified Bessel function exp(-|x|) I0(x).
    inline double bessel_i0e(double x)
    {
        x = std::abs(x);
        if (x <= 20.0)
        {
            // power series, all terms positive
            const double q = 0.25 * x * x;
            double term = 1.0, sum = 1.0;
            for (int k = 1; k < 500; ++k)
            {
                term *= q / (double(k) * double(k));
                sum += term;
                if (term < 1e-17 * sum)
                    break;
            }
            return sum * std::exp(-x);
        }
        // Hankel asymptotic expansion, truncated at its smallest term
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 200; ++k)
        {
            const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
            if (next < 1e-17 * sum || next > term)
                break;
            term = next;
            sum += term;
        }
        return sum / std::sqrt(2.0 * std::numbers::pi * x);
    }

    // I0 is even; the argument is folded to |x|.
    inline double bessel_i0(double x) { return bessel_i0e(x) * std::exp(std::abs(x)); }

    inline double log_bessel_i0(double x) { return std::abs(x) + std::log(bessel_i0e(x)); }

    namespace detail
    {
        // exp(-x) I_k(x) for k = 0..kmax by Miller's backward recurrence, normalised by I0e.
        inline std::vector<double> bessel_ike_sequence(double x, int kmax)
        {
            std::vector<double> out(kmax + 1, 0.0);
            if (x == 0.0)
            {
                out[0] = 1.0;
                return out;
            }
            const int start = kmax + 30 + int(std::sqrt(40.0 * (kmax + x)));
            double ip1 = 0.0, i = 1e-280;
            for (int k = start; k > 0; --k)
            {
                const double im1 = (2.0 * k / x) * i + ip1;
                ip1 = i;
                i = im1;
                if (k - 1 <= kmax)
                    out[k - 1] = i;
                if (std::abs(i) > 1e250)
                {
                    i *= 1e-250;
                    ip1 *= 1e-250;
                    for (int j = k - 1; j <= kmax; ++j)
                        out[j] *= 1e-250;
                }
            }
            const double norm = bessel_i0e(x) / out[0];
            for (auto &v : out)
                v *= norm;
            return out;
        }

        // Sum_{k >= k0} r^k exp(-x) I_k(x), 0 <= r < 1.
        inline double marcum_series(double x, double r, int k0, const Tolerance &tol)
        {
            // I_k(x) / I_0(x) is below 1e-20 well before this index for x < 30
            const int kmax = int(x + 12.0 * std::sqrt(x + 1.0) + 60.0);
            if (kmax > tol.max_terms)
                throw ConvergenceError("marcum_q1: series would exceed max_terms");
            const auto ike = bessel_ike_sequence(x, kmax);
            double sum = 0.0, rk = std::pow(r, k0);
            int k = k0;
            for (; k <= kmax; ++k)
            {
                const double term = rk * ike[k];
                sum += term;
                if (k > x && term <= 1e-17 * sum)
                    break;
                rk *= r;
                if (rk == 0.0)
                    break;
            }
            return sum;
        }

        // Integral representation with the peak at phi = 0:
        //   (1/pi) int_0^pi g(phi) exp(-2 a b sin^2(phi/2)) dphi,
        // where zeta < 1 is the ratio of the smaller to the larger argument and omz = 1 - zeta
        // is passed separately to avoid cancellation when the arguments are close.
        // complement = false : g = (1 - zeta cos) / (1 - 2 zeta cos + zeta^2)   -> Q1 for b > a
        // complement = true  : g = (zeta cos - zeta^2) / (1 - 2 zeta cos + zeta^2) -> 1 - Q1 for a > b
        inline double marcum_integral(double ab, double zeta, double omz, bool complement, const Tolerance &tol)
        {
            auto g = [&](double phi)
            {
                const double s = std::sin(0.5 * phi);
                const double s2 = s * s;
                const double den = omz * omz + 4.0 * zeta * s2;
                const double num = complement ? zeta * (omz - 2.0 * s2) : omz + 2.0 * zeta * s2;
                return num / den * std::exp(-2.0 * ab * s2);
            };
            const double w1 = std::min(std::numbers::pi, std::max(omz, 1e-12) * 4.0);
            // split near the peak so the adaptive rule sees both scales
            const double w2 = std::min(std::numbers::pi, 12.0 / std::sqrt(ab));
            double edges[4] = {0.0, std::min(w1, w2), std::max(w1, w2), std::numbers::pi};
            // the first panel holds the peak; later panels only need accuracy relative to it,
            // which keeps the rule from chasing denormal-sized tails
            const double rel = 1e-3 * tol.rel_tol;
            double sum = 0.0;
            for (int i = 0; i < 3; ++i)
                if (edges[i + 1] > edges[i])
                    sum += quad::integrate(g, edges[i], edges[i + 1], rel * std::abs(sum), rel, 60);
            return sum / std::numbers::pi;
        }

        // Q1(a, b) for b > a > 0, or 1 - Q1(a, b) for a > b > 0 when complement is set;
        // neither is formed by subtracting from one.
        inline double marcum_small_side(double a, double b, bool complement, const Tolerance &tol)
        {
            const double ab = a * b;
            const double pre = std::exp(-0.5 * (a - b) * (a - b));
            if (pre == 0.0)
                return 0.0;
            const double hi = std::max(a, b);
            const double r = std::min(a, b) / hi;
            if (ab < 30.0)
                return pre * marcum_series(ab, r, complement ? 1 : 0, tol);
            return pre * marcum_integral(ab, r, std::abs(a - b) / hi, complement, tol);
        }
    }

    // First-order Marcum Q-function Q1(a, b) = int_b^inf x exp(-(x^2 + a^2)/2) I0(a x) dx.
    inline double marcum_q1(double a, double b, const Tolerance &tol = {})
    {
        if (!(a >= 0.0) || !(b >= 0.0))
            throw DomainError("marcum_q1: arguments must be non-negative");
        if (b == 0.0)
            return 1.0;
        if (a == 0.0)
            return std::exp(-0.5 * b * b);
        if (a == b)
            return 0.5 * (1.0 + bessel_i0e(a * a));
        if (b > a)
            return detail::marcum_small_side(a, b, false, tol);
        return 1.0 - detail::marcum_small_side(a, b, true, tol);
    }

    // 1 - Q1(a, b), accurate when Q1 is close to one.
    inline double marcum_q1_complement(double a, double b, const Tolerance &tol = {})
    {
        if (!(a >= 0.0) || !(b >= 0.0))
            throw DomainError("marcum_q1_complement: arguments must be non-negative");
        if (b == 0.0)
            return 0.0;
        if (a == 0.0)
            return -std::expm1(-0.5 * b * b);
        if (a == b)
            return 0.5 * (1.0 - bessel_i0e(a * a));
        if (a > b)
            return detail::marcum_small_side(a, b, true, tol);
        return 1.0 - detail::marcum_small_side(a, b, false, tol);
    }
}

#endif
