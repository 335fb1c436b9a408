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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fsochan/quadrature.hpp"
#include "fsochan/special_math.hpp"

using namespace fsochan;

namespace
{
    // Maclaurin series of erf in long double.
    long double erf_series(long double x)
    {
        long double term = x, sum = x;
        for (int n = 1; n < 200; ++n)
        {
            term *= -x * x / n;
            const long double add = term / (2 * n + 1);
            sum += add;
            if (std::abs(add) < 1e-22L)
                break;
        }
        return 2.0L / std::sqrt(std::numbers::pi_v<long double>) * sum;
    }

    // I0 power series in long double.
    long double i0_series(long double x)
    {
        long double term = 1.0L, sum = 1.0L;
        const long double q = x * x / 4.0L;
        for (int k = 1; k < 500; ++k)
        {
            term *= q / (static_cast<long double>(k) * k);
            sum += term;
            if (term < 1e-22L * sum)
                break;
        }
        return sum;
    }

    // Q1(a, b) = exp(-(a^2 + b^2) / 2) sum_k (a/b)^k I_k(ab), terms from the library-independent std::cyl_bessel_i.
    double marcum_bessel_series(double a, double b)
    {
        double sum = 0.0;
        const double r = a / b;
        double rk = 1.0;
        for (int k = 0; k < 400; ++k)
        {
            const double t = rk * std::cyl_bessel_i(double(k), a * b);
            sum += t;
            if (k > a * b && t < 1e-14 * sum)
                break;
            rk *= r;
        }
        return std::exp(-0.5 * (a * a + b * b)) * sum;
    }

    // Q1(a, b) as the tail integral of the Rice density.
    double marcum_tail_integral(double a, double b)
    {
        auto rice = [a](double x) { return x * std::exp(-0.5 * (x - a) * (x - a)) * bessel_i0e(a * x); };
        const double hi = std::max(a, b) + 40.0;
        return quad::integrate(rice, b, hi, 1e-15, 1e-13);
    }
}

TEST(Erf, ReferencePoints)
{
    EXPECT_EQ(fsochan::erf(0.0), 0.0);
    EXPECT_NEAR(fsochan::erf(6.0), 1.0, 1e-15);
    EXPECT_NEAR(fsochan::erf(0.5), double(erf_series(0.5L)), 1e-16);
    EXPECT_NEAR(fsochan::erf(0.5), 0.5204998778130465, 1e-16);
}

TEST(Erf, OddAndMonotone)
{
    double prev = -1.0;
    for (double x = -5.0; x <= 5.0; x += 0.01)
    {
        EXPECT_DOUBLE_EQ(fsochan::erf(-x), -fsochan::erf(x));
        const double v = fsochan::erf(x);
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(Erf, MatchesSeriesOnGrid)
{
    for (double x = 0.0; x <= 3.0; x += 0.125)
        EXPECT_NEAR(fsochan::erf(x), double(erf_series(x)), 2e-16);
}

TEST(BesselI0, ReferencePoints)
{
    EXPECT_EQ(bessel_i0(0.0), 1.0);
    EXPECT_NEAR(bessel_i0(1.0), double(i0_series(1.0L)), 1e-14);
    EXPECT_NEAR(bessel_i0(1.0), 1.2660658777520083, 1e-14);
    const double asym = std::exp(50.0) / std::sqrt(100.0 * std::numbers::pi);
    EXPECT_NEAR(bessel_i0(50.0) / asym, 1.0, 5e-3);
}

TEST(BesselI0, MatchesPowerSeries)
{
    for (double x = 0.0; x <= 60.0; x += 0.37)
    {
        const double ref = double(i0_series(x));
        EXPECT_NEAR(bessel_i0(x) / ref, 1.0, 1e-13) << "x=" << x;
        EXPECT_NEAR(bessel_i0e(x) / (ref * std::exp(-x)), 1.0, 1e-13) << "x=" << x;
    }
}

TEST(BesselI0, ScaledFormStaysFiniteForLargeArguments)
{
    for (double x : {1e3, 1e5, 1e8})
    {
        const double v = bessel_i0e(x);
        EXPECT_NEAR(v * std::sqrt(2.0 * std::numbers::pi * x), 1.0, 1.0 / x);
        EXPECT_NEAR(log_bessel_i0(x), x + std::log(v), 1e-9 * x);
    }
    EXPECT_EQ(bessel_i0(-2.0), bessel_i0(2.0));
}

TEST(GaussianQ, ReferencePoints)
{
    EXPECT_EQ(gaussian_q(0.0), 0.5);
    EXPECT_EQ(gaussian_q(std::numeric_limits<double>::infinity()), 0.0);
    EXPECT_NEAR(gaussian_q(1.6448536), 0.05, 1e-7);
    for (double x = -4.0; x <= 4.0; x += 0.5)
        EXPECT_NEAR(gaussian_q(x) + gaussian_q(-x), 1.0, 1e-15);
}

TEST(MarcumQ1, ClosedForms)
{
    EXPECT_EQ(marcum_q1(3.0, 0.0), 1.0);
    EXPECT_NEAR(marcum_q1(0.0, 2.0), std::exp(-2.0), 1e-15);
    EXPECT_NEAR(marcum_q1(0.0, 2.0), 0.1353353, 1e-7);
    for (double a : {0.5, 2.0, 8.0})
        EXPECT_NEAR(marcum_q1(a, a), 0.5 * (1.0 + bessel_i0e(a * a)), 1e-14);
}

TEST(MarcumQ1, MatchesBesselSeriesOracle)
{
    EXPECT_NEAR(marcum_q1(2.0, 1.0), marcum_bessel_series(2.0, 1.0), 1e-12);
    EXPECT_NEAR(marcum_q1(2.0, 1.0), 0.918107696369406, 1e-12);
    EXPECT_NEAR(marcum_q1(1.0, 2.0), 0.26901206003591, 1e-12);
    EXPECT_NEAR(marcum_q1(0.5, 3.0), 0.017843673386482212, 1e-14);
    EXPECT_NEAR(marcum_q1(10.0, 12.0), 0.025329474297941418, 1e-13);
    EXPECT_NEAR(marcum_q1(12.0, 10.0), 0.9796043623962596, 1e-13);
    EXPECT_NEAR(marcum_q1(30.0, 31.0), 0.1626555811274606, 1e-12);
    for (double a : {0.1, 0.7, 1.5, 3.0})
        for (double b : {0.2, 1.0, 2.5, 4.0})
            EXPECT_NEAR(marcum_q1(a, b), marcum_bessel_series(a, b), 1e-12) << a << "," << b;
}

TEST(MarcumQ1, MatchesTailIntegralAcrossRegimes)
{
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> U(0.0, 25.0);
    for (int i = 0; i < 60; ++i)
    {
        const double a = U(gen), b = U(gen);
        const double ref = marcum_tail_integral(a, b);
        EXPECT_NEAR(marcum_q1(a, b), ref, 1e-11 + 1e-9 * ref) << a << "," << b;
        EXPECT_NEAR(marcum_q1_complement(a, b), 1.0 - ref, 1e-11 + 1e-9 * (1.0 - ref)) << a << "," << b;
    }
}

TEST(MarcumQ1, SymmetryIdentity)
{
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> U(0.0, 40.0);
    for (int i = 0; i < 200; ++i)
    {
        const double a = U(gen), b = U(gen);
        const double lhs = marcum_q1(a, b) + marcum_q1(b, a);
        const double rhs = 1.0 + std::exp(-0.5 * (a - b) * (a - b)) * bessel_i0e(a * b);
        EXPECT_NEAR(lhs, rhs, 1e-12) << a << "," << b;
    }
}

TEST(MarcumQ1, RangeAndMonotonicity)
{
    for (double a : {0.0, 0.3, 2.0, 9.0, 40.0})
    {
        double prev = 1.0;
        for (double b = 0.0; b <= 60.0; b += 0.25)
        {
            const double q = marcum_q1(a, b);
            EXPECT_GE(q, 0.0);
            EXPECT_LE(q, 1.0);
            EXPECT_LE(q, prev + 1e-15);
            prev = q;
        }
    }
}

TEST(MarcumQ1, DeepTailKeepsRelativeAccuracy)
{
    // far below double epsilon when formed as 1 - Q1; references from the 60-digit Bessel series
    EXPECT_NEAR(marcum_q1(2.0, 20.0) / 3.0943562911948852e-72, 1.0, 1e-9);
    EXPECT_NEAR(marcum_q1_complement(20.0, 2.0) / 3.047134968841463e-73, 1.0, 1e-9);
}

TEST(MarcumQ1, CloseLargeArgumentsAreFastAndConsistent)
{
    // the regime of a Hoyt model with a nearly rank-one covariance
    for (double a : {1e3, 1e5, 3.5e5})
        for (double d : {0.5, 2.2, 6.0})
        {
            const double b = a + d;
            const double q = marcum_q1(a, b), p = marcum_q1(b, a);
            const double rhs = 1.0 + std::exp(-0.5 * d * d) * bessel_i0e(a * b);
            EXPECT_NEAR(q + p, rhs, 1e-12) << a << "," << d;
            // large-argument limit: Q1(a, a + d) -> Q(d) (Gaussian tail)
            EXPECT_NEAR(q, gaussian_q(d), 2.0 / std::sqrt(a)) << a << "," << d;
            EXPECT_NEAR(marcum_q1_complement(b, a), 1.0 - p, 1e-12);
        }
}

TEST(MarcumQ1, RejectsNegativeArguments)
{
    EXPECT_THROW(marcum_q1(-1.0, 1.0), DomainError);
    EXPECT_THROW(marcum_q1(1.0, -1.0), DomainError);
}
