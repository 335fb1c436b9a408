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

#ifndef FSOCHAN_RANDOM_HPP
#define FSOCHAN_RANDOM_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "errors.hpp"

// Counter-based random numbers. Every trial owns an independent stream keyed by
// (seed, trial index, stream id), so results do not depend on how trials are
// distributed over threads.

namespace fsochan
{
    // Philox4x32-10 block function (Salmon et al., SC'11).
    inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                                   std::array<std::uint32_t, 2> key)
    {
        constexpr std::uint32_t m0 = 0xD2511F53u, m1 = 0xCD9E8D57u;
        constexpr std::uint32_t w0 = 0x9E3779B9u, w1 = 0xBB67AE85u;
        for (int round = 0; round < 10; ++round)
        {
            const std::uint64_t p0 = std::uint64_t(m0) * ctr[0];
            const std::uint64_t p1 = std::uint64_t(m1) * ctr[2];
            const std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
            const std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += w0;
            key[1] += w1;
        }
        return ctr;
    }

    class TrialRng
    {
    public:
        using result_type = std::uint64_t;

        TrialRng(std::uint64_t seed, std::uint64_t trial, std::uint32_t stream = 0)
            : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)}, trial_(trial), stream_(stream)
        {
        }

        static constexpr result_type min() { return 0; }
        static constexpr result_type max() { return ~result_type(0); }

        result_type operator()()
        {
            if (pos_ == 2)
                refill();
            return buf_[pos_++];
        }

        // uniform on the open interval (0, 1)
        double uniform() { return (double((*this)() >> 11) + 0.5) * 0x1p-53; }

        // standard normal, Box-Muller (both variates are used)
        double normal()
        {
            if (has_spare_)
            {
                has_spare_ = false;
                return spare_;
            }
            const double r = std::sqrt(-2.0 * std::log(uniform()));
            const double a = 2.0 * std::numbers::pi * uniform();
            spare_ = r * std::sin(a);
            has_spare_ = true;
            return r * std::cos(a);
        }

        // Gamma(shape, scale 1). Marsaglia-Tsang squeeze for shape >= 1,
        // boosted with U^(1/shape) below one.
        double gamma(double shape)
        {
            if (!(shape > 0.0))
                throw InvalidParameterError("gamma: shape must be > 0");
            if (shape < 1.0)
                return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
            const double d = shape - 1.0 / 3.0;
            const double c = 1.0 / std::sqrt(9.0 * d);
            for (;;)
            {
                double x, v;
                do
                {
                    x = normal();
                    v = 1.0 + c * x;
                } while (v <= 0.0);
                v = v * v * v;
                const double u = uniform();
                const double x2 = x * x;
                if (u < 1.0 - 0.0331 * x2 * x2)
                    return d * v;
                if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
                    return d * v;
            }
        }

    private:
        void refill()
        {
            const auto out = philox4x32({block_, stream_, std::uint32_t(trial_), std::uint32_t(trial_ >> 32)}, key_);
            ++block_;
            buf_[0] = (std::uint64_t(out[1]) << 32) | out[0];
            buf_[1] = (std::uint64_t(out[3]) << 32) | out[2];
            pos_ = 0;
        }

        std::array<std::uint32_t, 2> key_;
        std::uint64_t trial_;
        std::uint32_t stream_;
        std::uint32_t block_ = 0;
        std::array<std::uint64_t, 2> buf_{};
        int pos_ = 2;
        double spare_ = 0.0;
        bool has_spare_ = false;
    };
}

#endif
