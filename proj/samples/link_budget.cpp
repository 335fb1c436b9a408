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

// Outage and ergodic rate of a hovering UAV 500 m away, with the library API only.

#include <cstdio>

#include "fsochan/fsochan.hpp"

int main()
{
    using namespace fsochan;

    const MeanState mean = make_mean_state(500.0, std::numbers::pi / 8.0, 5.0 * std::numbers::pi / 8.0);

    // 10 cm position jitter along (3,1,2) and matching angular jitter
    const IndependentGaussian jitter = presets::scaled_jitter(1.0);
    const GmlDist g = make_gml_dist(jitter, mean, 0.3, 0.1);

    std::printf("A0 = %.6f  t = %.6f  q = %.6f  Omega = %.6e m^2\n", g.approx.peak_gain, g.approx.width_factor,
                g.mis.q, g.mis.mean_square);

    LinkBudget lb;
    lb.path_loss = path_loss(500.0, weather_attenuation("clear_air"));
    lb.snr_threshold = gamma_thr_from_rate(0.5);
    for (double db : {40.0, 60.0, 80.0})
    {
        lb.mean_snr = db_to_linear(db);
        const OutageResult o = outage(g, lb);
        std::printf("%5.1f dB  P_out = %.4e  rate = %.4f bit/symbol\n", db, o.p_out, ergodic_rate(g, lb));
    }
    return 0;
}
