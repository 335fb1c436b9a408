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

#ifndef FSOCHAN_ATMOSPHERE_HPP
#define FSOCHAN_ATMOSPHERE_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace fsochan
{
    struct BeamParams
    {
        double wavelength = 1550e-9; // [m]
        double waist = 0.005;        // transmit beam waist w0 [m]

        double wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }
    };

    // Weak-to-strong turbulence parameters of the Gamma-Gamma fading model.
    struct TurbulenceParams
    {
        double alpha = 0.0;     // large-scale eddies
        double beta = 0.0;      // small-scale eddies
        double rytov_var = 0.0; // Rytov variance
        double cn2 = 0.0;       // refractive-index structure parameter [m^(-2/3)]

        double scintillation_index() const { return 1.0 / alpha + 1.0 / beta + 1.0 / (alpha * beta); }
    };

    struct WeatherPreset
    {
        std::string_view name;
        double attenuation; // [dB/m]
    };

    inline constexpr std::array<WeatherPreset, 5> weather_presets{{
        {"clear_air", 0.43e-3},
        {"haze", 4.2e-3},
        {"light_fog", 20e-3},
        {"moderate_fog", 42.2e-3},
        {"heavy_fog", 125e-3},
    }};

    // Attenuation coefficient of a named preset; throws on unknown names.
    inline double weather_attenuation(std::string_view name)
    {
        for (const auto &p : weather_presets)
            if (p.name == name)
                return p.attenuation;
        throw InvalidParameterError("unknown weather preset: " + std::string(name));
    }

    // Exponential Cn^2 profile for low-altitude links, altitude in metres.
    inline double cn2_from_altitude(double altitude)
    {
        if (!(altitude >= 0.0))
            throw InvalidParameterError("cn2_from_altitude: altitude must be >= 0");
        return 1.7e-14 * std::exp(-altitude / 100.0);
    }

    // Deterministic path loss h_p = 10^(-kappa L / 10), with kappa in dB/m.
    inline double path_loss(double L, double attenuation)
    {
        if (!(L >= 0.0) || !(attenuation >= 0.0))
            throw InvalidParameterError("path_loss: distance and attenuation must be >= 0");
        return std::pow(10.0, -attenuation * L / 10.0);
    }

    // Long-term beam radius at distance L.
    inline double beam_width(double L, const BeamParams &beam, double cn2)
    {
        if (!(L >= 0.0) || !(beam.waist > 0.0) || !(beam.wavelength > 0.0) || !(cn2 >= 0.0))
            throw InvalidParameterError("beam_width: invalid arguments");
        const double k = beam.wavenumber();
        const double w0 = beam.waist;
        const double coherence = std::pow(0.55 * cn2 * k * k * L, -3.0 / 5.0);
        const double spread = beam.wavelength * L / (std::numbers::pi * w0 * w0);
        return w0 * std::sqrt(1.0 + (1.0 + 2.0 * w0 * w0 / (coherence * coherence)) * spread * spread);
    }

    inline TurbulenceParams gamma_gamma_params(double L, double altitude, double wavelength)
    {
        if (!(L > 0.0) || !(wavelength > 0.0))
            throw InvalidParameterError("gamma_gamma_params: distance and wavelength must be > 0");
        TurbulenceParams tp;
        tp.cn2 = cn2_from_altitude(altitude);
        const double k = 2.0 * std::numbers::pi / wavelength;
        tp.rytov_var = 1.23 * tp.cn2 * std::pow(k, 7.0 / 6.0) * std::pow(L, 11.0 / 6.0);
        const double s2 = tp.rytov_var;
        const double s125 = std::pow(s2, 6.0 / 5.0);
        tp.alpha = 1.0 / std::expm1(0.49 * s2 / std::pow(1.0 + 1.11 * s125, 7.0 / 6.0));
        tp.beta = 1.0 / std::expm1(0.51 * s2 / std::pow(1.0 + 0.69 * s125, 5.0 / 6.0));
        return tp;
    }
}

#endif
