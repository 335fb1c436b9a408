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

#ifndef FSOCHAN_SCENARIO_HPP
#define FSOCHAN_SCENARIO_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "atmosphere.hpp"
#include "errors.hpp"
#include "fluctuation_models.hpp"
#include "geometry.hpp"
#include "gml_statistics.hpp"
#include "link_performance.hpp"
#include "monte_carlo.hpp"

// Scenario files (JSON). Every object rejects keys it does not know.
//
// {
//   "name": "...",                                   optional
//   "geometry": { "distance_m": 500, "azimuth": "22.5deg", "polar": "112.5deg", "altitude_m": 120 },
//   "beam": { "wavelength_m": 1.55e-6, "waist_m": 0.005, "width_m": 0.3, "aperture_radius_m": 0.1 },
//   "weather": "clear_air"  or  { "attenuation_db_per_m": 4.3e-4 },
//   "fluctuation": { "model": "independent_gaussian" | "correlated_gaussian" | "correlated_uniform",
//                    "position_std_m": [sx, sy, sz], "orientation_std": ["..rad", "..rad"],
//                    "wind_std_m": 0.1, "wind_direction": [3, 4, 5], "wind_orientation_gain_per_m": [0, 0] },
//   "approximation": { "width_rule": "geometric", "routing": "rank" },
//   "link": { "responsivity": 1, "rate_threshold": 0.5 | "snr_threshold": 2.31,
//             "mean_snr_db": { "start": 0, "stop": 100, "step": 5 } },
//   "conditional": { "footprints_m": [[0, 0], [0.1, 0.1]], "azimuth_points": 181 },
//   "distribution": { "points": 200 },
//   "simulation": { "trials": 1000000, "seed": 1, "mode": "linearized_u", "turbulence": false, "workers": 1 }
// }
//
// Angles are strings with a "deg" or "rad" suffix. The beam width defaults to 0.3 m;
// "width_m": "computed" derives it from the waist and the turbulence strength.
// Omitted fields take the reference values (500 m, azimuth 22.5 deg, polar
// 112.5 deg, 120 m altitude, 1550 nm, r0 = 0.1 m, wind direction (3,1,2)).

namespace fsochan
{
    using json = nlohmann::json;

    struct Scenario
    {
        std::string name;
        double distance = 500.0;
        double azimuth = std::numbers::pi / 8.0;
        double polar = 5.0 * std::numbers::pi / 8.0;
        double altitude = 120.0;

        BeamParams beam;
        std::optional<double> width_override = 0.3; // empty: computed from the waist
        double aperture_radius = 0.1;

        std::string weather = "clear_air";
        double attenuation = 0.43e-3;

        FluctuationModel model = IndependentGaussian{};
        WidthRule width_rule = WidthRule::geometric;
        RoutingRule routing = RoutingRule::rank;

        double responsivity = 1.0;
        std::optional<double> rate_threshold;
        double snr_threshold = 2.0 * std::numbers::pi / std::numbers::e;
        double snr_db_start = 0.0, snr_db_stop = 100.0, snr_db_step = 5.0;

        std::vector<Footprint> footprints{{0.0, 0.0}, {0.1, 0.1}};
        int azimuth_points = 181;
        int dist_points = 200;

        SimConfig sim;
        std::string hash; // FNV-1a 64 of the canonical JSON text

        MeanState mean() const { return make_mean_state(distance, azimuth, polar); }

        double beam_width() const
        {
            return width_override ? *width_override : fsochan::beam_width(distance, beam, cn2_from_altitude(altitude));
        }

        double path_loss() const { return fsochan::path_loss(distance, attenuation); }

        TurbulenceParams turbulence() const { return gamma_gamma_params(distance, altitude, beam.wavelength); }

        ChannelSetup setup() const
        {
            ChannelSetup s;
            s.mean = mean();
            s.model = model;
            s.beam_width = beam_width();
            s.aperture_radius = aperture_radius;
            s.rule = width_rule;
            s.turbulence = turbulence();
            return s;
        }

        GmlDist gml_dist() const { return make_gml_dist(model, mean(), beam_width(), aperture_radius, width_rule, routing); }

        LinkBudget budget(double snr_db) const
        {
            return {responsivity, path_loss(), db_to_linear(snr_db), snr_threshold};
        }

        // Mean SNR grid in dB; `points` overrides the step with an even spacing.
        std::vector<double> snr_grid_db(std::optional<int> points = std::nullopt) const
        {
            std::vector<double> g;
            if (points)
            {
                if (*points < 1)
                    throw ScenarioError("grid must have at least one point");
                for (int i = 0; i < *points; ++i)
                    g.push_back(*points == 1 ? snr_db_start
                                             : snr_db_start + (snr_db_stop - snr_db_start) * i / (*points - 1));
                return g;
            }
            const int n = int(std::floor((snr_db_stop - snr_db_start) / snr_db_step + 1e-9)) + 1;
            for (int i = 0; i < n; ++i)
                g.push_back(snr_db_start + snr_db_step * i);
            return g;
        }
    };

    namespace detail
    {
        inline void check_keys(const json &j, const std::string &where, std::initializer_list<const char *> allowed)
        {
            if (!j.is_object())
                throw ScenarioError(where + ": expected an object");
            for (auto it = j.begin(); it != j.end(); ++it)
            {
                bool ok = false;
                for (const char *a : allowed)
                    ok = ok || it.key() == a;
                if (!ok)
                    throw ScenarioError(where + ": unknown key '" + it.key() + "'");
            }
        }

        inline double number(const json &j, const std::string &where)
        {
            if (!j.is_number())
                throw ScenarioError(where + ": expected a number");
            const double v = j.get<double>();
            if (!std::isfinite(v))
                throw ScenarioError(where + ": not finite");
            return v;
        }

        // "<number>deg" or "<number>rad", returned in radians
        inline double angle(const json &j, const std::string &where)
        {
            if (!j.is_string())
                throw ScenarioError(where + ": angles are strings with a 'deg' or 'rad' suffix");
            const std::string s = j.get<std::string>();
            const char *begin = s.c_str();
            char *end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin)
                throw ScenarioError(where + ": cannot parse angle '" + s + "'");
            std::string unit(end);
            while (!unit.empty() && unit.front() == ' ')
                unit.erase(unit.begin());
            if (!std::isfinite(v))
                throw ScenarioError(where + ": not finite");
            if (unit == "deg")
                return v * std::numbers::pi / 180.0;
            if (unit == "rad")
                return v;
            throw ScenarioError(where + ": angle '" + s + "' needs a 'deg' or 'rad' suffix");
        }

        inline std::vector<double> numbers(const json &j, const std::string &where, std::size_t n)
        {
            if (!j.is_array() || j.size() != n)
                throw ScenarioError(where + ": expected an array of " + std::to_string(n) + " numbers");
            std::vector<double> v;
            for (std::size_t i = 0; i < n; ++i)
                v.push_back(number(j[i], where));
            return v;
        }

        inline std::uint64_t fnv1a64(const std::string &s)
        {
            std::uint64_t h = 0xcbf29ce484222325ull;
            for (unsigned char c : s)
            {
                h ^= c;
                h *= 0x100000001b3ull;
            }
            return h;
        }

        inline IndependentGaussian parse_jitter(const json &f)
        {
            IndependentGaussian ig;
            if (f.contains("position_std_m"))
            {
                const auto p = numbers(f["position_std_m"], "fluctuation.position_std_m", 3);
                ig.std_x = p[0];
                ig.std_y = p[1];
                ig.std_z = p[2];
            }
            if (f.contains("orientation_std"))
            {
                const json &o = f["orientation_std"];
                if (!o.is_array() || o.size() != 2)
                    throw ScenarioError("fluctuation.orientation_std: expected [theta, phi]");
                ig.std_theta = angle(o[0], "fluctuation.orientation_std[0]");
                ig.std_phi = angle(o[1], "fluctuation.orientation_std[1]");
            }
            return ig;
        }

        // defaults: position direction (3,1,2), orientation gain (1,2)/(sqrt(5) L)
        inline WindGain parse_gain(const json &f, double distance)
        {
            std::vector<double> v{3.0, 1.0, 2.0};
            if (f.contains("wind_direction"))
                v = numbers(f["wind_direction"], "fluctuation.wind_direction", 3);
            const double n = std::sqrt(5.0) * distance;
            std::vector<double> t{1.0 / n, 2.0 / n};
            if (f.contains("wind_orientation_gain_per_m"))
                t = numbers(f["wind_orientation_gain_per_m"], "fluctuation.wind_orientation_gain_per_m", 2);
            try
            {
                return make_wind_gain(v[0], v[1], v[2], t[0], t[1]);
            }
            catch (const InvalidParameterError &e)
            {
                throw ScenarioError(std::string("fluctuation: ") + e.what());
            }
        }
    }

    inline Scenario parse_scenario(const std::string &text)
    {
        json root;
        try
        {
            root = json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
        }
        using namespace detail;
        check_keys(root, "scenario",
                   {"name", "geometry", "beam", "weather", "fluctuation", "approximation", "link", "conditional",
                    "distribution", "simulation"});
        Scenario sc;
        sc.hash = [&]
        {
            char buf[17];
            std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a64(root.dump()));
            return std::string(buf);
        }();
        if (root.contains("name"))
        {
            if (!root["name"].is_string())
                throw ScenarioError("name: expected a string");
            sc.name = root["name"].get<std::string>();
        }

        if (!root.contains("geometry"))
            throw ScenarioError("scenario: 'geometry' is required");
        {
            const json &g = root["geometry"];
            check_keys(g, "geometry", {"distance_m", "azimuth", "polar", "altitude_m"});
            if (g.contains("distance_m"))
                sc.distance = number(g["distance_m"], "geometry.distance_m");
            if (g.contains("azimuth"))
                sc.azimuth = angle(g["azimuth"], "geometry.azimuth");
            if (g.contains("polar"))
                sc.polar = angle(g["polar"], "geometry.polar");
            if (g.contains("altitude_m"))
                sc.altitude = number(g["altitude_m"], "geometry.altitude_m");
            if (!(sc.distance > 0.0) || !(sc.altitude >= 0.0))
                throw ScenarioError("geometry: distance must be > 0 and altitude >= 0");
        }

        if (root.contains("beam"))
        {
            const json &b = root["beam"];
            check_keys(b, "beam", {"wavelength_m", "waist_m", "width_m", "aperture_radius_m"});
            if (b.contains("wavelength_m"))
                sc.beam.wavelength = number(b["wavelength_m"], "beam.wavelength_m");
            if (b.contains("waist_m"))
                sc.beam.waist = number(b["waist_m"], "beam.waist_m");
            if (b.contains("width_m"))
            {
                if (b["width_m"].is_string() && b["width_m"].get<std::string>() == "computed")
                    sc.width_override.reset();
                else
                    sc.width_override = number(b["width_m"], "beam.width_m");
            }
            if (b.contains("aperture_radius_m"))
                sc.aperture_radius = number(b["aperture_radius_m"], "beam.aperture_radius_m");
            if (!(sc.beam.wavelength > 0.0) || !(sc.beam.waist > 0.0) || !(sc.aperture_radius > 0.0) ||
                (sc.width_override && !(*sc.width_override > 0.0)))
                throw ScenarioError("beam: lengths must be > 0");
        }

        if (root.contains("weather"))
        {
            const json &w = root["weather"];
            if (w.is_string())
            {
                sc.weather = w.get<std::string>();
                try
                {
                    sc.attenuation = weather_attenuation(sc.weather);
                }
                catch (const InvalidParameterError &e)
                {
                    throw ScenarioError(std::string("weather: ") + e.what());
                }
            }
            else
            {
                check_keys(w, "weather", {"attenuation_db_per_m"});
                if (!w.contains("attenuation_db_per_m"))
                    throw ScenarioError("weather: 'attenuation_db_per_m' is required");
                sc.weather = "custom";
                sc.attenuation = number(w["attenuation_db_per_m"], "weather.attenuation_db_per_m");
                if (!(sc.attenuation >= 0.0))
                    throw ScenarioError("weather: attenuation must be >= 0");
            }
        }

        if (!root.contains("fluctuation"))
            throw ScenarioError("scenario: 'fluctuation' is required");
        {
            const json &f = root["fluctuation"];
            check_keys(f, "fluctuation",
                       {"model", "position_std_m", "orientation_std", "wind_std_m", "wind_direction",
                        "wind_orientation_gain_per_m"});
            if (!f.contains("model") || !f["model"].is_string())
                throw ScenarioError("fluctuation.model: expected a string");
            const std::string m = f["model"].get<std::string>();
            auto forbid = [&](std::initializer_list<const char *> keys)
            {
                for (const char *k : keys)
                    if (f.contains(k))
                        throw ScenarioError("fluctuation: '" + std::string(k) + "' does not apply to " + m);
            };
            if (m == "independent_gaussian")
            {
                forbid({"wind_std_m", "wind_direction", "wind_orientation_gain_per_m"});
                sc.model = parse_jitter(f);
            }
            else if (m == "correlated_gaussian")
            {
                CorrelatedGaussian cg;
                cg.independent = parse_jitter(f);
                if (!f.contains("wind_std_m"))
                    throw ScenarioError("fluctuation.wind_std_m is required");
                cg.wind_std = number(f["wind_std_m"], "fluctuation.wind_std_m");
                cg.gain = parse_gain(f, sc.distance);
                sc.model = cg;
            }
            else if (m == "correlated_uniform")
            {
                forbid({"position_std_m", "orientation_std"});
                CorrelatedUniform cu;
                if (!f.contains("wind_std_m"))
                    throw ScenarioError("fluctuation.wind_std_m is required");
                cu.wind_std = number(f["wind_std_m"], "fluctuation.wind_std_m");
                cu.gain = parse_gain(f, sc.distance);
                sc.model = cu;
            }
            else
                throw ScenarioError("fluctuation.model: unknown model '" + m + "'");
            try
            {
                validate(sc.model);
            }
            catch (const InvalidParameterError &e)
            {
                throw ScenarioError(std::string("fluctuation: ") + e.what());
            }
        }

        if (root.contains("approximation"))
        {
            const json &a = root["approximation"];
            check_keys(a, "approximation", {"width_rule", "routing"});
            try
            {
                if (a.contains("width_rule"))
                    sc.width_rule = width_rule_from_string(a["width_rule"].get<std::string>());
            }
            catch (const std::exception &e)
            {
                throw ScenarioError(std::string("approximation.width_rule: ") + e.what());
            }
            if (a.contains("routing"))
            {
                const std::string r = a["routing"].is_string() ? a["routing"].get<std::string>() : "";
                if (r == "rank")
                    sc.routing = RoutingRule::rank;
                else if (r == "wind_trace")
                    sc.routing = RoutingRule::wind_trace;
                else
                    throw ScenarioError("approximation.routing: expected 'rank' or 'wind_trace'");
            }
        }

        if (root.contains("link"))
        {
            const json &l = root["link"];
            check_keys(l, "link", {"responsivity", "rate_threshold", "snr_threshold", "mean_snr_db"});
            if (l.contains("responsivity"))
                sc.responsivity = number(l["responsivity"], "link.responsivity");
            if (l.contains("rate_threshold") && l.contains("snr_threshold"))
                throw ScenarioError("link: give either 'rate_threshold' or 'snr_threshold', not both");
            if (l.contains("rate_threshold"))
            {
                sc.rate_threshold = number(l["rate_threshold"], "link.rate_threshold");
                if (!(*sc.rate_threshold > 0.0))
                    throw ScenarioError("link.rate_threshold must be > 0");
                sc.snr_threshold = gamma_thr_from_rate(*sc.rate_threshold);
            }
            if (l.contains("snr_threshold"))
                sc.snr_threshold = number(l["snr_threshold"], "link.snr_threshold");
            if (l.contains("mean_snr_db"))
            {
                const json &g = l["mean_snr_db"];
                check_keys(g, "link.mean_snr_db", {"start", "stop", "step"});
                if (g.contains("start"))
                    sc.snr_db_start = number(g["start"], "link.mean_snr_db.start");
                if (g.contains("stop"))
                    sc.snr_db_stop = number(g["stop"], "link.mean_snr_db.stop");
                if (g.contains("step"))
                    sc.snr_db_step = number(g["step"], "link.mean_snr_db.step");
                if (!(sc.snr_db_step > 0.0) || sc.snr_db_stop < sc.snr_db_start)
                    throw ScenarioError("link.mean_snr_db: need step > 0 and stop >= start");
            }
            if (!(sc.responsivity > 0.0) || !(sc.snr_threshold > 0.0))
                throw ScenarioError("link: responsivity and threshold must be > 0");
        }

        if (root.contains("conditional"))
        {
            const json &c = root["conditional"];
            check_keys(c, "conditional", {"footprints_m", "azimuth_points"});
            if (c.contains("footprints_m"))
            {
                const json &fp = c["footprints_m"];
                if (!fp.is_array() || fp.empty())
                    throw ScenarioError("conditional.footprints_m: expected a non-empty array of [y, z]");
                sc.footprints.clear();
                for (const auto &p : fp)
                {
                    const auto v = numbers(p, "conditional.footprints_m[]", 2);
                    sc.footprints.push_back({v[0], v[1]});
                }
            }
            if (c.contains("azimuth_points"))
            {
                if (!c["azimuth_points"].is_number_integer() || c["azimuth_points"].get<int>() < 2)
                    throw ScenarioError("conditional.azimuth_points: expected an integer >= 2");
                sc.azimuth_points = c["azimuth_points"].get<int>();
            }
        }

        if (root.contains("distribution"))
        {
            const json &d = root["distribution"];
            check_keys(d, "distribution", {"points"});
            if (d.contains("points"))
            {
                if (!d["points"].is_number_integer() || d["points"].get<int>() < 2)
                    throw ScenarioError("distribution.points: expected an integer >= 2");
                sc.dist_points = d["points"].get<int>();
            }
        }

        if (root.contains("simulation"))
        {
            const json &s = root["simulation"];
            check_keys(s, "simulation", {"trials", "seed", "mode", "turbulence", "workers"});
            if (s.contains("trials"))
            {
                if (!s["trials"].is_number_unsigned() || s["trials"].get<std::uint64_t>() < 1)
                    throw ScenarioError("simulation.trials: expected a positive integer");
                sc.sim.n_trials = s["trials"].get<std::size_t>();
            }
            if (s.contains("seed"))
            {
                if (!s["seed"].is_number_unsigned())
                    throw ScenarioError("simulation.seed: expected a non-negative integer");
                sc.sim.seed = s["seed"].get<std::uint64_t>();
            }
            if (s.contains("mode"))
            {
                try
                {
                    sc.sim.mode = sim_mode_from_string(s["mode"].get<std::string>());
                }
                catch (const std::exception &e)
                {
                    throw ScenarioError(std::string("simulation.mode: ") + e.what());
                }
            }
            if (s.contains("turbulence"))
            {
                if (!s["turbulence"].is_boolean())
                    throw ScenarioError("simulation.turbulence: expected true or false");
                sc.sim.include_turbulence = s["turbulence"].get<bool>();
            }
            if (s.contains("workers"))
            {
                if (!s["workers"].is_number_unsigned() || s["workers"].get<unsigned>() < 1)
                    throw ScenarioError("simulation.workers: expected a positive integer");
                sc.sim.workers = s["workers"].get<unsigned>();
            }
        }
        return sc;
    }

    inline Scenario load_scenario(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ScenarioError("cannot open scenario file: " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_scenario(ss.str());
    }
}

#endif
