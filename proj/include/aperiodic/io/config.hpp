// SPDX-License-Identifier: Apache-2.0
//
// aperiodic-mimo: Monte-Carlo MU-MIMO evaluation and aperiodic array synthesis
// Copyright (C) 2026 The aperiodic-mimo authors
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

#ifndef APERIODIC_IO_CONFIG_HPP
#define APERIODIC_IO_CONFIG_HPP

#include "../errors.hpp"
#include "../scenario.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

namespace aperiodic::io
{
    // Scenario plus the synthesis knobs that may appear in a config file.
    struct ConfigFile
    {
        ScenarioConfig scenario;
        std::optional<double> oversampling;
        std::optional<std::size_t> synthesis_realizations;
    };

    namespace detail
    {
        inline std::string_view trim(std::string_view s)
        {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
                s.remove_prefix(1);
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
                s.remove_suffix(1);
            return s;
        }

        inline double parse_real(const std::string &key, std::string_view v)
        {
            double out = 0.0;
            const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
            if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
                throw ParseError(key, key + ": expected a real number, got '" + std::string(v) + "'");
            return out;
        }

        // Accepts plain integers and integral scientific notation ("1e5").
        inline std::uint64_t parse_count(const std::string &key, std::string_view v)
        {
            std::uint64_t out = 0;
            const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
            if (ec == std::errc() && ptr == v.data() + v.size())
                return out;
            const double d = parse_real(key, v);
            if (d < 0.0 || d != std::floor(d) || d > 9.0e18)
                throw ParseError(key, key + ": expected a non-negative integer, got '" + std::string(v) + "'");
            return static_cast<std::uint64_t>(d);
        }

        inline int parse_int(const std::string &key, std::string_view v)
        {
            int out = 0;
            const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
            if (ec != std::errc() || ptr != v.data() + v.size())
                throw ParseError(key, key + ": expected an integer, got '" + std::string(v) + "'");
            return out;
        }
    } // namespace detail

    // Validates a scenario and rethrows constraint violations as ParseError
    // naming the offending key.
    inline void validate_scenario(const ScenarioConfig &sc)
    {
        if (sc.K < 1)
            throw ParseError("K", "K: must be >= 1");
        if (sc.M < 2)
            throw ParseError("M", "M: must be >= 2");
        if (sc.K > sc.M)
            throw ParseError("K", "K: K > M violates M >= K (M=" + std::to_string(sc.M) + ", K=" + std::to_string(sc.K) + ")");
        if (sc.waves_per_ue < 1 || sc.waves_per_ue > max_waves_per_ue)
            throw ParseError("waves_per_ue", "waves_per_ue: " + std::to_string(sc.waves_per_ue) + " is out of [1, 20]");
        if (sc.realizations < 1)
            throw ParseError("realizations", "realizations: must be >= 1");
        if (sc.aperture && !(*sc.aperture > 0.0))
            throw ParseError("aperture", "aperture: must be > 0");
        sc.validate();
    }

    // key=value lines; '#' starts a comment. Keys: M, K, aperture, waves_per_ue,
    // snr_db, realizations, master_seed (or seed), link, oversampling,
    // synthesis_realizations.
    inline ConfigFile parse_config_file(std::string_view text)
    {
        ConfigFile cfg;
        auto &sc = cfg.scenario;
        std::istringstream in{std::string(text)};
        std::string raw;
        std::size_t line_no = 0;
        while (std::getline(in, raw))
        {
            ++line_no;
            std::string_view line = raw;
            if (const auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = detail::trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ParseError("", "line " + std::to_string(line_no) + ": expected key=value");
            const std::string key{detail::trim(line.substr(0, eq))};
            const std::string_view value = detail::trim(line.substr(eq + 1));

            if (key == "M")
                sc.M = detail::parse_count(key, value);
            else if (key == "K")
                sc.K = detail::parse_count(key, value);
            else if (key == "aperture")
                sc.aperture = detail::parse_real(key, value);
            else if (key == "waves_per_ue")
                sc.waves_per_ue = detail::parse_int(key, value);
            else if (key == "snr_db")
                sc.snr_db = detail::parse_real(key, value);
            else if (key == "realizations")
                sc.realizations = detail::parse_count(key, value);
            else if (key == "master_seed" || key == "seed")
                sc.master_seed = detail::parse_count(key, value);
            else if (key == "link")
            {
                if (value == "downlink")
                    sc.link = Link::downlink;
                else if (value == "uplink")
                    sc.link = Link::uplink;
                else
                    throw ParseError(key, "link: expected 'downlink' or 'uplink', got '" + std::string(value) + "'");
            }
            else if (key == "oversampling")
                cfg.oversampling = detail::parse_real(key, value);
            else if (key == "synthesis_realizations")
                cfg.synthesis_realizations = detail::parse_count(key, value);
            else
                throw ParseError(key, "unknown key '" + key + "' on line " + std::to_string(line_no));
        }
        validate_scenario(sc);
        return cfg;
    }

    inline ScenarioConfig parse_config(std::string_view text)
    {
        return parse_config_file(text).scenario;
    }

} // namespace aperiodic::io

#endif
