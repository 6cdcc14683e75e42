// SPDX-License-Identifier: Apache-2.0
//
// hta - design and analysis library for bidirectional multibeam transmitarrays
// Copyright (C) 2026 The hta authors
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

// Run configuration. The file format is line based:
//
//   # comment
//   key = value
//
// Keys are dotted (`ta.size_mm`); feed lines are indexed
// (`feeds[0].id = A1`, `feeds[0].x_mm = -160`). Lists are comma separated.
// Unknown keys are rejected. Relative paths resolve against the directory of
// the config file.

#pragma once

#include "geometry.hpp"
#include "scenario.hpp"
#include "unitcell.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hta
{

/// Malformed configuration (exit code 2 at the command line).
struct ConfigError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct RunConfig
{
    LayoutConfig layout;
    EngineConfig engine;
    std::vector<double> frequencies{9.0, 9.75, 10.5};
    std::filesystem::path output_dir = "out";
    std::filesystem::path measured_targets; // empty: report without measured targets
    PolarizationState default_state = PolarizationState::X;
    std::string uc1_source = "builtin";
    std::string uc2_source = "builtin";
};

namespace detail
{
inline std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double to_double(const std::string &key, const std::string &v)
{
    double out = 0.0;
    const char *first = v.data();
    const char *last = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last || !std::isfinite(out))
        throw ConfigError("config key '" + key + "': '" + v + "' is not a number");
    return out;
}

inline bool to_bool(const std::string &key, const std::string &v)
{
    if (v == "true" || v == "1" || v == "on" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "off" || v == "no")
        return false;
    throw ConfigError("config key '" + key + "': '" + v + "' is not a boolean");
}

inline std::vector<std::string> split_list(const std::string &v)
{
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

inline std::filesystem::path resolve(const std::filesystem::path &base, const std::string &p)
{
    std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}
} // namespace detail

/// Raw key/value pairs in file order; duplicate keys are an error.
inline std::map<std::string, std::string> parse_key_values(std::istream &in)
{
    std::map<std::string, std::string> kv;
    std::string line;
    int n = 0;
    while (std::getline(in, line))
    {
        ++n;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(n) + ": expected 'key = value'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(n) + ": empty key");
        if (!kv.emplace(key, value).second)
            throw ConfigError("config line " + std::to_string(n) + ": duplicate key '" + key + "'");
    }
    return kv;
}

/// Builds a RunConfig from key/value text. Curve files are loaded here, so
/// a missing curve surfaces as IoError carrying its path.
inline RunConfig config_from_stream(std::istream &in, const std::filesystem::path &base_dir = {})
{
    using detail::to_double;
    const auto kv = parse_key_values(in);
    RunConfig rc;
    auto &L = rc.layout;
    auto &E = rc.engine;
    std::map<int, std::map<std::string, std::string>> feed_fields;
    const std::regex feed_key(R"(feeds\[(\d+)\]\.(id|x_mm|y_mm))");

    for (const auto &[key, v] : kv)
    {
        std::smatch m;
        if (std::regex_match(key, m, feed_key))
        {
            feed_fields[std::stoi(m[1].str())][m[2].str()] = v;
            continue;
        }
        if (key == "f_mm")
            L.f_mm = to_double(key, v);
        else if (key == "h_mm")
            L.h_mm = to_double(key, v);
        else if (key == "F_mm")
            L.F_mm = to_double(key, v);
        else if (key == "d_mm")
            L.d_mm = to_double(key, v);
        else if (key == "ta.size_mm")
            L.ta_size_mm = to_double(key, v);
        else if (key == "ta.period_mm")
            L.ta_period_mm = to_double(key, v);
        else if (key == "fta.size_mm")
            L.fta_size_mm = to_double(key, v);
        else if (key == "fta.period_mm")
            L.fta_period_mm = to_double(key, v);
        else if (key == "ta.ref_aperture_mm")
            E.ta_reference_area_mm2 = to_double(key, v) * to_double(key, v);
        else if (key == "fta.ref_aperture_mm")
            E.fta_reference_area_mm2 = to_double(key, v) * to_double(key, v);
        else if (key == "feed.q")
            E.feed_pattern.q = to_double(key, v);
        else if (key == "feed.gain_dbi")
            E.feed_pattern.boresight_gain_dbi = to_double(key, v);
        else if (key == "feed.state")
        {
            try
            {
                rc.default_state = parse_polarization(v);
            }
            catch (const std::invalid_argument &e)
            {
                throw ConfigError(std::string("config key 'feed.state': ") + e.what());
            }
        }
        else if (key == "feed.active_ids")
            E.active_feed_ids = detail::split_list(v);
        else if (key == "feed.crosspol")
            E.feed_crosspol = to_double(key, v);
        else if (key == "uc1.curve")
            rc.uc1_source = v;
        else if (key == "uc2.curve")
            rc.uc2_source = v;
        else if (key == "design_freq_ghz")
            E.design_freq_ghz = to_double(key, v);
        else if (key == "frequencies")
        {
            rc.frequencies.clear();
            for (const auto &s : detail::split_list(v))
                rc.frequencies.push_back(to_double(key, s));
        }
        else if (key == "theta_step")
            E.theta_step = to_double(key, v);
        else if (key == "phi_step")
            E.phi_step = to_double(key, v);
        else if (key == "blockage")
            E.illumination.blockage.enabled = detail::to_bool(key, v);
        else if (key == "blockage.half_width_mm")
            E.illumination.blockage.half_width_mm = to_double(key, v);
        else if (key == "blockage.half_height_mm")
            E.illumination.blockage.half_height_mm = to_double(key, v);
        else if (key == "cell_leakage")
            E.illumination.cell_leakage = to_double(key, v);
        else if (key == "reflection_phase_deg")
            E.illumination.reflection_phase_deg = to_double(key, v);
        else if (key == "gain_offset_db")
            E.gain_offset_db = to_double(key, v);
        else if (key == "quantization_tol_deg")
            E.quantization_tolerance_deg = to_double(key, v);
        else if (key == "threads")
            E.threads = static_cast<unsigned>(to_double(key, v));
        else if (key == "output_dir")
            rc.output_dir = detail::resolve(base_dir, v);
        else if (key == "measured_targets")
            rc.measured_targets = detail::resolve(base_dir, v);
        else
            throw ConfigError("unknown config key '" + key + "'");
    }

    if (!feed_fields.empty())
    {
        L.feeds.clear();
        for (const auto &[idx, fields] : feed_fields)
        {
            if (!fields.count("id") || !fields.count("x_mm"))
                throw ConfigError("feeds[" + std::to_string(idx) + "] needs id and x_mm");
            FeedPlacement fp;
            fp.id = fields.at("id");
            fp.position.x = to_double("feeds[].x_mm", fields.at("x_mm"));
            if (fields.count("y_mm"))
                fp.position.y = to_double("feeds[].y_mm", fields.at("y_mm"));
            L.feeds.push_back(fp);
        }
    }

    if (rc.frequencies.empty())
        throw ConfigError("frequencies must not be empty");
    for (double f : rc.frequencies)
        if (!(f > 0.0))
            throw ConfigError("frequencies must be positive");
    if (!(E.design_freq_ghz > 0.0))
        throw ConfigError("design_freq_ghz must be positive");
    if (!(E.feed_pattern.q > 0.0))
        throw ConfigError("feed.q must be positive");

    // A loaded curve is taken as the design-frequency curve; the off-design
    // entries follow the parallel-shift rule.
    auto load_library = [&](const std::string &src, const std::string &name, PhaseCurve (*builtin)(double)) {
        if (src == "builtin")
            return CurveLibrary::parallel_family(builtin(E.design_freq_ghz), E.design_freq_ghz);
        const auto path = detail::resolve(base_dir, src).string();
        try
        {
            return CurveLibrary::parallel_family(load_curve_csv(path, name, E.design_freq_ghz), E.design_freq_ghz);
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(e.what());
        }
    };
    E.uc1 = load_library(rc.uc1_source, "L", &default_uc1_curve);
    E.uc2 = load_library(rc.uc2_source, "W", &default_uc2_curve);
    return rc;
}

inline RunConfig config_from_string(const std::string &text, const std::filesystem::path &base_dir = {})
{
    std::istringstream in(text);
    return config_from_stream(in, base_dir);
}

inline RunConfig load_run_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError(path.string(), "cannot open config file: " + path.string());
    return config_from_stream(in, path.parent_path());
}

} // namespace hta
