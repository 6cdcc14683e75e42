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

// Scenario runner: designs both apertures once, then drives a feed in one of
// the three polarization states through the active path(s) and collects the
// far-field patterns and metrics per hemisphere.

#pragma once

#include "farfield.hpp"
#include "feed.hpp"
#include "geometry.hpp"
#include "polarization.hpp"
#include "synthesis.hpp"
#include "unitcell.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hta
{

struct EngineConfig
{
    FeedPattern feed_pattern;
    double feed_crosspol = 0.0;
    double design_freq_ghz = 9.75;
    CurveLibrary uc1 = CurveLibrary::parallel_family(default_uc1_curve());
    CurveLibrary uc2 = CurveLibrary::parallel_family(default_uc2_curve());
    double quantization_tolerance_deg = 5.0;
    double theta_step = 0.5;
    double phi_step = 2.0;
    IlluminationOptions illumination;
    double gain_offset_db = 0.0;
    std::optional<double> ta_reference_area_mm2;  // defaults to the TA cell area
    std::optional<double> fta_reference_area_mm2; // defaults to the FTA cell area
    std::vector<std::string> active_feed_ids;     // empty: every feed in the layout
    unsigned threads = 0;
};

/// Compensation maps and realized cells for both apertures, computed at the
/// design frequency.
struct Design
{
    PhaseMap ta_phase;
    PhaseMap fta_phase;
    CellMap ta_cells;
    CellMap fta_cells;
};

inline Design synthesize_design(const SystemLayout &layout, const EngineConfig &cfg)
{
    const double k0 = wavenumber(cfg.design_freq_ghz);
    Design d;
    d.ta_phase = synthesize_ta(layout, k0);
    d.fta_phase = synthesize_fta(layout, k0);
    d.ta_cells = quantize(d.ta_phase, cfg.uc1.at(cfg.design_freq_ghz), cfg.quantization_tolerance_deg);
    d.fta_cells = quantize(d.fta_phase, cfg.uc2.at(cfg.design_freq_ghz), cfg.quantization_tolerance_deg);
    return d;
}

/// Feeds usable in a state. FTA and HTA states take every active feed; the TA
/// state drops the outermost pair of the line (A1 and A7 by default).
inline std::vector<FeedPlacement> legal_feeds(const SystemLayout &layout, const EngineConfig &cfg,
                                              PolarizationState state)
{
    std::vector<FeedPlacement> active;
    for (const auto &f : layout.feeds)
        if (cfg.active_feed_ids.empty() ||
            std::find(cfg.active_feed_ids.begin(), cfg.active_feed_ids.end(), f.id) != cfg.active_feed_ids.end())
            active.push_back(f);
    if (state != PolarizationState::X)
        return active;
    double outer = 0.0;
    for (const auto &f : active)
        outer = std::max(outer, std::abs(f.position.x));
    std::vector<FeedPlacement> ta;
    for (const auto &f : active)
        if (std::abs(f.position.x) < outer)
            ta.push_back(f);
    return ta;
}

inline bool is_legal(const SystemLayout &layout, const EngineConfig &cfg, PolarizationState state,
                     const std::string &feed_id)
{
    const auto feeds = legal_feeds(layout, cfg, state);
    return std::any_of(feeds.begin(), feeds.end(), [&](const FeedPlacement &f) { return f.id == feed_id; });
}

inline std::string describe_legal(const SystemLayout &layout, const EngineConfig &cfg, PolarizationState state)
{
    std::string s;
    for (const auto &f : legal_feeds(layout, cfg, state))
        s += (s.empty() ? "" : ", ") + f.id;
    return s;
}

struct SideResult
{
    ApertureField field;
    PatternGrid pattern;
    BeamMetrics metrics;
};

struct ScenarioResult
{
    PolarizationState state = PolarizationState::X;
    std::string feed_id;
    double feed_x_mm = 0.0;
    double frequency_ghz = 0.0;
    std::optional<SideResult> forward;
    std::optional<SideResult> backward;
};

inline FeedExcitation make_excitation(const SystemLayout &layout, const EngineConfig &cfg, PolarizationState state,
                                      const std::string &feed_id, double freq_ghz)
{
    FeedExcitation ex;
    ex.placement = layout.feed(feed_id);
    ex.placement.polarization = state;
    ex.pattern = cfg.feed_pattern;
    ex.pattern.frequency_ghz = freq_ghz;
    ex.state = state;
    ex.boresight = +1;
    ex.crosspol_leakage = cfg.feed_crosspol;
    return ex;
}

/// Aperture field of one side at a frequency, using the designed cells and
/// the curve stored for that frequency.
inline ApertureField side_field(const SystemLayout &layout, const Design &design, const EngineConfig &cfg,
                                const FeedExcitation &ex, ApertureSide side, double freq_ghz)
{
    const double k0 = wavenumber(freq_ghz);
    if (side == ApertureSide::TA)
        return illuminate(layout, ex, side, design.ta_cells, cfg.uc1.at(freq_ghz), k0, cfg.illumination);
    return illuminate(layout, ex, side, design.fta_cells, cfg.uc2.at(freq_ghz), k0, cfg.illumination);
}

inline ScenarioResult run_scenario(const SystemLayout &layout, const Design &design, PolarizationState state,
                                   const std::string &feed_id, const EngineConfig &cfg, double freq_ghz)
{
    if (!layout.has_feed(feed_id))
        throw std::invalid_argument("unknown feed id: " + feed_id);
    if (!is_legal(layout, cfg, state, feed_id))
        throw std::invalid_argument("feed " + feed_id + " is not allowed in state " + std::string(to_string(state)) +
                                    " (allowed: " + describe_legal(layout, cfg, state) + ")");

    const FeedExcitation ex = make_excitation(layout, cfg, state, feed_id, freq_ghz);
    const double k0 = wavenumber(freq_ghz);
    const RoutingPlan plan = route(state);

    ScenarioResult r;
    r.state = state;
    r.feed_id = feed_id;
    r.feed_x_mm = ex.placement.position.x;
    r.frequency_ghz = freq_ghz;

    auto run_side = [&](ApertureSide side) {
        SideResult s;
        s.field = side_field(layout, design, cfg, ex, side, freq_ghz);
        s.pattern = radiate(s.field, cfg.theta_step, cfg.phi_step, k0, cfg.threads);
        const double area = side == ApertureSide::TA ? cfg.ta_reference_area_mm2.value_or(layout.ta.cell_area())
                                                     : cfg.fta_reference_area_mm2.value_or(layout.fta.cell_area());
        s.metrics = extract_metrics(s.pattern, area, cfg.gain_offset_db);
        return s;
    };
    if (plan.forward_active)
        r.forward = run_side(ApertureSide::TA);
    if (plan.backward_active)
        r.backward = run_side(ApertureSide::FTA);
    return r;
}

/// One row of the beam table.
struct BeamRow
{
    PolarizationState state = PolarizationState::X;
    std::string feed_id;
    double feed_x_mm = 0.0;
    double frequency_ghz = 0.0;
    ApertureSide hemisphere = ApertureSide::TA;
    BeamMetrics metrics;
    double scan_loss_db = std::nan("");
    bool ok = true;
    std::string error;
};

inline std::string_view state_name(PolarizationState s)
{
    switch (s)
    {
    case PolarizationState::X:
        return "TA";
    case PolarizationState::Y:
        return "FTA";
    case PolarizationState::Slant45:
        return "HTA";
    }
    return "?";
}

/// Fills scan_loss_db: directivity of the boresight (x = 0) row minus the
/// row's directivity, per (state, frequency, hemisphere).
inline void fill_scan_loss(std::vector<BeamRow> &rows)
{
    for (auto &r : rows)
    {
        r.scan_loss_db = std::nan("");
        if (!r.ok)
            continue;
        for (const auto &b : rows)
            if (b.ok && b.state == r.state && b.frequency_ghz == r.frequency_ghz && b.hemisphere == r.hemisphere &&
                b.feed_x_mm == 0.0)
                r.scan_loss_db = b.metrics.directivity_dbi - r.metrics.directivity_dbi;
    }
}

} // namespace hta
