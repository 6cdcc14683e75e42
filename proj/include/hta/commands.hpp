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

// Command implementations behind the `hta` tool. Every command writes its
// human-readable output to a stream and returns the process exit code:
// 0 success, 1 domain failure, 2 usage or configuration failure.

#pragma once

#include "config.hpp"
#include "farfield.hpp"
#include "geometry.hpp"
#include "polarization.hpp"
#include "scenario.hpp"
#include "synthesis.hpp"
#include "unitcell.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace hta
{

namespace fs = std::filesystem;

enum ExitCode : int
{
    exit_ok = 0,
    exit_domain = 1,
    exit_usage = 2
};

// ---------------------------------------------------------------------------
// validate

struct CheckResult
{
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Reflection point on the TA plane for the ray feed -> TA -> point below
/// it, from the law of reflection (similar triangles), without image feeds.
inline Point3 specular_point(double f, const Point3 &feed, const Point3 &target)
{
    const double down = f - feed.z;
    const double up = f - target.z;
    const double t = down / (down + up);
    return {feed.x + t * (target.x - feed.x), feed.y + t * (target.y - feed.y), f};
}

inline std::vector<CheckResult> run_validation_checks(const RunConfig &rc)
{
    std::vector<CheckResult> out;
    auto check = [&](const std::string &name, const std::function<std::string()> &body) {
        try
        {
            const std::string failure = body();
            out.push_back({name, failure.empty(), failure});
        }
        catch (const std::exception &e)
        {
            out.push_back({name, false, e.what()});
        }
    };
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); };

    const auto &lc = rc.layout;
    check("focal_relation", [&]() -> std::string {
        if (lc.h_mm && lc.F_mm)
        {
            const double gap = *lc.F_mm - 2.0 * lc.f_mm - *lc.h_mm;
            if (std::abs(gap) > focal_relation_tolerance * std::max(1.0, std::abs(*lc.F_mm)))
                return "F - 2f - h = " + std::to_string(gap) + " mm";
        }
        const SystemLayout L = build_layout(lc);
        if (std::abs(L.F - 2.0 * L.f - L.h) > 1e-12 * L.F)
            return "built layout violates F = 2f + h";
        return {};
    });

    // The remaining checks need a layout; when h and F disagree, F wins.
    LayoutConfig fallback = lc;
    if (fallback.h_mm && fallback.F_mm)
        fallback.h_mm.reset();
    SystemLayout L;
    try
    {
        L = build_layout(fallback);
    }
    catch (const std::exception &e)
    {
        out.push_back({"layout", false, e.what()});
        return out;
    }
    const auto &E = rc.engine;
    const double k0 = wavenumber(E.design_freq_ghz);

    check("mirror_involution", [&]() -> std::string {
        for (const auto &fp : L.feeds)
        {
            const Point3 m = mirror_feed(L, fp);
            if (!(mirror_about(m, L.f) == fp.position))
                return "feed " + fp.id;
        }
        return {};
    });

    check("folded_path", [&]() -> std::string {
        const std::vector<std::pair<int, int>> idx{
            {0, 0}, {L.fta.nx - 1, 0}, {0, L.fta.ny - 1}, {L.fta.nx - 1, L.fta.ny - 1}, {L.fta.nx / 2, L.fta.ny / 2}};
        for (const auto &fp : L.feeds)
            for (const auto &[i, j] : idx)
            {
                const Point3 e = L.fta.element(i, j);
                const Point3 s = specular_point(L.f, fp.position, e);
                const double two_leg = path_length(fp.position, s) + path_length(s, e);
                if (rel(two_leg, path_length(mirror_feed(L, fp), e)) > 1e-12)
                    return "feed " + fp.id;
            }
        return {};
    });

    check("taper_roundtrip", [&]() -> std::string {
        const double alpha = taper_from_focal(L.ta.size_x, L.f);
        if (rel(focal_from_taper(L.ta.size_x, alpha), L.f) > 1e-9)
            return "focal_from_taper(taper_from_focal(f)) != f";
        const double q = q_for_taper(alpha);
        if (rel(minus10db_angle(FeedPattern{q}), alpha) > 1e-9)
            return "minus10db_angle(q_for_taper(a)) != a";
        return {};
    });

    auto mean_check = [&](const ApertureSpec &ap, const Point3 &v1, const Point3 &v2) -> std::string {
        const double theta = rad2deg(std::atan2(std::abs(v2.x - v1.x) / 2.0, std::abs(v1.z - ap.plane_z)));
        const auto a = single_focus_unwrapped(ap, v1, {theta, 0.0}, k0);
        const auto b = single_focus_unwrapped(ap, v2, {theta, 180.0}, k0);
        const PhaseMap m = bifocal_phase(ap, v1, v2, theta, k0);
        for (std::size_t n = 0; n < a.size(); ++n)
            if (rel(m.unwrapped_rad[n], (a[n] + b[n]) / 2.0) > 1e-9)
                return "element " + std::to_string(n);
        const PhaseMap other = bifocal_phase(ap, v1, v2, -theta, k0);
        if (other.unwrapped_rad != m.unwrapped_rad)
            return "result depends on the sign of theta";
        return {};
    };
    check("bifocal_mean_ta", [&] { return mean_check(L.ta, L.virtual_feeds[0], L.virtual_feeds[1]); });
    check("bifocal_mean_fta", [&] {
        return mean_check(L.fta, mirror_feed(L, L.virtual_feeds[0]), mirror_feed(L, L.virtual_feeds[1]));
    });

    auto lookup_check = [&](const PhaseCurve &c) -> std::string {
        int rotated = 0;
        for (int k = 0; k < 360; ++k)
        {
            const double want = static_cast<double>(k);
            const UnitCellGeometry g = lookup_geometry(c, want);
            rotated += g.rotated;
            if (circular_distance_deg(phase_of(c, g), want) > 1e-6)
                return "phase " + std::to_string(k);
        }
        if (rotated != 180)
            return "rotation branch used for " + std::to_string(rotated) + " of 360 phases";
        return {};
    };
    check("lookup_roundtrip_uc1", [&] { return lookup_check(E.uc1.at(E.design_freq_ghz)); });
    check("lookup_roundtrip_uc2", [&] { return lookup_check(E.uc2.at(E.design_freq_ghz)); });

    check("quantization", [&]() -> std::string {
        const Design d = synthesize_design(L, E);
        if (d.ta_cells.count_above_tolerance() || d.fta_cells.count_above_tolerance())
            return "residual above " + std::to_string(E.quantization_tolerance_deg) + " deg";
        return {};
    });

    check("grid_energy_split", [&]() -> std::string {
        std::mt19937_64 rng(7);
        std::normal_distribution<double> nd;
        for (int n = 0; n < 256; ++n)
        {
            const JonesVector v{{nd(rng), nd(rng)}, {nd(rng), nd(rng)}};
            for (auto g : {GridOrientation::WiresAlongX, GridOrientation::WiresAlongY})
                if (rel(grid_transmit(v, g).norm2() + grid_reflect(v, g).norm2(), v.norm2()) > 1e-12)
                    return "energy not conserved";
            if (rel(rotate_pol_90(v).norm2(), v.norm2()) > 1e-15)
                return "rotation changes the norm";
        }
        return {};
    });

    check("routing_output_y", [&]() -> std::string {
        for (auto s : {PolarizationState::X, PolarizationState::Y, PolarizationState::Slant45})
        {
            const RoutingPlan p = route(s);
            const JonesVector in = unit_vector(s);
            if (p.forward_active)
            {
                const JonesVector v = forward_path(in);
                if (v.ex != cplx{} || std::abs(std::abs(v.ey) - p.forward_amplitude) > 1e-15)
                    return std::string("forward path, state ") + std::string(to_string(s));
            }
            if (p.backward_active)
            {
                const JonesVector v = backward_path(in, E.illumination.reflection_phase_deg);
                if (v.ex != cplx{} || std::abs(std::abs(v.ey) - p.backward_amplitude) > 1e-15)
                    return std::string("backward path, state ") + std::string(to_string(s));
            }
        }
        return {};
    });

    check("uc1_pcr_band", [&]() -> std::string {
        for (int k = 0; k <= 120; ++k)
            if (const double f = 7.0 + 0.05 * k; pcr(uc1_band_scatter(f)) < 0.928)
                return "PCR below 0.928 at " + std::to_string(f) + " GHz";
        return {};
    });
    return out;
}

inline int cmd_validate(const RunConfig &rc, std::ostream &os)
{
    bool ok = true;
    for (const auto &c : run_validation_checks(rc))
    {
        os << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.passed)
            os << ": " << c.detail;
        os << '\n';
        ok = ok && c.passed;
    }
    return ok ? exit_ok : exit_domain;
}

// ---------------------------------------------------------------------------
// file helpers

inline void write_text_file(const fs::path &path, const std::string &content)
{
    if (path.has_parent_path())
    {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec)
            throw IoError(path.parent_path().string(), "cannot create directory " + path.parent_path().string());
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw IoError(path.string(), "cannot write " + path.string());
    f << content;
    if (!f)
        throw IoError(path.string(), "write failed for " + path.string());
}

inline std::string freq_label(double freq_ghz)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", freq_ghz);
    return buf;
}

/// Metric levels as finite numbers; -inf (exact zero power) maps to -300 dB.
inline double db_floor(double db) { return std::isfinite(db) ? db : (db < 0 ? -300.0 : db); }

inline nlohmann::ordered_json metrics_json(const ScenarioResult &r, ApertureSide side, const BeamMetrics &m)
{
    nlohmann::ordered_json j;
    j["state"] = to_string(r.state);
    j["working_state"] = state_name(r.state);
    j["feed_id"] = r.feed_id;
    j["feed_x_mm"] = r.feed_x_mm;
    j["freq_ghz"] = r.frequency_ghz;
    j["hemisphere"] = to_string(side);
    j["peak_theta_deg"] = m.peak_theta;
    j["peak_phi_deg"] = m.peak_phi;
    j["signed_theta_deg"] = m.signed_theta;
    j["peak_gain_dbi"] = m.peak_gain_dbi;
    j["directivity_dbi"] = m.directivity_dbi;
    j["sll_db"] = db_floor(m.sll_db);
    j["beamwidth_3db_deg"] = m.beamwidth_3db_deg;
    j["crosspol_peak_db"] = db_floor(m.crosspol_peak_db);
    j["crosspol_at_peak_db"] = db_floor(m.crosspol_at_peak_db);
    j["aperture_efficiency"] = m.aperture_efficiency;
    return j;
}

// ---------------------------------------------------------------------------
// synthesize

inline int cmd_synthesize(const RunConfig &rc, const fs::path &out_dir, std::ostream &os)
{
    const SystemLayout L = build_layout(rc.layout);
    const Design d = synthesize_design(L, rc.engine);
    auto dump = [&](const std::string &name, auto &&writer) {
        std::ostringstream ss;
        writer(ss);
        write_text_file(out_dir / name, ss.str());
        os << "wrote " << (out_dir / name).string() << '\n';
    };
    dump("ta_phase.csv", [&](std::ostream &s) { write_phase_csv(s, d.ta_phase); });
    dump("fta_phase.csv", [&](std::ostream &s) { write_phase_csv(s, d.fta_phase); });
    dump("ta_cells.csv", [&](std::ostream &s) { write_cell_csv(s, d.ta_phase, d.ta_cells); });
    dump("fta_cells.csv", [&](std::ostream &s) { write_cell_csv(s, d.fta_phase, d.fta_cells); });
    for (const auto *cm : {&d.ta_cells, &d.fta_cells})
        if (const auto n = cm->count_above_tolerance())
            os << "warning: " << n << " cells exceed the " << cm->tolerance_deg << " deg quantization tolerance\n";
    return exit_ok;
}

// ---------------------------------------------------------------------------
// simulate

inline int cmd_simulate(const RunConfig &rc, PolarizationState state, const std::string &feed_id, double freq_ghz,
                        const fs::path &out_dir, std::ostream &os)
{
    const SystemLayout L = build_layout(rc.layout);
    if (!L.has_feed(feed_id))
    {
        os << "error: unknown feed " << feed_id << '\n';
        return exit_domain;
    }
    if (!is_legal(L, rc.engine, state, feed_id))
    {
        os << "error: feed " << feed_id << " is not allowed in the " << state_name(state)
           << " state; allowed feeds: " << describe_legal(L, rc.engine, state) << '\n';
        return exit_domain;
    }
    const Design d = synthesize_design(L, rc.engine);
    const ScenarioResult r = run_scenario(L, d, state, feed_id, rc.engine, freq_ghz);
    const std::string stem = std::string(to_string(state)) + "_" + feed_id + "_" + freq_label(freq_ghz);
    for (auto side : {ApertureSide::TA, ApertureSide::FTA})
    {
        const auto &res = side == ApertureSide::TA ? r.forward : r.backward;
        if (!res)
            continue;
        const std::string base = stem + "_" + std::string(to_string(side));
        std::ostringstream pat;
        write_pattern_csv(pat, res->pattern);
        write_text_file(out_dir / (base + "_pattern.csv"), pat.str());
        write_text_file(out_dir / (base + "_metrics.json"), metrics_json(r, side, res->metrics).dump(2) + "\n");
        const auto &m = res->metrics;
        char line[256];
        std::snprintf(line, sizeof line, "%-8s theta %6.2f deg  phi %6.1f deg  D %6.2f dBi  SLL %7.2f dB\n",
                      std::string(to_string(side)).c_str(), m.peak_theta, m.peak_phi, m.directivity_dbi,
                      db_floor(m.sll_db));
        os << line;
        os << "wrote " << (out_dir / (base + "_pattern.csv")).string() << '\n';
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// sweep

inline const std::vector<std::string> &beam_table_columns()
{
    static const std::vector<std::string> cols{
        "state",          "feed_id",         "feed_x_mm", "freq_ghz",     "hemisphere",   "peak_theta_deg",
        "peak_phi_deg",   "signed_theta_deg", "directivity_dbi", "gain_dbi", "sll_db",       "crosspol_db",
        "beamwidth_deg",  "aperture_efficiency", "scan_loss_db", "status"};
    return cols;
}

inline void write_beam_table(std::ostream &os, const std::vector<BeamRow> &rows)
{
    const auto &cols = beam_table_columns();
    for (std::size_t c = 0; c < cols.size(); ++c)
        os << (c ? "," : "") << cols[c];
    os << '\n';
    for (const auto &r : rows)
    {
        const auto &m = r.metrics;
        char buf[512];
        if (r.ok)
            std::snprintf(buf, sizeof buf,
                          "%s,%s,%.3f,%.2f,%s,%.3f,%.3f,%.3f,%.4f,%.4f,%.4f,%.4f,%.4f,%.6f,%.4f,ok\n",
                          std::string(state_name(r.state)).c_str(), r.feed_id.c_str(), r.feed_x_mm, r.frequency_ghz,
                          std::string(to_string(r.hemisphere)).c_str(), m.peak_theta, m.peak_phi, m.signed_theta,
                          m.directivity_dbi, m.peak_gain_dbi, db_floor(m.sll_db), db_floor(m.crosspol_peak_db),
                          m.beamwidth_3db_deg, m.aperture_efficiency, r.scan_loss_db);
        else
            std::snprintf(buf, sizeof buf, "%s,%s,%.3f,%.2f,%s,,,,,,,,,,,failed\n",
                          std::string(state_name(r.state)).c_str(), r.feed_id.c_str(), r.feed_x_mm, r.frequency_ghz,
                          std::string(to_string(r.hemisphere)).c_str());
        os << buf;
    }
}

/// Every legal (state, feed, frequency) beam, ordered by state, feed
/// and frequency. A failing scenario produces rows marked failed.
inline std::vector<BeamRow> sweep_rows(const SystemLayout &L, const Design &d, const RunConfig &rc,
                                       const std::function<void(const ScenarioResult &)> &on_result = {})
{
    std::vector<BeamRow> rows;
    for (auto state : {PolarizationState::X, PolarizationState::Y, PolarizationState::Slant45})
        for (const auto &feed : legal_feeds(L, rc.engine, state))
            for (double freq : rc.frequencies)
            {
                const RoutingPlan plan = route(state);
                try
                {
                    const ScenarioResult r = run_scenario(L, d, state, feed.id, rc.engine, freq);
                    for (auto side : {ApertureSide::TA, ApertureSide::FTA})
                    {
                        const auto &res = side == ApertureSide::TA ? r.forward : r.backward;
                        if (!res)
                            continue;
                        BeamRow row;
                        row.state = state;
                        row.feed_id = feed.id;
                        row.feed_x_mm = feed.position.x;
                        row.frequency_ghz = freq;
                        row.hemisphere = side;
                        row.metrics = res->metrics;
                        rows.push_back(row);
                    }
                    if (on_result)
                        on_result(r);
                }
                catch (const std::exception &e)
                {
                    for (auto side : {ApertureSide::TA, ApertureSide::FTA})
                        if (side == ApertureSide::TA ? plan.forward_active : plan.backward_active)
                        {
                            BeamRow row;
                            row.state = state;
                            row.feed_id = feed.id;
                            row.feed_x_mm = feed.position.x;
                            row.frequency_ghz = freq;
                            row.hemisphere = side;
                            row.ok = false;
                            row.error = e.what();
                            rows.push_back(row);
                        }
                }
            }
    fill_scan_loss(rows);
    return rows;
}

inline int cmd_sweep(const RunConfig &rc, const fs::path &out_dir, std::ostream &os)
{
    const SystemLayout L = build_layout(rc.layout);
    const Design d = synthesize_design(L, rc.engine);
    const auto rows = sweep_rows(L, d, rc, [&](const ScenarioResult &r) {
        const std::string stem =
            std::string(to_string(r.state)) + "_" + r.feed_id + "_" + freq_label(r.frequency_ghz);
        for (auto side : {ApertureSide::TA, ApertureSide::FTA})
        {
            const auto &res = side == ApertureSide::TA ? r.forward : r.backward;
            if (!res)
                continue;
            const std::string base = stem + "_" + std::string(to_string(side));
            std::ostringstream pat;
            write_pattern_csv(pat, res->pattern, {0.0, 90.0, 180.0, 270.0});
            write_text_file(out_dir / "beams" / (base + "_cut.csv"), pat.str());
            write_text_file(out_dir / "beams" / (base + "_metrics.json"),
                            metrics_json(r, side, res->metrics).dump(2) + "\n");
        }
    });
    std::ostringstream table;
    write_beam_table(table, rows);
    write_text_file(out_dir / "beam_table.csv", table.str());

    std::size_t failed = 0;
    for (const auto &r : rows)
        if (!r.ok)
        {
            ++failed;
            os << "failed: " << state_name(r.state) << ' ' << r.feed_id << ' ' << freq_label(r.frequency_ghz)
               << " GHz: " << r.error << '\n';
        }
    os << "wrote " << rows.size() << " beams to " << (out_dir / "beam_table.csv").string() << '\n';
    return failed ? exit_domain : exit_ok;
}

// ---------------------------------------------------------------------------
// report

/// Minimal CSV table: header names and rows of string cells.
struct CsvTable
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string &name) const
    {
        for (std::size_t c = 0; c < header.size(); ++c)
            if (header[c] == name)
                return static_cast<int>(c);
        return -1;
    }
};

inline CsvTable read_csv(const fs::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError(path.string(), "cannot open " + path.string());
    auto split = [](const std::string &line) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(detail::trim(cell));
        if (!line.empty() && line.back() == ',')
            cells.emplace_back();
        return cells;
    };
    CsvTable t;
    std::string line;
    bool first = true;
    while (std::getline(in, line))
    {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        if (first)
        {
            t.header = split(line);
            first = false;
        }
        else
            t.rows.push_back(split(line));
    }
    return t;
}

/// Measured prototype beam angles keyed by (working state, hemisphere, |feed x|).
struct MeasuredTargets
{
    std::map<std::tuple<std::string, std::string, long>, double> angles;

    std::optional<double> find(const std::string &state, const std::string &hemi, double feed_x) const
    {
        const auto it = angles.find({state, hemi, std::lround(std::abs(feed_x))});
        if (it == angles.end())
            return std::nullopt;
        return it->second;
    }

    static MeasuredTargets load(const fs::path &path)
    {
        const CsvTable t = read_csv(path);
        const int cs = t.column("state"), ch = t.column("hemisphere"), cx = t.column("feed_abs_x_mm"),
                  ca = t.column("target_deg");
        if (cs < 0 || ch < 0 || cx < 0 || ca < 0)
            throw IoError(path.string(), "measured target file needs state,hemisphere,feed_abs_x_mm,target_deg");
        MeasuredTargets p;
        for (const auto &r : t.rows)
            p.angles[{r[cs], r[ch], std::lround(std::stod(r[cx]))}] = std::stod(r[ca]);
        return p;
    }
};

/// Geometric beam angle: atan(|x| / f) forward, atan(|x| / F) backward.
inline double predicted_angle(const SystemLayout &L, ApertureSide side, double feed_x)
{
    return rad2deg(std::atan2(std::abs(feed_x), side == ApertureSide::TA ? L.f : L.F));
}

inline int cmd_report(const RunConfig &rc, const fs::path &table_path, std::ostream &os)
{
    if (!fs::exists(table_path))
    {
        os << "error: beam table not found: " << table_path.string() << " (run `hta sweep` first)\n";
        return exit_usage;
    }
    const SystemLayout L = build_layout(rc.layout);
    const CsvTable t = read_csv(table_path);
    MeasuredTargets targets;
    if (!rc.measured_targets.empty())
        targets = MeasuredTargets::load(rc.measured_targets);

    const int c_state = t.column("state"), c_feed = t.column("feed_id"), c_x = t.column("feed_x_mm"),
              c_f = t.column("freq_ghz"), c_h = t.column("hemisphere"), c_th = t.column("peak_theta_deg"),
              c_d = t.column("directivity_dbi"), c_sl = t.column("scan_loss_db"), c_st = t.column("status");
    if (std::min({c_state, c_feed, c_x, c_f, c_h, c_th, c_d, c_sl, c_st}) < 0)
    {
        os << "error: " << table_path.string() << " is not a beam table\n";
        return exit_usage;
    }

    const double tol = std::max(2.0, rc.engine.theta_step);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-4s %-4s %6s %-9s %9s %9s %9s %8s %8s  %s\n", "st", "feed", "GHz", "hemi",
                  "achieved", "predict", "measured", "D dBi", "loss", "flag");
    os << buf;
    std::size_t flagged = 0, offsets = 0;
    for (const auto &r : t.rows)
    {
        if (r[c_st] != "ok")
        {
            std::snprintf(buf, sizeof buf, "%-4s %-4s %6s %-9s %9s\n", r[c_state].c_str(), r[c_feed].c_str(),
                          r[c_f].c_str(), r[c_h].c_str(), "FAILED");
            os << buf;
            continue;
        }
        const double x = std::stod(r[c_x]);
        const ApertureSide side = r[c_h] == "forward" ? ApertureSide::TA : ApertureSide::FTA;
        const double achieved = std::stod(r[c_th]);
        const double predicted = predicted_angle(L, side, x);
        const auto meas = targets.find(r[c_state], r[c_h], x);
        std::string flag = "ok";
        if (std::abs(achieved - predicted) > tol)
        {
            flag = "POINTING";
            ++flagged;
        }
        // The geometric prediction itself can sit away from the measured angle.
        if (meas && std::abs(predicted - *meas) > 3.0)
        {
            flag += " (measured offset)";
            ++offsets;
        }
        char meas_s[32] = "-";
        if (meas)
            std::snprintf(meas_s, sizeof meas_s, "%.1f", *meas);
        std::snprintf(buf, sizeof buf, "%-4s %-4s %6s %-9s %9.2f %9.2f %9s %8s %8s  %s\n", r[c_state].c_str(),
                      r[c_feed].c_str(), r[c_f].c_str(), r[c_h].c_str(), achieved, predicted, meas_s,
                      r[c_d].c_str(), r[c_sl].c_str(), flag.c_str());
        os << buf;
    }
    os << flagged << " beams deviate from the geometric prediction by more than " << tol << " deg; " << offsets
       << " predictions differ from the measured angle by more than 3 deg\n";
    return exit_ok;
}

} // namespace hta
