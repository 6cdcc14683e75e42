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

// Per-element compensation phases: eccentric single-focus distribution,
// bifocal average for two symmetric virtual feeds, wrapping and quantization
// onto unit-cell geometries for the TA and FTA apertures.

#pragma once

#include "geometry.hpp"
#include "unitcell.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace hta
{

struct ScanTarget
{
    double theta = 0.0; // polar angle, degrees
    double phi = 0.0;   // azimuth of the beam plane, degrees

    void validate() const
    {
        if (!(theta >= 0.0 && theta < 90.0))
            throw std::invalid_argument("scan target theta must lie in [0, 90) degrees");
        if (!(phi >= 0.0 && phi < 360.0))
            throw std::invalid_argument("scan target phi must lie in [0, 360) degrees");
    }
};

/// Compensation phase over an aperture. `unwrapped_rad` keeps the physical
/// k0 * distance values; `phases` holds the same map wrapped to [0, 360).
struct PhaseMap
{
    ApertureSpec aperture;
    std::vector<double> unwrapped_rad;
    std::vector<double> phases; // degrees
    double k0 = 0.0;            // rad/mm

    double phase(int i, int j) const { return phases[aperture.index(i, j)]; }
    double frequency_ghz() const { return k0 * speed_of_light_mm_per_ns / (2.0 * pi); }

    static PhaseMap from_unwrapped(const ApertureSpec &aperture, std::vector<double> unwrapped_rad, double k0)
    {
        if (unwrapped_rad.size() != aperture.size())
            throw std::invalid_argument("phase map size does not match the aperture grid");
        PhaseMap m;
        m.aperture = aperture;
        m.k0 = k0;
        m.phases.resize(unwrapped_rad.size());
        for (std::size_t n = 0; n < unwrapped_rad.size(); ++n)
            m.phases[n] = wrap_deg(rad2deg(unwrapped_rad[n]));
        m.unwrapped_rad = std::move(unwrapped_rad);
        return m;
    }
};

/// Unwrapped single-focus law k0 * (R_ij - sin(theta) (x_i cos(phi) + y_j sin(phi))).
inline std::vector<double> single_focus_unwrapped(const ApertureSpec &aperture, const Point3 &feed,
                                                  const ScanTarget &target, double k0)
{
    target.validate();
    if (feed.z == aperture.plane_z)
        throw std::invalid_argument("single_focus_phase: feed lies on the aperture plane");
    if (!feed.is_finite())
        throw std::invalid_argument("single_focus_phase: feed position is not finite");
    const double st = std::sin(deg2rad(target.theta));
    const double cp = std::cos(deg2rad(target.phi));
    const double sp = std::sin(deg2rad(target.phi));
    std::vector<double> out(aperture.size());
    for (int j = 0; j < aperture.ny; ++j)
        for (int i = 0; i < aperture.nx; ++i)
        {
            const Point3 e = aperture.element(i, j);
            out[aperture.index(i, j)] = k0 * (path_length(feed, e) - st * (e.x * cp + e.y * sp));
        }
    return out;
}

inline PhaseMap single_focus_phase(const ApertureSpec &aperture, const Point3 &feed, const ScanTarget &target,
                                   double k0)
{
    return PhaseMap::from_unwrapped(aperture, single_focus_unwrapped(aperture, feed, target, k0), k0);
}

/// Bifocal compensation for two virtual feeds mirrored about the aperture
/// axis. The constituent beams sit at +/-theta in the phi = 0 plane, so their
/// linear scan terms cancel and the mean reduces to k0 (R1 + R2) / 2; theta
/// therefore does not enter the result. Averaging is done on unwrapped
/// phases and the map is wrapped once.
inline PhaseMap bifocal_phase(const ApertureSpec &aperture, const Point3 &vf1, const Point3 &vf2,
                              [[maybe_unused]] double theta_deg, double k0)
{
    constexpr double tol = 1e-9;
    const double scale = std::max({1.0, std::abs(vf1.x), std::abs(vf2.x)});
    if (std::abs(vf1.x + vf2.x) > tol * scale || std::abs(vf1.y - vf2.y) > tol * scale ||
        std::abs(vf1.z - vf2.z) > tol * scale)
        throw std::invalid_argument("bifocal_phase: virtual feeds must be mirror-symmetric about the aperture axis");
    if (vf1.z == aperture.plane_z)
        throw std::invalid_argument("bifocal_phase: virtual feeds lie on the aperture plane");

    std::vector<double> out(aperture.size());
    for (int j = 0; j < aperture.ny; ++j)
        for (int i = 0; i < aperture.nx; ++i)
        {
            const Point3 e = aperture.element(i, j);
            out[aperture.index(i, j)] = k0 * (path_length(vf1, e) + path_length(vf2, e)) / 2.0;
        }
    return PhaseMap::from_unwrapped(aperture, std::move(out), k0);
}

/// Forward (TA) compensation: virtual feeds on the feed plane, focal length f.
inline PhaseMap synthesize_ta(const SystemLayout &layout, double k0)
{
    return bifocal_phase(layout.ta, layout.virtual_feeds[0], layout.virtual_feeds[1], layout.offset_angle_deg(), k0);
}

/// Backward (FTA) compensation: virtual feeds imaged in the TA plane, so the
/// effective focal length is F = 2f + h.
inline PhaseMap synthesize_fta(const SystemLayout &layout, double k0)
{
    const Point3 v1 = mirror_feed(layout, layout.virtual_feeds[0]);
    const Point3 v2 = mirror_feed(layout, layout.virtual_feeds[1]);
    return bifocal_phase(layout.fta, v1, v2, rad2deg(std::atan2(layout.d / 2.0, layout.F)), k0);
}

/// Realized cell geometry per element.
struct CellMap
{
    ApertureSpec aperture;
    std::vector<UnitCellGeometry> cells;
    std::vector<double> residual_deg; // |realized - desired| on the circle
    double tolerance_deg = 5.0;

    const UnitCellGeometry &cell(int i, int j) const { return cells[aperture.index(i, j)]; }
    double max_residual() const
    {
        double m = 0.0;
        for (double r : residual_deg)
            m = std::max(m, r);
        return m;
    }
    std::size_t count_above_tolerance() const
    {
        std::size_t n = 0;
        for (double r : residual_deg)
            n += r > tolerance_deg;
        return n;
    }
};

enum class QuantizeMode
{
    Continuous,   // interpolate the curve between samples
    NearestSample // only the tabulated geometries (and their rotated twins)
};

/// Cell among the tabulated samples, either orientation, whose phase is
/// closest to the desired one.
inline UnitCellGeometry nearest_sample_geometry(const PhaseCurve &curve, double desired_deg)
{
    UnitCellGeometry best{curve.param_min(), false};
    double best_err = 1e300;
    for (const auto &s : curve.samples())
        for (bool rot : {false, true})
        {
            const UnitCellGeometry g{s.param_mm, rot};
            const double err = circular_distance_deg(phase_of(curve, g), desired_deg);
            if (err < best_err)
            {
                best_err = err;
                best = g;
            }
        }
    return best;
}

inline CellMap quantize(const PhaseMap &map, const PhaseCurve &curve, double tolerance_deg = 5.0,
                        QuantizeMode mode = QuantizeMode::Continuous)
{
    CellMap cm;
    cm.aperture = map.aperture;
    cm.tolerance_deg = tolerance_deg;
    cm.cells.reserve(map.phases.size());
    cm.residual_deg.reserve(map.phases.size());
    for (double ph : map.phases)
    {
        const UnitCellGeometry g =
            mode == QuantizeMode::Continuous ? lookup_geometry(curve, ph) : nearest_sample_geometry(curve, ph);
        cm.cells.push_back(g);
        cm.residual_deg.push_back(circular_distance_deg(phase_of(curve, g), ph));
    }
    return cm;
}

namespace detail
{
inline std::string fmt_num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}
} // namespace detail

/// CSV with header `i,j,x_mm,y_mm,phase_deg`, one row per element.
inline void write_phase_csv(std::ostream &os, const PhaseMap &map)
{
    using detail::fmt_num;
    const auto &a = map.aperture;
    os << "i,j,x_mm,y_mm,phase_deg\n";
    for (int j = 0; j < a.ny; ++j)
        for (int i = 0; i < a.nx; ++i)
            os << i << ',' << j << ',' << fmt_num(a.x_at(i)) << ',' << fmt_num(a.y_at(j)) << ','
               << fmt_num(map.phase(i, j)) << '\n';
}

/// Phase CSV columns plus `param_mm,rotated`.
inline void write_cell_csv(std::ostream &os, const PhaseMap &map, const CellMap &cells)
{
    using detail::fmt_num;
    const auto &a = map.aperture;
    os << "i,j,x_mm,y_mm,phase_deg,param_mm,rotated\n";
    for (int j = 0; j < a.ny; ++j)
        for (int i = 0; i < a.nx; ++i)
        {
            const auto &c = cells.cell(i, j);
            os << i << ',' << j << ',' << fmt_num(a.x_at(i)) << ',' << fmt_num(a.y_at(j)) << ','
               << fmt_num(map.phase(i, j)) << ',' << fmt_num(c.parameter) << ',' << (c.rotated ? 1 : 0) << '\n';
        }
}

} // namespace hta
