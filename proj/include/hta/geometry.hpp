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

// Coordinate frame, aperture grids, feed layout and folded-optics focal
// relations.
//
// Convention: the feed plane sits at z = 0, the transmitarray (TA) aperture
// at z = +f and the folded transmitarray (FTA) aperture at z = -h. All
// lengths are millimeters, all angles in the public API are degrees.

#pragma once

#include "polarization.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hta
{

inline constexpr double pi = std::numbers::pi;
inline constexpr double speed_of_light_mm_per_ns = 299.792458;

constexpr double deg2rad(double deg) { return deg * pi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / pi; }

/// Free-space wavelength in mm for a frequency in GHz.
inline double wavelength_mm(double freq_ghz)
{
    if (!(freq_ghz > 0.0))
        throw std::invalid_argument("frequency must be positive");
    return speed_of_light_mm_per_ns / freq_ghz;
}

/// Free-space wavenumber k0 in rad/mm for a frequency in GHz.
inline double wavenumber(double freq_ghz) { return 2.0 * pi / wavelength_mm(freq_ghz); }

struct Point3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool is_finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
    friend bool operator==(const Point3 &, const Point3 &) = default;
};

/// Euclidean distance between two points.
inline double path_length(const Point3 &a, const Point3 &b)
{
    return std::hypot(b.x - a.x, b.y - a.y, b.z - a.z);
}

/// Regular aperture grid of nx x ny cells, centered on the z axis.
struct ApertureSpec
{
    double plane_z = 0.0;
    double size_x = 0.0;
    double size_y = 0.0;
    double period = 0.0;
    int nx = 0;
    int ny = 0;
    int normal_sign = +1; // +1 radiates toward +z, -1 toward -z

    // Fills nx, ny with the largest cell count that fits the lateral size.
    static ApertureSpec make(double plane_z, double size_x, double size_y, double period, int normal_sign)
    {
        if (!(period > 0.0) || !(size_x > 0.0) || !(size_y > 0.0))
            throw std::invalid_argument("aperture size and period must be positive");
        ApertureSpec a;
        a.plane_z = plane_z;
        a.size_x = size_x;
        a.size_y = size_y;
        a.period = period;
        a.nx = static_cast<int>(std::floor(size_x / period + 1e-9));
        a.ny = static_cast<int>(std::floor(size_y / period + 1e-9));
        a.normal_sign = normal_sign;
        a.validate();
        return a;
    }

    void validate() const
    {
        if (!(period > 0.0))
            throw std::invalid_argument("aperture period must be positive");
        if (nx < 1 || ny < 1)
            throw std::invalid_argument("aperture must hold at least one cell per axis");
        if (nx * period > size_x + period / 2.0 || ny * period > size_y + period / 2.0)
            throw std::invalid_argument("aperture cells do not fit the aperture size");
        if (normal_sign != 1 && normal_sign != -1)
            throw std::invalid_argument("aperture normal_sign must be +1 or -1");
        if (!std::isfinite(plane_z))
            throw std::invalid_argument("aperture plane must be finite");
    }

    double x_at(int i) const { return (i - (nx - 1) / 2.0) * period; }
    double y_at(int j) const { return (j - (ny - 1) / 2.0) * period; }
    Point3 element(int i, int j) const { return {x_at(i), y_at(j), plane_z}; }
    std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }

    // Row-major flat index; i runs along x.
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }

    /// Physical area covered by the cells, nx*ny*period^2.
    double cell_area() const { return nx * ny * period * period; }
};

struct FeedPlacement
{
    std::string id;
    Point3 position;
    PolarizationState polarization = PolarizationState::X;
};

/// Seven-element feed line A1..A7 at x = -160, -110, -50, 0, 50, 110, 160 mm.
inline std::vector<FeedPlacement> default_feeds()
{
    constexpr std::array<double, 7> xs{-160.0, -110.0, -50.0, 0.0, 50.0, 110.0, 160.0};
    std::vector<FeedPlacement> feeds;
    for (std::size_t k = 0; k < xs.size(); ++k)
        feeds.push_back({"A" + std::to_string(k + 1), {xs[k], 0.0, 0.0}, PolarizationState::X});
    return feeds;
}

struct LayoutConfig
{
    double f_mm = 171.0;
    std::optional<double> h_mm;
    std::optional<double> F_mm = 384.0;
    double d_mm = 220.0;
    double ta_size_mm = 240.0;
    double ta_period_mm = 6.0;
    double fta_size_mm = 360.0;
    double fta_period_mm = 10.0;
    std::vector<FeedPlacement> feeds = default_feeds();
};

struct SystemLayout
{
    double feed_plane_z = 0.0;
    double f = 0.0;
    double h = 0.0;
    double F = 0.0; // folded focal length, 2f + h
    double d = 0.0; // virtual feed spacing
    std::array<Point3, 2> virtual_feeds{};
    ApertureSpec ta;
    ApertureSpec fta;
    std::vector<FeedPlacement> feeds;

    /// Offset angle of the virtual feeds seen from the TA center.
    double offset_angle_deg() const { return rad2deg(std::atan2(d / 2.0, f)); }

    const FeedPlacement &feed(const std::string &id) const
    {
        for (const auto &fp : feeds)
            if (fp.id == id)
                return fp;
        throw std::out_of_range("unknown feed id: " + id);
    }

    bool has_feed(const std::string &id) const
    {
        for (const auto &fp : feeds)
            if (fp.id == id)
                return true;
        return false;
    }
};

/// Relative tolerance used when both h and F are supplied.
inline constexpr double focal_relation_tolerance = 1e-9;

inline SystemLayout build_layout(const LayoutConfig &cfg)
{
    if (!(cfg.f_mm > 0.0) || !std::isfinite(cfg.f_mm))
        throw std::invalid_argument("f must be positive");
    if (!(cfg.d_mm >= 0.0) || !std::isfinite(cfg.d_mm))
        throw std::invalid_argument("d must be nonnegative");

    double h = 0.0;
    if (cfg.h_mm && cfg.F_mm)
    {
        h = *cfg.h_mm;
        const double F = *cfg.F_mm;
        if (std::abs(F - 2.0 * cfg.f_mm - h) > focal_relation_tolerance * std::max(1.0, std::abs(F)))
            throw std::invalid_argument("inconsistent focal lengths: F != 2f + h");
    }
    else if (cfg.h_mm)
        h = *cfg.h_mm;
    else if (cfg.F_mm)
    {
        if (!(*cfg.F_mm >= 2.0 * cfg.f_mm))
            throw std::invalid_argument("F must be at least 2f");
        h = *cfg.F_mm - 2.0 * cfg.f_mm;
    }
    else
        throw std::invalid_argument("either h or F must be given");

    // h = 0 is the degenerate coplanar case (FTA in the feed plane).
    if (!(h >= 0.0) || !std::isfinite(h))
        throw std::invalid_argument("h must be nonnegative");

    SystemLayout L;
    L.f = cfg.f_mm;
    L.h = h;
    L.F = 2.0 * L.f + L.h;
    L.d = cfg.d_mm;
    L.virtual_feeds = {Point3{-L.d / 2.0, 0.0, 0.0}, Point3{L.d / 2.0, 0.0, 0.0}};
    L.ta = ApertureSpec::make(L.f, cfg.ta_size_mm, cfg.ta_size_mm, cfg.ta_period_mm, +1);
    L.fta = ApertureSpec::make(-L.h, cfg.fta_size_mm, cfg.fta_size_mm, cfg.fta_period_mm, -1);

    for (const auto &fp : cfg.feeds)
    {
        if (fp.id.empty())
            throw std::invalid_argument("feed id must not be empty");
        if (!fp.position.is_finite() || fp.position.z != L.feed_plane_z)
            throw std::invalid_argument("feed " + fp.id + " must lie on the feed plane");
        for (const auto &other : L.feeds)
            if (other.id == fp.id)
                throw std::invalid_argument("duplicate feed id: " + fp.id);
        L.feeds.push_back(fp);
    }
    return L;
}

/// Mirror image of a point about the plane z = plane_z.
inline Point3 mirror_about(const Point3 &p, double plane_z) { return {p.x, p.y, 2.0 * plane_z - p.z}; }

/// Image of a feed-plane point in the TA plane. Distances from the image to
/// points below the TA equal the folded path feed -> TA grid -> point.
inline Point3 mirror_feed(const SystemLayout &layout, const Point3 &feed)
{
    if (feed.z != layout.feed_plane_z)
        throw std::invalid_argument("mirror_feed: point is not on the feed plane");
    return mirror_about(feed, layout.f);
}

inline Point3 mirror_feed(const SystemLayout &layout, const FeedPlacement &feed)
{
    return mirror_feed(layout, feed.position);
}

/// Focal length that puts the -10 dB feed taper on the aperture rim:
/// f = D / (2 tan(alpha)).
inline double focal_from_taper(double aperture_mm, double alpha_10db_deg)
{
    if (!(aperture_mm > 0.0))
        throw std::invalid_argument("focal_from_taper: aperture must be positive");
    if (!(alpha_10db_deg > 0.0 && alpha_10db_deg < 90.0))
        throw std::invalid_argument("focal_from_taper: taper angle must lie in (0, 90) degrees");
    return aperture_mm / (2.0 * std::tan(deg2rad(alpha_10db_deg)));
}

/// Inverse of focal_from_taper.
inline double taper_from_focal(double aperture_mm, double focal_mm)
{
    if (!(aperture_mm > 0.0) || !(focal_mm > 0.0))
        throw std::invalid_argument("taper_from_focal: dimensions must be positive");
    return rad2deg(std::atan(aperture_mm / (2.0 * focal_mm)));
}

} // namespace hta
