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

#include <catch2/catch_amalgamated.hpp>

#include "hta/synthesis.hpp"

#include <cmath>
#include <random>
#include <sstream>

using Catch::Approx;
using namespace hta;

namespace
{
// Independent scalar evaluation of the focusing law for one element.
double focus_phase_rad(double k0, double fx, double fy, double fz, double x, double y, double z, double theta_deg,
                       double phi_deg)
{
    const double dx = x - fx, dy = y - fy, dz = z - fz;
    const double R = std::sqrt(dx * dx + dy * dy + dz * dz);
    const double th = theta_deg * pi / 180.0, ph = phi_deg * pi / 180.0;
    return k0 * (R - std::sin(th) * (x * std::cos(ph) + y * std::sin(ph)));
}

LayoutConfig odd_grid_layout()
{
    LayoutConfig cfg;
    cfg.ta_size_mm = 246.0; // 41 cells: one sits at the center
    cfg.fta_size_mm = 370.0; // 37 cells
    return cfg;
}
} // namespace

TEST_CASE("single focus on-axis follows the focusing law")
{
    const double k0 = wavenumber(10.0);
    const auto ap = ApertureSpec::make(171.0, 240, 240, 6, 1);
    const auto m = single_focus_phase(ap, {0, 0, 0}, {0, 0}, k0);
    for (int j = 0; j < ap.ny; j += 3)
        for (int i = 0; i < ap.nx; i += 3)
        {
            const double x = ap.x_at(i), y = ap.y_at(j);
            const double want = k0 * (std::sqrt(x * x + y * y + 171.0 * 171.0) - 171.0);
            CHECK(m.unwrapped_rad[ap.index(i, j)] - k0 * 171.0 == Approx(want).margin(1e-9));
        }
}

TEST_CASE("single focus: mirror-symmetric elements share a phase at broadside")
{
    const auto ap = ApertureSpec::make(171.0, 240, 240, 6, 1);
    const auto m = single_focus_phase(ap, {0, 0, 0}, {0, 0}, wavenumber(9.75));
    for (int j = 0; j < ap.ny; ++j)
        for (int i = 0; i < ap.nx; ++i)
        {
            CHECK(m.phase(i, j) == m.phase(ap.nx - 1 - i, j));
            CHECK(m.phase(i, j) == m.phase(i, ap.ny - 1 - j));
        }
}

TEST_CASE("single focus: corner element of the 240 mm aperture")
{
    const double k0 = wavenumber(10.0);
    const auto ap = ApertureSpec::make(171.0, 240, 240, 6, 1);
    const auto m = single_focus_phase(ap, {0, 0, 0}, {0, 0}, k0);
    REQUIRE(ap.x_at(39) == 117.0);
    const double delta = m.unwrapped_rad[ap.index(39, 39)] - k0 * 171.0;
    // sqrt(2 * 117^2 + 171^2) - 171 = 66.947 mm -> 14.031 rad -> 83.93 deg wrapped
    CHECK(delta == Approx(14.0312).margin(1e-4));
    CHECK(wrap_deg(rad2deg(delta)) == Approx(83.93).margin(0.01));
    CHECK(delta == Approx(focus_phase_rad(k0, 0, 0, 0, 117, 117, 171, 0, 0) - k0 * 171.0).epsilon(1e-14));
}

TEST_CASE("single focus with a scan target matches the scalar law")
{
    const double k0 = wavenumber(9.75);
    const auto ap = ApertureSpec::make(171.0, 120, 90, 6, 1);
    const Point3 feed{-40, 15, 0};
    for (const ScanTarget t : {ScanTarget{0, 0}, ScanTarget{25, 0}, ScanTarget{40, 135}, ScanTarget{10, 300}})
    {
        const auto m = single_focus_phase(ap, feed, t, k0);
        for (int j = 0; j < ap.ny; ++j)
            for (int i = 0; i < ap.nx; ++i)
            {
                const double want = focus_phase_rad(k0, feed.x, feed.y, feed.z, ap.x_at(i), ap.y_at(j), 171.0,
                                                    t.theta, t.phi);
                CHECK(m.unwrapped_rad[ap.index(i, j)] == Approx(want).epsilon(1e-13));
                CHECK(m.phase(i, j) >= 0.0);
                CHECK(m.phase(i, j) < 360.0);
            }
    }
}

TEST_CASE("single focus rejects feeds on the aperture plane and bad targets")
{
    const auto ap = ApertureSpec::make(171.0, 60, 60, 6, 1);
    CHECK_THROWS_AS(single_focus_phase(ap, {0, 0, 171}, {0, 0}, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(single_focus_phase(ap, {0, 0, 0}, {90, 0}, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(single_focus_phase(ap, {0, 0, 0}, {10, 360}, 0.2), std::invalid_argument);
}

TEST_CASE("bifocal: element on the symmetry axis and the worked example")
{
    const double k0 = wavenumber(10.0);
    const auto ap = ApertureSpec::make(171.0, 250, 10, 10, 1); // x = -120..120 step 10, y = 0
    const Point3 v1{-110, 0, 0}, v2{110, 0, 0};
    const auto m = bifocal_phase(ap, v1, v2, 30.0, k0);

    REQUIRE(ap.x_at(12) == 0.0);
    CHECK(m.unwrapped_rad[ap.index(12, 0)] == Approx(k0 * std::hypot(110.0, 171.0)).epsilon(1e-15));

    REQUIRE(ap.x_at(18) == 60.0);
    const double R1 = std::sqrt(170.0 * 170.0 + 171.0 * 171.0);
    const double R2 = std::sqrt(50.0 * 50.0 + 171.0 * 171.0);
    CHECK((R1 + R2) / 2.0 == Approx(209.64).margin(0.005));
    CHECK(m.unwrapped_rad[ap.index(18, 0)] == Approx(43.938).margin(1e-3));
    CHECK(m.phase(18, 0) == Approx(357.45).margin(0.01));
}

TEST_CASE("bifocal equals the mean of the two scanned single-focus maps")
{
    const double k0 = wavenumber(9.75);
    const SystemLayout L = build_layout(LayoutConfig{});
    for (double theta : {0.0, 12.0, 32.75, 60.0})
    {
        const auto a = single_focus_unwrapped(L.ta, L.virtual_feeds[0], {theta, 0.0}, k0);
        const auto b = single_focus_unwrapped(L.ta, L.virtual_feeds[1], {theta, 180.0}, k0);
        const auto m = bifocal_phase(L.ta, L.virtual_feeds[0], L.virtual_feeds[1], theta, k0);
        for (std::size_t n = 0; n < a.size(); ++n)
            CHECK(m.unwrapped_rad[n] == Approx((a[n] + b[n]) / 2.0).epsilon(1e-9));
        const auto neg = bifocal_phase(L.ta, L.virtual_feeds[0], L.virtual_feeds[1], -theta, k0);
        CHECK(neg.unwrapped_rad == m.unwrapped_rad);
        CHECK(neg.phases == m.phases);
    }
}

TEST_CASE("bifocal rejects asymmetric virtual feeds")
{
    const auto ap = ApertureSpec::make(171.0, 60, 60, 6, 1);
    CHECK_THROWS_AS(bifocal_phase(ap, {-100, 0, 0}, {110, 0, 0}, 0, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(bifocal_phase(ap, {-110, 5, 0}, {110, 0, 0}, 0, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(bifocal_phase(ap, {-110, 0, 0}, {110, 0, 3}, 0, 0.2), std::invalid_argument);
}

TEST_CASE("bifocal degenerates to single focus when the feeds coincide")
{
    const double k0 = wavenumber(9.75);
    const auto ap = ApertureSpec::make(171.0, 240, 240, 6, 1);
    const auto bi = bifocal_phase(ap, {0, 0, 0}, {0, 0, 0}, 0.0, k0);
    const auto sf = single_focus_phase(ap, {0, 0, 0}, {0, 0}, k0);
    for (std::size_t n = 0; n < ap.size(); ++n)
        CHECK(bi.unwrapped_rad[n] == Approx(sf.unwrapped_rad[n]).epsilon(1e-15));
}

TEST_CASE("wrapping an already wrapped map is the identity")
{
    const SystemLayout L = build_layout(LayoutConfig{});
    const auto m = synthesize_ta(L, wavenumber(9.75));
    for (double p : m.phases)
        CHECK(wrap_deg(p) == p);
}

TEST_CASE("TA and FTA maps are symmetric in x and y")
{
    const SystemLayout L = build_layout(LayoutConfig{});
    const double k0 = wavenumber(9.75);
    for (const auto &m : {synthesize_ta(L, k0), synthesize_fta(L, k0)})
    {
        const auto &ap = m.aperture;
        for (int j = 0; j < ap.ny; ++j)
            for (int i = 0; i < ap.nx; ++i)
            {
                CHECK(m.phase(i, j) == m.phase(ap.nx - 1 - i, j));
                CHECK(m.phase(i, j) == m.phase(i, ap.ny - 1 - j));
            }
    }
}

TEST_CASE("TA iso-phase contours are ellipses with the virtual feeds as foci")
{
    const SystemLayout L = build_layout(odd_grid_layout());
    const double k0 = wavenumber(9.75);
    const auto m = synthesize_ta(L, k0);
    const auto &ap = m.aperture;
    const int c = ap.nx / 2;
    REQUIRE(ap.x_at(c) == 0.0);
    for (int s = 1; s <= c; ++s)
    {
        const double along = m.unwrapped_rad[ap.index(c + s, c)] - m.unwrapped_rad[ap.index(c, c)];
        const double across = m.unwrapped_rad[ap.index(c, c + s)] - m.unwrapped_rad[ap.index(c, c)];
        CHECK(along < across);
    }
}

TEST_CASE("center-element phases of the TA and FTA maps")
{
    const SystemLayout L = build_layout(odd_grid_layout());
    const double k0 = wavenumber(9.75);
    const auto ta = synthesize_ta(L, k0);
    const auto fta = synthesize_fta(L, k0);
    const int ct = L.ta.nx / 2, cf = L.fta.nx / 2;
    REQUIRE(L.ta.x_at(ct) == 0.0);
    REQUIRE(L.fta.x_at(cf) == 0.0);
    CHECK(ta.unwrapped_rad[L.ta.index(ct, ct)] == Approx(k0 * std::hypot(110.0, 171.0)).epsilon(1e-15));
    CHECK(fta.unwrapped_rad[L.fta.index(cf, cf)] == Approx(k0 * std::hypot(110.0, 384.0)).epsilon(1e-15));
    CHECK(ta.phase(ct, ct) == Approx(wrap_deg(rad2deg(k0 * std::hypot(110.0, 171.0)))).epsilon(1e-12));
}

TEST_CASE("FTA with d = 0 reduces to single focus with focal length F")
{
    LayoutConfig cfg;
    cfg.d_mm = 0.0;
    const SystemLayout L = build_layout(cfg);
    const double k0 = wavenumber(9.75);
    const auto fta = synthesize_fta(L, k0);
    const auto sf = single_focus_phase(L.fta, {0, 0, 2.0 * L.f}, {0, 0}, k0);
    for (std::size_t n = 0; n < L.fta.size(); ++n)
        CHECK(fta.unwrapped_rad[n] == Approx(sf.unwrapped_rad[n]).epsilon(1e-15));
    const int i = 0, j = 0;
    const double x = L.fta.x_at(i), y = L.fta.y_at(j);
    CHECK(fta.unwrapped_rad[L.fta.index(i, j)] == Approx(k0 * std::sqrt(x * x + y * y + L.F * L.F)).epsilon(1e-14));
}

TEST_CASE("FTA with h = 0 is the TA relabeled to focal length 2f")
{
    LayoutConfig folded;
    folded.f_mm = 120.0;
    folded.h_mm = 0.0;
    folded.F_mm.reset();
    folded.ta_size_mm = folded.fta_size_mm = 300.0;
    folded.ta_period_mm = folded.fta_period_mm = 10.0;
    LayoutConfig straight = folded;
    straight.f_mm = 240.0;

    const double k0 = wavenumber(9.75);
    const auto fta = synthesize_fta(build_layout(folded), k0);
    const auto ta = synthesize_ta(build_layout(straight), k0);
    CHECK(fta.unwrapped_rad == ta.unwrapped_rad);
}

TEST_CASE("quantize with continuous curves is exact")
{
    const SystemLayout L = build_layout(LayoutConfig{});
    const double k0 = wavenumber(9.75);
    const auto ta = synthesize_ta(L, k0);
    const auto cells = quantize(ta, default_uc1_curve());
    CHECK(cells.cells.size() == ta.phases.size());
    CHECK(cells.max_residual() <= 1e-6);
    CHECK(cells.count_above_tolerance() == 0);
    const auto fcells = quantize(synthesize_fta(L, k0), default_uc2_curve());
    CHECK(fcells.max_residual() <= 1e-6);
}

TEST_CASE("quantize to tabulated samples stays within half a phase step")
{
    const PhaseCurve coarse("L", 9.75, {{0.5, 0.0, 0.0}, {4.6, 180.0, 0.0}});
    const auto ap = ApertureSpec::make(171.0, 240, 240, 6, 1);
    const auto m = single_focus_phase(ap, {30, -20, 0}, {0, 0}, wavenumber(9.75));
    const auto cells = quantize(m, coarse, 5.0, QuantizeMode::NearestSample);
    CHECK(cells.max_residual() <= 90.0 + 1e-9);
    CHECK(cells.count_above_tolerance() > 0);

    const PhaseCurve uc1 = default_uc1_curve();
    const auto fine = quantize(m, uc1, 5.0, QuantizeMode::NearestSample);
    double widest = 0.0;
    for (std::size_t k = 1; k < uc1.samples().size(); ++k)
        widest = std::max(widest, uc1.samples()[k].phase_deg - uc1.samples()[k - 1].phase_deg);
    CHECK(fine.max_residual() <= widest / 2.0 + 1e-9);
}

TEST_CASE("quantize an all-zero map gives a uniform cell map")
{
    const auto ap = ApertureSpec::make(171.0, 60, 60, 6, 1);
    const PhaseMap zero = PhaseMap::from_unwrapped(ap, std::vector<double>(ap.size(), 0.0), 0.2);
    const auto cells = quantize(zero, default_uc2_curve());
    for (const auto &c : cells.cells)
        CHECK(c == cells.cells.front());
    CHECK(cells.cells.front() == UnitCellGeometry{1.5, false});
}

TEST_CASE("phase and cell CSV export")
{
    const SystemLayout L = build_layout(LayoutConfig{});
    const auto ta = synthesize_ta(L, wavenumber(9.75));
    const auto cells = quantize(ta, default_uc1_curve());
    std::ostringstream p, c;
    write_phase_csv(p, ta);
    write_cell_csv(c, ta, cells);

    std::istringstream pin(p.str());
    std::string line;
    std::getline(pin, line);
    CHECK(line == "i,j,x_mm,y_mm,phase_deg");
    std::size_t rows = 0;
    while (std::getline(pin, line))
    {
        ++rows;
        const double ph = std::stod(line.substr(line.rfind(',') + 1));
        CHECK(ph >= 0.0);
        CHECK(ph < 360.0);
    }
    CHECK(rows == 1600);

    std::istringstream cin(c.str());
    std::getline(cin, line);
    CHECK(line == "i,j,x_mm,y_mm,phase_deg,param_mm,rotated");
    std::getline(cin, line);
    CHECK(line.rfind("0,0,-117,-117,", 0) == 0);
}
