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

#include "hta/feed.hpp"

#include <cmath>
#include <random>

using Catch::Approx;
using namespace hta;

namespace
{
FeedExcitation feed_at(double x, double y = 0.0, int boresight = +1)
{
    FeedExcitation ex;
    ex.placement.id = "T";
    ex.placement.position = {x, y, 0.0};
    ex.boresight = boresight;
    return ex;
}
} // namespace

TEST_CASE("pattern amplitude basics")
{
    FeedPattern p;
    CHECK(pattern_amplitude(p, 0.0) == 1.0);
    CHECK(pattern_amplitude(p, 90.0) == 0.0);
    CHECK(pattern_amplitude(p, 120.0) == 0.0);
    CHECK(pattern_amplitude(p, 60.0) == Approx(std::pow(0.5, 5.74)).epsilon(1e-14));
    CHECK_THROWS_AS(pattern_amplitude(p, -1.0), std::invalid_argument);
    p.q = 0.0;
    CHECK_THROWS_AS(pattern_amplitude(p, 10.0), std::invalid_argument);
}

TEST_CASE("pattern amplitude is monotone non-increasing on [0, 90]")
{
    for (double q : {0.5, 1.0, 5.74, 20.0})
    {
        FeedPattern p;
        p.q = q;
        double prev = 2.0;
        for (double a = 0.0; a <= 90.0; a += 0.25)
        {
            const double v = pattern_amplitude(p, a);
            CHECK(v <= prev);
            CHECK(v >= 0.0);
            prev = v;
        }
    }
}

TEST_CASE("-10 dB angle and taper exponent")
{
    FeedPattern p;
    CHECK(minus10db_angle(p) == Approx(35.06).margin(0.05));
    CHECK(q_for_taper(35.06) == Approx(5.75).margin(0.01));
    p.q = 1.0;
    CHECK(minus10db_angle(p) == Approx(71.565).margin(1e-3));
    p.q = 1e6;
    CHECK(minus10db_angle(p) == Approx(0.0).margin(0.1));

    const double a = minus10db_angle(FeedPattern{});
    CHECK(20.0 * std::log10(pattern_amplitude(FeedPattern{}, a)) == Approx(-10.0).margin(1e-9));

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ang(1.0, 89.0);
    for (int n = 0; n < 50; ++n)
    {
        const double t = ang(rng);
        FeedPattern r;
        r.q = q_for_taper(t);
        CHECK(minus10db_angle(r) == Approx(t).epsilon(1e-10));
    }
    CHECK_THROWS_AS(q_for_taper(0.0), std::invalid_argument);
    CHECK_THROWS_AS(q_for_taper(90.0), std::invalid_argument);
}

TEST_CASE("incident field on axis")
{
    const double k0 = wavenumber(10.0);
    const auto f = incident_field(feed_at(0.0), {0, 0, 171}, k0);
    CHECK(f.distance_mm == 171.0);
    CHECK(f.off_axis_deg == 0.0);
    CHECK(std::abs(f.amplitude) == Approx(1.0 / 171.0).epsilon(1e-14));
    CHECK(-k0 * 171.0 == Approx(-35.839).margin(1e-3));
    CHECK(std::arg(f.amplitude) == Approx(std::remainder(-k0 * 171.0, 2.0 * pi)).margin(1e-12));
    CHECK(f.polarization == unit_vector(PolarizationState::X));
}

TEST_CASE("incident field: equal distances give equal fields")
{
    const double k0 = wavenumber(9.75);
    const auto ex = feed_at(0.0);
    const auto a = incident_field(ex, {60, 80, 171}, k0);
    const auto b = incident_field(ex, {-80, 60, 171}, k0);
    const auto c = incident_field(ex, {100, 0, 171}, k0);
    CHECK(a.distance_mm == Approx(b.distance_mm).epsilon(1e-15));
    CHECK(std::abs(a.amplitude - b.amplitude) < 1e-15);
    CHECK(std::abs(a.amplitude - c.amplitude) < 1e-15);
}

TEST_CASE("incident phase is linear in distance")
{
    const auto ex = feed_at(-50.0, 20.0);
    const Point3 pt{30, -10, 171};
    const double R = path_length(ex.placement.position, pt);
    for (double fghz : {9.0, 9.75, 10.5})
    {
        const double k0 = wavenumber(fghz);
        const auto f = incident_field(ex, pt, k0);
        const cplx want = std::polar(1.0, -k0 * R);
        CHECK(std::abs(f.amplitude / std::abs(f.amplitude) - want) < 1e-12);
    }
}

TEST_CASE("backward-looking feed illuminates -z only")
{
    const double k0 = wavenumber(9.75);
    const auto back = feed_at(0.0, 0.0, -1);
    CHECK(std::abs(incident_field(back, {0, 0, 171}, k0).amplitude) == 0.0);
    CHECK(std::abs(incident_field(back, {0, 0, -42}, k0).amplitude) == Approx(1.0 / 42.0));
    CHECK_THROWS_AS(incident_field(back, {0, 0, 0}, k0), std::invalid_argument);
}

TEST_CASE("feed polarization with cross-pol leakage")
{
    auto ex = feed_at(0.0);
    ex.state = PolarizationState::Y;
    CHECK(feed_polarization(ex) == unit_vector(PolarizationState::Y));
    ex.state = PolarizationState::X;
    ex.crosspol_leakage = 0.1;
    const auto v = feed_polarization(ex);
    CHECK(v.ex == cplx(1.0, 0.0));
    CHECK(std::abs(v.ey) == Approx(0.1));
}
