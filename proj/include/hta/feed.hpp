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

// Idealized polarization-switchable feed: a cos^q radiator on the feed plane.

#pragma once

#include "geometry.hpp"
#include "polarization.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace hta
{

struct FeedPattern
{
    double q = 5.74;                  // field taper exponent
    double boresight_gain_dbi = 10.5; // informational only
    double frequency_ghz = 9.75;

    void validate() const
    {
        if (!(q > 0.0) || !std::isfinite(q))
            throw std::invalid_argument("feed pattern exponent q must be positive");
    }
};

/// cos(angle)^q field amplitude; zero behind the feed (angle > 90).
inline double pattern_amplitude(const FeedPattern &p, double off_axis_deg)
{
    p.validate();
    if (!(off_axis_deg >= 0.0))
        throw std::invalid_argument("pattern_amplitude: off-axis angle must be nonnegative");
    if (off_axis_deg >= 90.0)
        return 0.0;
    return std::pow(std::cos(deg2rad(off_axis_deg)), p.q);
}

/// Off-axis angle at which the pattern is 10 dB below boresight.
inline double minus10db_angle(const FeedPattern &p)
{
    p.validate();
    return rad2deg(std::acos(std::pow(10.0, -1.0 / (2.0 * p.q))));
}

/// Exponent q that puts the -10 dB point at the given off-axis angle.
inline double q_for_taper(double minus10db_deg)
{
    if (!(minus10db_deg > 0.0 && minus10db_deg < 90.0))
        throw std::invalid_argument("q_for_taper: angle must lie in (0, 90) degrees");
    return -0.5 / std::log10(std::cos(deg2rad(minus10db_deg)));
}

struct FeedExcitation
{
    FeedPlacement placement;
    FeedPattern pattern;
    PolarizationState state = PolarizationState::X;
    int boresight = +1;             // +1 radiates toward +z, -1 toward -z
    double crosspol_leakage = 0.0;  // orthogonal field amplitude relative to co-pol
};

/// Field polarization launched by the feed, including optional cross-pol.
inline JonesVector feed_polarization(const FeedExcitation &ex)
{
    const JonesVector co = unit_vector(ex.state);
    if (ex.crosspol_leakage == 0.0)
        return co;
    const JonesVector orth = rotate_pol_90(co);
    return co + orth * ex.crosspol_leakage;
}

struct IncidentField
{
    cplx amplitude{0.0, 0.0};
    JonesVector polarization;
    double distance_mm = 0.0;
    double off_axis_deg = 0.0;
};

/// Spherical wave from the feed at a point:
/// pattern(angle) * (1 mm / R) * exp(-j k0 R), polarized along the feed state.
inline IncidentField incident_field(const FeedExcitation &ex, const Point3 &point, double k0)
{
    const Point3 &src = ex.placement.position;
    const double R = path_length(src, point);
    if (!(R > 0.0))
        throw std::invalid_argument("incident_field: observation point coincides with the feed");
    const double axial = ex.boresight * (point.z - src.z);
    const double off_axis = rad2deg(std::acos(std::clamp(axial / R, -1.0, 1.0)));
    IncidentField out;
    out.distance_mm = R;
    out.off_axis_deg = off_axis;
    out.amplitude = std::polar(pattern_amplitude(ex.pattern, off_axis) / R, -k0 * R);
    out.polarization = feed_polarization(ex);
    return out;
}

} // namespace hta
