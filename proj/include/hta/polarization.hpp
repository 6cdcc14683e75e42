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

// Jones calculus for the ideal wire grids and 90 degree polarization
// rotators of the transmission polarization-rotating metasurfaces, plus the
// three-state routing table (TA / FTA / HTA).

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hta
{

using cplx = std::complex<double>;

struct JonesVector
{
    cplx ex{0.0, 0.0};
    cplx ey{0.0, 0.0};

    double norm2() const { return std::norm(ex) + std::norm(ey); }
    bool is_finite() const
    {
        return std::isfinite(ex.real()) && std::isfinite(ex.imag()) && std::isfinite(ey.real()) &&
               std::isfinite(ey.imag());
    }

    JonesVector operator*(cplx s) const { return {ex * s, ey * s}; }
    JonesVector operator+(const JonesVector &o) const { return {ex + o.ex, ey + o.ey}; }
    friend bool operator==(const JonesVector &, const JonesVector &) = default;
};

enum class PolarizationState
{
    X,
    Y,
    Slant45
};

inline JonesVector unit_vector(PolarizationState s)
{
    switch (s)
    {
    case PolarizationState::X:
        return {1.0, 0.0};
    case PolarizationState::Y:
        return {0.0, 1.0};
    case PolarizationState::Slant45:
        return {std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0};
    }
    throw std::invalid_argument("unknown polarization state");
}

inline std::string_view to_string(PolarizationState s)
{
    switch (s)
    {
    case PolarizationState::X:
        return "x";
    case PolarizationState::Y:
        return "y";
    case PolarizationState::Slant45:
        return "slant45";
    }
    return "?";
}

inline PolarizationState parse_polarization(std::string_view s)
{
    if (s == "x" || s == "X")
        return PolarizationState::X;
    if (s == "y" || s == "Y")
        return PolarizationState::Y;
    if (s == "slant45" || s == "Slant45" || s == "45")
        return PolarizationState::Slant45;
    throw std::invalid_argument("unknown polarization state '" + std::string(s) + "' (expected x, y or slant45)");
}

enum class GridOrientation
{
    WiresAlongX,
    WiresAlongY
};

/// Ideal grid transmission: the component parallel to the wires is removed.
inline JonesVector grid_transmit(const JonesVector &v, GridOrientation g)
{
    return g == GridOrientation::WiresAlongY ? JonesVector{v.ex, 0.0} : JonesVector{0.0, v.ey};
}

/// Ideal grid reflection: the parallel component comes back with the given
/// reflection phase (180 degrees for a perfect conductor).
inline JonesVector grid_reflect(const JonesVector &v, GridOrientation g, double reflection_phase_deg = 180.0)
{
    const cplx r = std::polar(1.0, reflection_phase_deg * std::numbers::pi / 180.0);
    return g == GridOrientation::WiresAlongY ? JonesVector{0.0, v.ey * r} : JonesVector{v.ex * r, 0.0};
}

/// 90 degree rotation, (ex, ey) -> (-ey, ex).
inline JonesVector rotate_pol_90(const JonesVector &v) { return {-v.ey, v.ex}; }

struct RoutingPlan
{
    PolarizationState state = PolarizationState::X;
    bool forward_active = false;
    bool backward_active = false;
    double forward_amplitude = 0.0;
    double backward_amplitude = 0.0;
    PolarizationState output_polarization = PolarizationState::Y;
};

inline RoutingPlan route(PolarizationState state)
{
    RoutingPlan p;
    p.state = state;
    p.output_polarization = PolarizationState::Y;
    switch (state)
    {
    case PolarizationState::X:
        p.forward_active = true;
        p.forward_amplitude = 1.0;
        break;
    case PolarizationState::Y:
        p.backward_active = true;
        p.backward_amplitude = 1.0;
        break;
    case PolarizationState::Slant45:
        p.forward_active = p.backward_active = true;
        p.forward_amplitude = p.backward_amplitude = std::numbers::sqrt2 / 2.0;
        break;
    }
    return p;
}

// Element-wise path operators through the TPRM stack. The lower grid of the
// upper TPRM has wires along y (passes x, reflects y); its upper grid has
// wires along x. The FTA cell is two stacked converters between grids with
// wires along x.

/// Forward path: through the upper TPRM with one rotation.
inline JonesVector forward_path(const JonesVector &incident)
{
    JonesVector v = grid_transmit(incident, GridOrientation::WiresAlongY);
    v = rotate_pol_90(v);
    return grid_transmit(v, GridOrientation::WiresAlongX);
}

/// Part of the feed wave that the upper TPRM sends back toward the FTA.
inline JonesVector backward_reflection(const JonesVector &incident, double reflection_phase_deg = 180.0)
{
    return grid_reflect(incident, GridOrientation::WiresAlongY, reflection_phase_deg);
}

/// Transmission through the FTA cell: two rotations between x-wire grids.
inline JonesVector fta_transmission(const JonesVector &down_going)
{
    JonesVector v = grid_transmit(down_going, GridOrientation::WiresAlongX);
    v = rotate_pol_90(rotate_pol_90(v));
    return grid_transmit(v, GridOrientation::WiresAlongX);
}

/// Full backward path: reflection at the upper TPRM, then the FTA cell.
inline JonesVector backward_path(const JonesVector &incident, double reflection_phase_deg = 180.0)
{
    return fta_transmission(backward_reflection(incident, reflection_phase_deg));
}

} // namespace hta
