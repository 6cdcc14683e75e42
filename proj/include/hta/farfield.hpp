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

// Far-field engine: aperture illumination through the polarization path and
// unit cells, discrete superposition onto a hemisphere grid, directivity by
// quadrature on the sphere, and beam metrics.

#pragma once

#include "feed.hpp"
#include "geometry.hpp"
#include "parallel.hpp"
#include "polarization.hpp"
#include "synthesis.hpp"
#include "unitcell.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace hta
{

enum class ApertureSide
{
    TA, // forward, +z
    FTA // backward, -z
};

inline std::string_view to_string(ApertureSide s) { return s == ApertureSide::TA ? "forward" : "backward"; }

/// Outgoing (post-cell) field per element. ey is the co-polarized (y)
/// component, ex the cross-polarized one.
struct ApertureField
{
    ApertureSpec aperture;
    std::vector<JonesVector> field;

    const JonesVector &at(int i, int j) const { return field[aperture.index(i, j)]; }
    int hemisphere() const { return aperture.normal_sign; }
};

struct BlockageMask
{
    bool enabled = false;
    double half_width_mm = 180.0; // feed board footprint along x
    double half_height_mm = 15.0; // along y

    bool blocks(double x, double y) const
    {
        return enabled && std::abs(x) <= half_width_mm && std::abs(y) <= half_height_mm;
    }
};

struct IlluminationOptions
{
    double reflection_phase_deg = 180.0;
    double cell_leakage = 0.0; // |T_xx| of the unconverted wave passing a cell
    BlockageMask blockage;     // applied on the FTA side only
};

/// Field leaving one aperture for a given feed excitation. The forward path
/// crosses the upper TPRM once; the backward path reflects at its lower grid
/// and is traced from the feed image in the TA plane through the FTA cells.
inline ApertureField illuminate(const SystemLayout &layout, const FeedExcitation &excitation, ApertureSide side,
                                const CellMap &cellmap, const PhaseCurve &curve, double k0,
                                const IlluminationOptions &opt = {})
{
    const RoutingPlan plan = route(excitation.state);
    if (side == ApertureSide::TA && !plan.forward_active)
        throw std::invalid_argument("illuminate: forward side is inactive for state " +
                                    std::string(to_string(excitation.state)));
    if (side == ApertureSide::FTA && !plan.backward_active)
        throw std::invalid_argument("illuminate: backward side is inactive for state " +
                                    std::string(to_string(excitation.state)));

    const ApertureSpec &ap = side == ApertureSide::TA ? layout.ta : layout.fta;
    if (cellmap.aperture.nx != ap.nx || cellmap.aperture.ny != ap.ny)
        throw std::invalid_argument("illuminate: cell map does not match the aperture grid");

    FeedExcitation src = excitation;
    if (side == ApertureSide::FTA)
    {
        src.placement.position = mirror_feed(layout, excitation.placement);
        src.boresight = -excitation.boresight;
    }

    ApertureField out;
    out.aperture = ap;
    out.field.resize(ap.size());
    for (int j = 0; j < ap.ny; ++j)
        for (int i = 0; i < ap.nx; ++i)
        {
            const Point3 e = ap.element(i, j);
            const std::size_t n = ap.index(i, j);
            if (side == ApertureSide::FTA && opt.blockage.blocks(e.x, e.y))
                continue;
            const IncidentField inc = incident_field(src, e, k0);
            const JonesVector incoming = inc.polarization * inc.amplitude;
            const cplx t = transmission(curve, cellmap.cells[n], inc.off_axis_deg);
            JonesVector v;
            cplx unconverted;
            if (side == ApertureSide::TA)
            {
                v = forward_path(incoming) * t;
                unconverted = grid_transmit(incoming, GridOrientation::WiresAlongY).ex;
            }
            else
            {
                const JonesVector down = backward_reflection(incoming, opt.reflection_phase_deg);
                v = fta_transmission(down) * t;
                unconverted = grid_transmit(down, GridOrientation::WiresAlongX).ey;
            }
            // Leakage keeps the incident phase: the unconverted wave never sees
            // the converter's compensation phase.
            if (opt.cell_leakage != 0.0)
                v.ex += opt.cell_leakage * unconverted;
            out.field[n] = v;
        }
    return out;
}

/// Sampled far field over one hemisphere. Theta is measured from the
/// hemisphere's own axis (+z or -z); samples are stored theta-major.
struct PatternGrid
{
    double theta_step = 0.5;
    double phi_step = 2.0;
    int n_theta = 0;
    int n_phi = 0;
    std::vector<cplx> e_co;
    std::vector<cplx> e_cross;
    int hemisphere = +1;
    double frequency_ghz = 0.0;

    double theta(int t) const { return t * theta_step; }
    double phi(int p) const { return p * phi_step; }
    std::size_t index(int t, int p) const { return static_cast<std::size_t>(t) * n_phi + p; }
    double power(std::size_t n) const { return std::norm(e_co[n]) + std::norm(e_cross[n]); }
};

namespace detail
{
inline int steps_in(double range, double step, const char *what)
{
    if (!(step > 0.0))
        throw std::invalid_argument(std::string(what) + " step must be positive");
    const double n = range / step;
    const double r = std::round(n);
    if (std::abs(n - r) > 1e-9 * std::max(1.0, n) || r < 1.0)
        throw std::invalid_argument(std::string(what) + " step must divide the sampled range evenly");
    return static_cast<int>(r);
}
} // namespace detail

/// Discrete superposition
///   E(theta, phi) = cos(theta) * sum_ij A_ij exp(+j k0 (x_i u + y_j v)),
///   u = sin(theta) cos(phi), v = sin(theta) sin(phi),
/// for the co (y) and cross (x) components. The exponential factorizes into
/// per-column and per-row phasors; sums run row-major per direction, so the
/// result is independent of the worker count.
inline PatternGrid radiate(const ApertureField &field, double theta_step, double phi_step, double k0,
                           unsigned threads = 0)
{
    const ApertureSpec &ap = field.aperture;
    if (field.field.empty() || field.field.size() != ap.size())
        throw std::invalid_argument("radiate: empty or malformed aperture field");
    PatternGrid g;
    g.theta_step = theta_step;
    g.phi_step = phi_step;
    g.n_theta = detail::steps_in(90.0, theta_step, "theta") + 1;
    g.n_phi = detail::steps_in(360.0, phi_step, "phi");
    if (g.n_phi % 2 != 0)
        throw std::invalid_argument("radiate: phi step must divide 180 degrees");
    g.hemisphere = ap.normal_sign;
    g.frequency_ghz = k0 * speed_of_light_mm_per_ns / (2.0 * pi);
    g.e_co.assign(static_cast<std::size_t>(g.n_theta) * g.n_phi, cplx{});
    g.e_cross.assign(g.e_co.size(), cplx{});

    std::vector<double> xs(ap.nx), ys(ap.ny);
    for (int i = 0; i < ap.nx; ++i)
        xs[i] = ap.x_at(i);
    for (int j = 0; j < ap.ny; ++j)
        ys[j] = ap.y_at(j);

    parallel_for(
        static_cast<std::size_t>(g.n_theta),
        [&](std::size_t t) {
            const double th = deg2rad(g.theta(static_cast<int>(t)));
            const double st = std::sin(th);
            const double ct = std::cos(th);
            std::vector<cplx> px(ap.nx), py(ap.ny);
            for (int p = 0; p < g.n_phi; ++p)
            {
                const double ph = deg2rad(g.phi(p));
                const double u = st * std::cos(ph);
                const double v = st * std::sin(ph);
                for (int i = 0; i < ap.nx; ++i)
                    px[i] = std::polar(1.0, k0 * xs[i] * u);
                for (int j = 0; j < ap.ny; ++j)
                    py[j] = std::polar(1.0, k0 * ys[j] * v);
                cplx co{}, cross{};
                for (int j = 0; j < ap.ny; ++j)
                {
                    cplx row_co{}, row_cross{};
                    const JonesVector *row = &field.field[ap.index(0, j)];
                    for (int i = 0; i < ap.nx; ++i)
                    {
                        row_co += row[i].ey * px[i];
                        row_cross += row[i].ex * px[i];
                    }
                    co += row_co * py[j];
                    cross += row_cross * py[j];
                }
                const std::size_t n = g.index(static_cast<int>(t), p);
                g.e_co[n] = co * ct;
                g.e_cross[n] = cross * ct;
            }
        },
        threads);
    return g;
}

/// Directivity over the sampled hemisphere.
struct DirectivityResult
{
    std::vector<double> linear; // 4 pi U / P per sample, both polarizations
    double radiated_power = 0.0; // hemisphere integral of U
    double peak_linear = 0.0;
    int peak_t = 0;
    int peak_p = 0;

    double peak_dbi() const { return 10.0 * std::log10(peak_linear); }
};

/// Hemisphere integral of |E_co|^2 + |E_cross|^2: trapezoid rule in theta
/// with the sin(theta) weight, rectangle (periodic) rule in phi.
inline double hemisphere_power(const PatternGrid &g)
{
    const double dth = deg2rad(g.theta_step);
    const double dph = deg2rad(g.phi_step);
    double total = 0.0;
    for (int t = 0; t < g.n_theta; ++t)
    {
        double ring = 0.0;
        for (int p = 0; p < g.n_phi; ++p)
            ring += g.power(g.index(t, p));
        const double w = (t == 0 || t == g.n_theta - 1) ? 0.5 : 1.0;
        total += w * std::sin(deg2rad(g.theta(t))) * ring;
    }
    return total * dth * dph;
}

inline DirectivityResult directivity(const PatternGrid &g)
{
    DirectivityResult r;
    r.radiated_power = hemisphere_power(g);
    if (!(r.radiated_power > 0.0))
        throw std::invalid_argument("directivity: pattern carries no power");
    r.linear.resize(g.e_co.size());
    for (int t = 0; t < g.n_theta; ++t)
        for (int p = 0; p < g.n_phi; ++p)
        {
            const std::size_t n = g.index(t, p);
            r.linear[n] = 4.0 * pi * g.power(n) / r.radiated_power;
            if (r.linear[n] > r.peak_linear)
            {
                r.peak_linear = r.linear[n];
                r.peak_t = t;
                r.peak_p = p;
            }
        }
    return r;
}

/// Maximum directivity of a uniformly illuminated aperture, 4 pi A / lambda^2.
inline double uniform_aperture_directivity(double area_mm2, double freq_ghz)
{
    const double lambda = wavelength_mm(freq_ghz);
    return 4.0 * pi * area_mm2 / (lambda * lambda);
}

struct BeamMetrics
{
    double peak_theta = 0.0; // degrees from the hemisphere axis
    double peak_phi = 0.0;
    double signed_theta = 0.0; // peak theta signed by the side of the phi = 0 plane
    double peak_gain_dbi = 0.0;
    double directivity_dbi = 0.0;
    double sll_db = 0.0;
    double beamwidth_3db_deg = 0.0;
    double crosspol_peak_db = 0.0;    // max cross over max co
    double crosspol_at_peak_db = 0.0; // cross at the co-pol peak direction
    double aperture_efficiency = 0.0;
};

inline double to_db_power(double ratio)
{
    return ratio > 0.0 ? 10.0 * std::log10(ratio) : -std::numeric_limits<double>::infinity();
}

namespace detail
{
// Co-pol power in dB relative to `ref` along a line through the pole in the
// plane containing azimuth index p: negative positions come from p + 180.
inline std::vector<double> plane_cut_db(const PatternGrid &g, int p, double ref)
{
    const int opp = (p + g.n_phi / 2) % g.n_phi;
    std::vector<double> cut;
    cut.reserve(2 * g.n_theta - 1);
    for (int t = g.n_theta - 1; t >= 1; --t)
        cut.push_back(to_db_power(std::norm(g.e_co[g.index(t, opp)]) / ref));
    for (int t = 0; t < g.n_theta; ++t)
        cut.push_back(to_db_power(std::norm(g.e_co[g.index(t, p)]) / ref));
    return cut;
}

// Highest level outside the main lobe of a cut. The main lobe extends from
// the peak on each side to the first local minimum below -3 dB.
inline double sidelobe_of_cut(const std::vector<double> &cut, std::size_t peak, bool periodic)
{
    const std::size_t n = cut.size();
    auto next = [&](std::size_t k, int dir) -> std::optional<std::size_t> {
        if (periodic)
            return (k + n + dir) % n;
        if (dir < 0)
            return k == 0 ? std::nullopt : std::optional<std::size_t>(k - 1);
        return k + 1 < n ? std::optional<std::size_t>(k + 1) : std::nullopt;
    };
    std::vector<char> in_main(n, 0);
    in_main[peak] = 1;
    for (int dir : {-1, +1})
    {
        std::size_t k = peak;
        for (std::size_t steps = 0; steps < n; ++steps)
        {
            const auto nk = next(k, dir);
            if (!nk)
                break;
            if (cut[k] < -3.0 && cut[*nk] > cut[k])
                break;
            k = *nk;
            in_main[k] = 1;
        }
    }
    double sll = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k)
        if (!in_main[k])
            sll = std::max(sll, cut[k]);
    return sll;
}

// Full -3 dB width around `peak` with linear interpolation in dB.
inline double beamwidth_of_cut(const std::vector<double> &cut, std::size_t peak, double step)
{
    auto edge = [&](int dir) {
        std::size_t k = peak;
        while (true)
        {
            const long nk = static_cast<long>(k) + dir;
            if (nk < 0 || nk >= static_cast<long>(cut.size()))
                return static_cast<double>(k);
            if (cut[nk] <= -3.0)
            {
                const double a = cut[k], b = cut[nk];
                const double t = (a - (-3.0)) / (a - b);
                return static_cast<double>(k) + dir * t;
            }
            k = static_cast<std::size_t>(nk);
        }
    };
    return (edge(+1) - edge(-1)) * step;
}
} // namespace detail

/// Beam metrics of one hemisphere pattern. reference_area_mm2 sets the
/// aperture-efficiency denominator 4 pi A / lambda^2; gain_offset_db is a
/// loss budget added to directivity.
inline BeamMetrics extract_metrics(const PatternGrid &g, double reference_area_mm2, double gain_offset_db = 0.0)
{
    const DirectivityResult dir = directivity(g);

    double co_peak = 0.0, cross_peak = 0.0;
    int pt = 0, pp = 0;
    for (int t = 0; t < g.n_theta; ++t)
        for (int p = 0; p < g.n_phi; ++p)
        {
            const std::size_t n = g.index(t, p);
            const double c = std::norm(g.e_co[n]);
            if (c > co_peak)
            {
                co_peak = c;
                pt = t;
                pp = p;
            }
            cross_peak = std::max(cross_peak, std::norm(g.e_cross[n]));
        }
    if (!(co_peak > 0.0))
        throw std::invalid_argument("extract_metrics: pattern has no co-polarized main lobe");

    BeamMetrics m;
    m.peak_theta = g.theta(pt);
    m.peak_phi = pt == 0 ? 0.0 : g.phi(pp);
    m.signed_theta = std::cos(deg2rad(m.peak_phi)) < -1e-12 ? -m.peak_theta : m.peak_theta;
    const std::size_t pk = g.index(pt, pp);
    const double d_peak = dir.linear[pk];
    m.directivity_dbi = 10.0 * std::log10(d_peak);
    m.peak_gain_dbi = m.directivity_dbi + gain_offset_db;
    m.crosspol_peak_db = to_db_power(cross_peak / co_peak);
    m.crosspol_at_peak_db = to_db_power(std::norm(g.e_cross[pk]) / co_peak);
    m.aperture_efficiency = d_peak / uniform_aperture_directivity(reference_area_mm2, g.frequency_ghz);

    // Scan-plane cut through the peak.
    const int plane_p = pt == 0 ? 0 : pp;
    const auto plane = detail::plane_cut_db(g, plane_p, co_peak);
    const std::size_t plane_peak = static_cast<std::size_t>(g.n_theta - 1 + pt);
    double sll = detail::sidelobe_of_cut(plane, plane_peak, false);

    // Orthogonal cut: the perpendicular principal plane at boresight, the
    // conical cut theta = theta_peak otherwise.
    if (pt == 0)
    {
        const auto ortho = detail::plane_cut_db(g, (plane_p + g.n_phi / 4) % g.n_phi, co_peak);
        if (g.n_phi % 4 == 0)
            sll = std::max(sll, detail::sidelobe_of_cut(ortho, static_cast<std::size_t>(g.n_theta - 1), false));
    }
    else
    {
        std::vector<double> cone(g.n_phi);
        for (int p = 0; p < g.n_phi; ++p)
            cone[p] = to_db_power(std::norm(g.e_co[g.index(pt, p)]) / co_peak);
        sll = std::max(sll, detail::sidelobe_of_cut(cone, static_cast<std::size_t>(pp), true));
    }
    m.sll_db = sll;

    // 3 dB width in the phi = 0 plane around the peak.
    const auto cut0 = detail::plane_cut_db(g, 0, co_peak);
    const std::size_t k0 = static_cast<std::size_t>(g.n_theta - 1) +
                           (m.signed_theta >= 0.0 ? static_cast<std::size_t>(pt) : 0) -
                           (m.signed_theta < 0.0 ? static_cast<std::size_t>(pt) : 0);
    m.beamwidth_3db_deg = detail::beamwidth_of_cut(cut0, k0, g.theta_step);
    return m;
}

/// Pattern CSV, `theta_deg,phi_deg,e_co_db,e_cross_db`, normalized to the
/// co-pol peak. Levels below -300 dB (including exact zeros) print as -300.
/// With `phi_cuts` set, only the listed azimuths are written.
inline void write_pattern_csv(std::ostream &os, const PatternGrid &g, const std::vector<double> &phi_cuts = {})
{
    double co_peak = 0.0;
    for (const auto &c : g.e_co)
        co_peak = std::max(co_peak, std::norm(c));
    auto level = [&](cplx v) {
        const double db = co_peak > 0.0 ? to_db_power(std::norm(v) / co_peak) : -300.0;
        return std::max(db, -300.0);
    };
    os << "theta_deg,phi_deg,e_co_db,e_cross_db\n";
    char buf[128];
    for (int t = 0; t < g.n_theta; ++t)
        for (int p = 0; p < g.n_phi; ++p)
        {
            if (!phi_cuts.empty())
            {
                const double ph = g.phi(p);
                if (std::none_of(phi_cuts.begin(), phi_cuts.end(),
                                 [&](double c) { return std::abs(wrap_deg(c) - ph) < 1e-9; }))
                    continue;
            }
            const std::size_t n = g.index(t, p);
            std::snprintf(buf, sizeof buf, "%.4f,%.4f,%.6f,%.6f\n", g.theta(t), g.phi(p), level(g.e_co[n]),
                          level(g.e_cross[n]));
            os << buf;
        }
}

} // namespace hta
