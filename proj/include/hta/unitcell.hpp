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

// Parametric unit-cell models: polarization conversion rate, monotone
// phase-versus-geometry curves spanning 180 degrees, the 90 degree rotation
// of the conversion layer that adds another 180 degrees, and the inverse
// lookup from a compensation phase to a cell geometry.
//
// The default curves are piecewise linear through synthetic knots. Only their
// endpoints, span, monotonicity and magnitude bounds carry meaning; digitized
// curves can be loaded from CSV instead.

#pragma once

#include "polarization.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hta
{

/// Raised for unreadable or missing input files; carries the offending path.
struct IoError : std::runtime_error
{
    std::string path;
    IoError(std::string p, const std::string &what) : std::runtime_error(what), path(std::move(p)) {}
};

/// Wraps an angle in degrees to [0, 360).
inline double wrap_deg(double deg)
{
    double w = std::fmod(deg, 360.0);
    if (w < 0.0)
        w += 360.0;
    if (w >= 360.0) // fmod of a tiny negative value
        w -= 360.0;
    return w;
}

/// Angular distance between two phases on the circle, in [0, 180].
inline double circular_distance_deg(double a, double b)
{
    const double d = wrap_deg(a - b);
    return std::min(d, 360.0 - d);
}

struct ScatterCoeffs
{
    cplx t_co{0.0, 0.0}; // converted transmission (T_yx for UC1, T_yy for UC2)
    cplx t_xx{0.0, 0.0}; // unconverted transmission
    cplx r_yx{0.0, 0.0}; // converted reflection
    cplx r_xx{0.0, 0.0}; // co-polarized reflection

    double total_power() const { return std::norm(t_co) + std::norm(t_xx) + std::norm(r_yx) + std::norm(r_xx); }
    bool is_passive() const { return total_power() <= 1.0 + 1e-12; }
};

/// Polarization conversion rate |t_co|^2 / (sum of all four powers).
inline double pcr(const ScatterCoeffs &s)
{
    const double denom = s.total_power();
    if (!(denom > 0.0))
        throw std::invalid_argument("pcr: all scattering coefficients are zero");
    return std::norm(s.t_co) / denom;
}

/// Band model of the TA cell over 7-13 GHz. Unconverted leakage is smallest
/// near 10 GHz and grows quadratically toward the band edges; the cell is
/// lossless, so t_co takes the remaining power.
inline ScatterCoeffs uc1_band_scatter(double freq_ghz)
{
    if (!(freq_ghz >= 7.0 && freq_ghz <= 13.0))
        throw std::invalid_argument("uc1_band_scatter: frequency outside the 7-13 GHz model band");
    const double u = (freq_ghz - 10.0) / 3.0;
    ScatterCoeffs s;
    s.t_xx = 0.03;
    s.r_yx = 0.03;
    s.r_xx = 0.05 + 0.21 * u * u;
    const double rest = std::norm(s.t_xx) + std::norm(s.r_yx) + std::norm(s.r_xx);
    s.t_co = std::sqrt(1.0 - rest);
    return s;
}

struct CurveSample
{
    double param_mm = 0.0;
    double phase_deg = 0.0; // unwrapped
    double mag_db = 0.0;
};

struct UnitCellGeometry
{
    double parameter = 0.0; // mm
    bool rotated = false;   // conversion layer turned by 90 degrees
    friend bool operator==(const UnitCellGeometry &, const UnitCellGeometry &) = default;
};

class PhaseCurve
{
  public:
    static constexpr double min_magnitude_db = -20.0;

    PhaseCurve() = default;

    // Validates on construction; see validate().
    PhaseCurve(std::string param_name, double freq_ghz, std::vector<CurveSample> samples,
               double oblique_slope_deg_per_deg = 0.0)
        : param_name_(std::move(param_name)), freq_ghz_(freq_ghz), samples_(std::move(samples)),
          oblique_slope_(oblique_slope_deg_per_deg)
    {
        validate();
    }

    const std::string &param_name() const { return param_name_; }
    double frequency_ghz() const { return freq_ghz_; }
    const std::vector<CurveSample> &samples() const { return samples_; }
    double param_min() const { return samples_.front().param_mm; }
    double param_max() const { return samples_.back().param_mm; }
    double span_deg() const { return std::abs(samples_.back().phase_deg - samples_.front().phase_deg); }
    double oblique_slope() const { return oblique_slope_; }

    /// Same curve with every phase shifted by a constant.
    PhaseCurve shifted(double offset_deg, double freq_ghz) const
    {
        auto s = samples_;
        for (auto &x : s)
            x.phase_deg += offset_deg;
        return PhaseCurve(param_name_, freq_ghz, std::move(s), oblique_slope_);
    }

    /// Unwrapped base-curve phase at a parameter (no rotation, normal incidence).
    double base_phase(double param) const { return interp(param, &CurveSample::phase_deg); }
    double base_magnitude_db(double param) const { return interp(param, &CurveSample::mag_db); }

    /// Parameter at which the base curve reaches an unwrapped phase inside its range.
    double inverse(double phase) const
    {
        const bool increasing = samples_.back().phase_deg > samples_.front().phase_deg;
        for (std::size_t k = 1; k < samples_.size(); ++k)
        {
            const auto &a = samples_[k - 1];
            const auto &b = samples_[k];
            const double lo = std::min(a.phase_deg, b.phase_deg);
            const double hi = std::max(a.phase_deg, b.phase_deg);
            if (phase >= lo && phase <= hi)
            {
                const double t = (phase - a.phase_deg) / (b.phase_deg - a.phase_deg);
                return a.param_mm + t * (b.param_mm - a.param_mm);
            }
        }
        // Outside by rounding only; clamp to the nearer endpoint.
        const double first = samples_.front().phase_deg;
        const bool below_first = increasing ? phase < first : phase > first;
        return below_first ? param_min() : param_max();
    }

  private:
    void validate() const
    {
        if (samples_.size() < 2)
            throw std::invalid_argument("phase curve needs at least two samples");
        if (!(freq_ghz_ > 0.0))
            throw std::invalid_argument("phase curve frequency must be positive");
        const double dir = samples_.back().phase_deg - samples_.front().phase_deg;
        for (std::size_t k = 0; k < samples_.size(); ++k)
        {
            const auto &s = samples_[k];
            if (!std::isfinite(s.param_mm) || !std::isfinite(s.phase_deg) || !std::isfinite(s.mag_db))
                throw std::invalid_argument("phase curve sample is not finite");
            if (s.mag_db > 1e-9 || s.mag_db < min_magnitude_db)
                throw std::invalid_argument("phase curve magnitude outside [-20, 0] dB");
            if (k == 0)
                continue;
            const auto &p = samples_[k - 1];
            if (!(s.param_mm > p.param_mm))
                throw std::invalid_argument("phase curve parameters must be strictly increasing");
            if (!((s.phase_deg - p.phase_deg) * dir > 0.0))
                throw std::invalid_argument("phase curve must be strictly monotone");
        }
        // With the 180 degree rotation branch, a 180 degree span covers the circle.
        if (span_deg() < 180.0 - 1e-9 || span_deg() >= 360.0)
            throw std::invalid_argument("phase curve span must lie in [180, 360) degrees");
    }

    double interp(double param, double CurveSample::*field) const
    {
        if (!(param >= param_min() && param <= param_max()))
            throw std::out_of_range("unit-cell parameter " + std::to_string(param) + " outside [" +
                                    std::to_string(param_min()) + ", " + std::to_string(param_max()) + "] mm");
        auto it = std::upper_bound(samples_.begin(), samples_.end(), param,
                                   [](double v, const CurveSample &s) { return v < s.param_mm; });
        if (it == samples_.end())
            return samples_.back().*field;
        const auto &b = *it;
        const auto &a = *(it - 1);
        const double t = (param - a.param_mm) / (b.param_mm - a.param_mm);
        return a.*field + t * (b.*field - a.*field);
    }

    std::string param_name_;
    double freq_ghz_ = 0.0;
    std::vector<CurveSample> samples_;
    double oblique_slope_ = 0.0;
};

/// Realized transmission phase of a cell in [0, 360). The optional
/// incidence angle feeds the linear oblique-incidence hook (zero by default).
inline double phase_of(const PhaseCurve &curve, const UnitCellGeometry &cell, double incidence_deg = 0.0)
{
    double ph = curve.base_phase(cell.parameter) + curve.oblique_slope() * incidence_deg;
    if (cell.rotated)
        ph += 180.0;
    return wrap_deg(ph);
}

inline double magnitude_of(const PhaseCurve &curve, const UnitCellGeometry &cell)
{
    return curve.base_magnitude_db(cell.parameter);
}

/// Cell that realizes a desired phase. The base curve serves the half circle
/// [p0, p0 + 180) measured along its direction from the phase p0 at
/// param_min; the rotated branch serves the other half.
inline UnitCellGeometry lookup_geometry(const PhaseCurve &curve, double desired_phase_deg)
{
    const auto &s = curve.samples();
    const double p0 = s.front().phase_deg;
    const double dir = s.back().phase_deg > p0 ? 1.0 : -1.0;
    const double delta = wrap_deg(dir * (desired_phase_deg - p0));
    if (delta < 180.0)
        return {curve.inverse(p0 + dir * delta), false};
    return {curve.inverse(p0 + dir * (delta - 180.0)), true};
}

/// Complex transmission multiplier of a cell: magnitude and realized phase.
inline cplx transmission(const PhaseCurve &curve, const UnitCellGeometry &cell, double incidence_deg = 0.0)
{
    const double mag = std::pow(10.0, magnitude_of(curve, cell) / 20.0);
    return std::polar(mag, phase_of(curve, cell, incidence_deg) * std::numbers::pi / 180.0);
}

/// TA cell (UC1) at the design frequency: L in [0.5, 4.6] mm, 0 dB.
inline PhaseCurve default_uc1_curve(double freq_ghz = 9.75)
{
    return PhaseCurve("L", freq_ghz,
                      {{0.5, 0.0, 0.0},
                       {1.0, 18.0, 0.0},
                       {1.6, 45.0, 0.0},
                       {2.2, 78.0, 0.0},
                       {2.8, 108.0, 0.0},
                       {3.4, 138.0, 0.0},
                       {4.0, 162.0, 0.0},
                       {4.6, 180.0, 0.0}});
}

/// FTA cell (UC2) at the design frequency: W in [1.5, 4.0] mm, worst case -1.1 dB.
inline PhaseCurve default_uc2_curve(double freq_ghz = 9.75)
{
    return PhaseCurve("W", freq_ghz,
                      {{1.5, 0.0, -0.4},
                       {1.9, 24.0, -0.6},
                       {2.3, 55.0, -0.9},
                       {2.7, 92.0, -1.1},
                       {3.1, 128.0, -0.8},
                       {3.5, 158.0, -0.5},
                       {4.0, 180.0, -0.3}});
}

/// Per-frequency curves of one cell type.
class CurveLibrary
{
  public:
    CurveLibrary() = default;
    explicit CurveLibrary(std::vector<PhaseCurve> curves) : curves_(std::move(curves))
    {
        if (curves_.empty())
            throw std::invalid_argument("curve library is empty");
    }

    /// Curve stored for the frequency closest to freq_ghz.
    const PhaseCurve &at(double freq_ghz) const
    {
        if (curves_.empty())
            throw std::logic_error("curve library is empty");
        const PhaseCurve *best = &curves_.front();
        for (const auto &c : curves_)
            if (std::abs(c.frequency_ghz() - freq_ghz) < std::abs(best->frequency_ghz() - freq_ghz))
                best = &c;
        return *best;
    }

    const std::vector<PhaseCurve> &curves() const { return curves_; }

    /// Parallel curves at 9.0, 9.75 and 10.5 GHz; the off-design entries are
    /// the design curve shifted by -/+ 30 degrees per 0.75 GHz.
    static CurveLibrary parallel_family(const PhaseCurve &design, double design_freq_ghz = 9.75)
    {
        std::vector<PhaseCurve> v;
        for (double f : {9.0, design_freq_ghz, 10.5})
            v.push_back(design.shifted(-40.0 * (f - design_freq_ghz), f));
        return CurveLibrary(std::move(v));
    }

  private:
    std::vector<PhaseCurve> curves_;
};

/// Reads a digitized curve. Format: header `param_mm,phase_deg,mag_db`, one
/// sample per row, strictly increasing param_mm.
inline PhaseCurve load_curve_csv(const std::string &path, const std::string &param_name, double freq_ghz)
{
    std::ifstream in(path);
    if (!in)
        throw IoError(path, "cannot open curve file: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw IoError(path, "empty curve file: " + path);
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != "param_mm,phase_deg,mag_db")
        throw IoError(path, "bad curve header in " + path + " (expected param_mm,phase_deg,mag_db)");

    std::vector<CurveSample> samples;
    int row = 1;
    while (std::getline(in, line))
    {
        ++row;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::istringstream ss(line);
        CurveSample s;
        char c1 = 0, c2 = 0;
        if (!(ss >> s.param_mm >> c1 >> s.phase_deg >> c2 >> s.mag_db) || c1 != ',' || c2 != ',')
            throw IoError(path, "malformed row " + std::to_string(row) + " in " + path);
        samples.push_back(s);
    }
    try
    {
        return PhaseCurve(param_name, freq_ghz, std::move(samples));
    }
    catch (const std::invalid_argument &e)
    {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

} // namespace hta
