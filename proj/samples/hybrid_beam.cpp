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

// Prints the forward and backward beams of one hybrid-state feed.

#include "hta/hta.hpp"

#include <cstdio>
#include <string>

int main(int argc, char **argv)
{
    const std::string feed = argc > 1 ? argv[1] : "A6";
    const double freq = argc > 2 ? std::stod(argv[2]) : 9.75;

    hta::EngineConfig cfg;
    cfg.theta_step = 1.0;
    cfg.phi_step = 4.0;
    const hta::SystemLayout layout = hta::build_layout(hta::LayoutConfig{});
    const hta::Design design = hta::synthesize_design(layout, cfg);
    const auto r = hta::run_scenario(layout, design, hta::PolarizationState::Slant45, feed, cfg, freq);

    for (const auto *side : {&r.forward, &r.backward})
    {
        const auto &m = (*side)->metrics;
        std::printf("%-8s theta %5.1f  phi %5.1f  D %5.2f dBi  SLL %6.2f dB  HPBW %4.1f deg\n",
                    (*side)->pattern.hemisphere > 0 ? "forward" : "backward", m.peak_theta, m.peak_phi,
                    m.directivity_dbi, m.sll_db, m.beamwidth_3db_deg);
    }
}
