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

// Writes the TA compensation map for a custom focal length to stdout.

#include "hta/hta.hpp"

#include <iostream>
#include <string>

int main(int argc, char **argv)
{
    hta::LayoutConfig lc;
    lc.f_mm = argc > 1 ? std::stod(argv[1]) : 171.0;
    lc.F_mm.reset();
    lc.h_mm = 42.0;

    const hta::SystemLayout layout = hta::build_layout(lc);
    const hta::PhaseMap map = hta::synthesize_ta(layout, hta::wavenumber(9.75));
    const hta::CellMap cells = hta::quantize(map, hta::default_uc1_curve());
    hta::write_cell_csv(std::cout, map, cells);
}
