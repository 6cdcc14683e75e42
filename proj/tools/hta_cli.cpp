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

#include "hta/hta.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace
{

struct GlobalOptions
{
    std::string config;
    std::string out;
    std::optional<double> theta_step;
    std::optional<double> phi_step;
    bool blockage = false;
    std::optional<double> gain_offset_db;
};

hta::RunConfig load(const GlobalOptions &g)
{
    hta::RunConfig rc = g.config.empty() ? hta::RunConfig{} : hta::load_run_config(g.config);
    if (!g.out.empty())
        rc.output_dir = g.out;
    if (g.theta_step)
        rc.engine.theta_step = *g.theta_step;
    if (g.phi_step)
        rc.engine.phi_step = *g.phi_step;
    if (g.blockage)
        rc.engine.illumination.blockage.enabled = true;
    if (g.gain_offset_db)
        rc.engine.gain_offset_db = *g.gain_offset_db;
    return rc;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"hta - bidirectional multibeam transmitarray design and analysis"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--config", g.config, "Run configuration file (key = value)");
    app.add_option("--out", g.out, "Output directory");
    app.add_option("--theta-step", g.theta_step, "Pattern theta step in degrees");
    app.add_option("--phi-step", g.phi_step, "Pattern phi step in degrees");
    app.add_flag("--blockage", g.blockage, "Mask FTA cells shadowed by the feed board");
    app.add_option("--gain-offset-db", g.gain_offset_db, "Loss budget added to directivity");

    auto *validate = app.add_subcommand("validate", "Run the geometry, phase and polarization invariants");
    auto *synthesize = app.add_subcommand("synthesize", "Write TA/FTA phase maps and cell maps");
    auto *simulate = app.add_subcommand("simulate", "Simulate one feed in one polarization state");
    std::string state_s, feed_id;
    double freq = 9.75;
    simulate->add_option("--state", state_s, "x, y or slant45")->required();
    simulate->add_option("--feed", feed_id, "Feed id, e.g. A4")->required();
    simulate->add_option("--freq", freq, "Frequency in GHz");
    auto *sweep = app.add_subcommand("sweep", "Simulate every legal state/feed/frequency beam");
    auto *report = app.add_subcommand("report", "Compare a beam table with geometric and measured angles");
    std::string table;
    report->add_option("--table", table, "Beam table (default: <out>/beam_table.csv)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : hta::exit_usage;
    }

    try
    {
        const hta::RunConfig rc = load(g);
        if (*validate)
            return hta::cmd_validate(rc, std::cout);
        if (*synthesize)
            return hta::cmd_synthesize(rc, rc.output_dir, std::cout);
        if (*simulate)
        {
            hta::PolarizationState state;
            try
            {
                state = hta::parse_polarization(state_s);
            }
            catch (const std::invalid_argument &e)
            {
                std::cerr << "error: " << e.what() << '\n';
                return hta::exit_usage;
            }
            return hta::cmd_simulate(rc, state, feed_id, freq, rc.output_dir, std::cout);
        }
        if (*sweep)
            return hta::cmd_sweep(rc, rc.output_dir, std::cout);
        if (*report)
            return hta::cmd_report(rc, table.empty() ? rc.output_dir / "beam_table.csv" : std::filesystem::path(table), std::cout);
    }
    catch (const hta::IoError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return hta::exit_usage;
    }
    catch (const hta::ConfigError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return hta::exit_usage;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return hta::exit_domain;
    }
    return hta::exit_usage;
}
