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

#include "hta/config.hpp"

#include <filesystem>
#include <fstream>

using Catch::Approx;
using namespace hta;
namespace fs = std::filesystem;

TEST_CASE("the shipped default config loads")
{
    const RunConfig rc = load_run_config(fs::path(HTA_SOURCE_DIR) / "configs" / "default.cfg");
    const SystemLayout L = build_layout(rc.layout);
    CHECK(L.f == 171.0);
    CHECK(L.F == 384.0);
    CHECK(L.h == Approx(42.0));
    CHECK(L.feeds.size() == 7);
    CHECK(L.feed("A1").position.x == -160.0);
    CHECK(rc.frequencies == std::vector<double>{9.0, 9.75, 10.5});
    CHECK(rc.engine.theta_step == 0.5);
    CHECK(rc.engine.phi_step == 2.0);
    CHECK(rc.default_state == PolarizationState::X);
    CHECK(fs::exists(rc.measured_targets));
    CHECK(rc.output_dir.filename() == "out");
}

TEST_CASE("key-value grammar")
{
    const RunConfig rc = config_from_string("# comment\n"
                                            "f_mm = 150   \n"
                                            "\n"
                                            "h_mm=10\n"
                                            "F_mm = 310\n"
                                            "feed.state = slant45\n"
                                            "feed.active_ids = A2, A4 ,A6\n"
                                            "blockage = true\n"
                                            "cell_leakage = 0.02\n"
                                            "frequencies = 10\n");
    CHECK(rc.layout.f_mm == 150.0);
    CHECK(*rc.layout.h_mm == 10.0);
    CHECK(rc.default_state == PolarizationState::Slant45);
    CHECK(rc.engine.active_feed_ids == std::vector<std::string>{"A2", "A4", "A6"});
    CHECK(rc.engine.illumination.blockage.enabled);
    CHECK(rc.engine.illumination.cell_leakage == 0.02);
    CHECK(rc.frequencies == std::vector<double>{10.0});
    CHECK(build_layout(rc.layout).F == 310.0);
}

TEST_CASE("custom feed line")
{
    const RunConfig rc = config_from_string("feeds[0].id = L\nfeeds[0].x_mm = -30\n"
                                            "feeds[1].id = R\nfeeds[1].x_mm = 30\nfeeds[1].y_mm = 2\n");
    const SystemLayout L = build_layout(rc.layout);
    REQUIRE(L.feeds.size() == 2);
    CHECK(L.feed("R").position == Point3{30, 2, 0});
    CHECK_THROWS_AS(config_from_string("feeds[0].id = L\n"), ConfigError);
}

TEST_CASE("config errors")
{
    CHECK_THROWS_AS(config_from_string("bogus = 1\n"), ConfigError);
    CHECK_THROWS_AS(config_from_string("f_mm = 1\nf_mm = 2\n"), ConfigError);
    CHECK_THROWS_AS(config_from_string("f_mm = abc\n"), ConfigError);
    CHECK_THROWS_AS(config_from_string("no equals sign\n"), ConfigError);
    CHECK_THROWS_AS(config_from_string("blockage = maybe\n"), ConfigError);
    CHECK_THROWS_AS(config_from_string("feed.state = circular\n"), ConfigError);
    CHECK_THROWS_AS(config_from_string("frequencies = 9, -1\n"), ConfigError);
    CHECK_THROWS_AS(config_from_string("feed.q = 0\n"), ConfigError);
    CHECK_THROWS_AS(load_run_config("/nonexistent/hta.cfg"), IoError);
}

TEST_CASE("inconsistent focal lengths are caught when the layout is built")
{
    const RunConfig rc = config_from_string("f_mm = 171\nh_mm = 42\nF_mm = 400\n");
    CHECK_THROWS_AS(build_layout(rc.layout), std::invalid_argument);
}

TEST_CASE("curve files resolve relative to the config directory")
{
    const fs::path dir = fs::temp_directory_path() / "hta_config_test";
    fs::create_directories(dir);
    fs::copy_file(fs::path(HTA_SOURCE_DIR) / "data" / "uc1_digitized_example.csv", dir / "uc1.csv",
                  fs::copy_options::overwrite_existing);
    {
        std::ofstream cfg(dir / "run.cfg");
        cfg << "uc1.curve = uc1.csv\noutput_dir = results\n";
    }
    const RunConfig rc = load_run_config(dir / "run.cfg");
    CHECK(rc.uc1_source == "uc1.csv");
    CHECK(rc.output_dir == dir / "results");
    const PhaseCurve &c = rc.engine.uc1.at(rc.engine.design_freq_ghz);
    CHECK(c.samples().size() >= 2);

    {
        std::ofstream cfg(dir / "missing.cfg");
        cfg << "uc2.curve = nowhere.csv\n";
    }
    try
    {
        load_run_config(dir / "missing.cfg");
        FAIL("expected IoError");
    }
    catch (const IoError &e)
    {
        CHECK(std::string(e.what()).find("nowhere.csv") != std::string::npos);
    }
    fs::remove_all(dir);
}
