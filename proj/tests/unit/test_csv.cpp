// SPDX-License-Identifier: Apache-2.0
//
// embms-linksim: link-level simulator for LTE point-to-multipoint transmission
// Copyright (C) 2026 The embms-linksim authors
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

#include "doctest.h"
#include "test_util.hpp"

#include "embms/csv_output.hpp"

#include <locale>
#include <sstream>
#include <sys/wait.h>

using namespace embms;
using namespace embms::harness;

namespace
{
    std::vector<std::string> split(const std::string &line)
    {
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string x;
        while (std::getline(ss, x, ','))
            f.push_back(x);
        if (!line.empty() && line.back() == ',')
            f.emplace_back();
        return f;
    }

    std::vector<std::string> lines(const std::string &text)
    {
        std::vector<std::string> out;
        std::istringstream in(text);
        std::string l;
        while (std::getline(in, l))
            out.push_back(l);
        return out;
    }

    struct CommaDecimal : std::numpunct<char>
    {
        char do_decimal_point() const override { return ','; }
    };

    struct CliResult
    {
        int code;
        std::string out;
    };

    CliResult run_cli(const std::string &args)
    {
        const auto dir = std::filesystem::temp_directory_path() / "embms_tests";
        std::filesystem::create_directories(dir);
        const auto out = dir / "cli_stdout.txt";
        const std::string cmd = std::string("\"") + EMBMS_CLI_PATH + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
        const int status = std::system(cmd.c_str());
        std::ifstream in(out);
        std::stringstream ss;
        ss << in.rdbuf();
        return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
    }

    SeCurve small_curve()
    {
        SeCurve c;
        const auto &t = testutil::tables().mcs_table(Mode::scptm, 50);
        for (int m : {9, 0})
        {
            SePoint p;
            p.mcs = find_mcs(t, m);
            p.se = bicm_se(p.mcs.modulation_order, p.mcs.code_rate, 1);
            p.threshold.mcs_index = m;
            if (m == 0)
            {
                p.threshold.cnr_db = -6.25;
                p.threshold.evaluated = {make_point(0, -6.0, 100, 0), make_point(0, -7.0, 100, 100),
                                         make_point(0, -6.25, 100, 0), make_point(0, -6.5, 200, 3)};
            }
            else
                p.threshold.evaluated = {make_point(9, -10.0, 10, 10)};
            c.points.push_back(p);
        }
        c.capacity = {{-10.0, shannon_capacity(-10.0)}};
        return c;
    }
}

TEST_SUITE("csv")
{
    TEST_CASE("fixed-point formatting")
    {
        CHECK(format_fixed(0.8867, 3) == "0.887");
        CHECK(format_fixed(-6.25, 2) == "-6.25");
        CHECK(format_fixed(-0.001, 2) == "0.00");
        CHECK(format_fixed(12.0, 0) == "12");
        const auto old = std::locale::global(std::locale(std::locale::classic(), new CommaDecimal));
        CHECK(format_fixed(1.5, 2) == "1.50");
        std::ostringstream out;
        out.imbue(std::locale());
        SimConfig cfg;
        write_curve_csv(out, cfg, small_curve());
        std::locale::global(old);
        for (const auto &l : lines(out.str()))
            CHECK(split(l).size() == 13);
    }

    TEST_CASE("curve schema and row order")
    {
        SimConfig cfg;
        std::ostringstream out;
        write_curve_csv(out, cfg, small_curve());
        const auto rows = lines(out.str());
        REQUIRE(rows.size() == 1 + 5 + 2 + 1);
        CHECK(rows[0] == csv_header);
        CHECK(rows[1] == "scptm,awgn,1,1,0,2,0.100,,,,,-6.25,0.2006");
        CHECK(rows[2] == "scptm,awgn,1,1,0,2,0.100,-7.00,100,100,1.000000,,");
        CHECK(rows[3].find(",-6.50,200,3,0.015000,,") != std::string::npos);
        CHECK(rows[5].find(",-6.00,") != std::string::npos);
        // Unachieved threshold leaves the field empty.
        CHECK(split(rows[6])[4] == "9");
        CHECK(split(rows[6])[11].empty());
        CHECK(split(rows[8])[4].empty());
        CHECK(split(rows[8])[7] == "-10.00");
        CHECK(split(rows[8])[12] == "0.1375");
        for (const auto &r : rows)
            CHECK(split(r).size() == 13);
    }

    TEST_CASE("point and analytic tables")
    {
        SimConfig cfg;
        cfg.channel = channel::ChannelKind::rayleigh;
        cfg.n_tx = 2;
        cfg.n_rx = 2;
        const auto &t = testutil::tables().mcs_table(Mode::scptm, 50);
        std::ostringstream p;
        write_point_csv(p, cfg, find_mcs(t, 27), make_point(27, 25.0, 40, 1));
        const auto pr = lines(p.str());
        REQUIRE(pr.size() == 2);
        CHECK(pr[1] == "scptm,rayleigh,2,2,27,8,0.887,25.00,40,1,0.025000,,");

        std::ostringstream s;
        write_se_table_csv(s, Mode::scptm, 4, t);
        const auto sr = lines(s.str());
        REQUIRE(sr.size() == t.size() + 1);
        CHECK(sr.back() == "scptm,,4,,27,8,0.887,,,,,,28.3687");
    }
}

TEST_SUITE("cli")
{
    TEST_CASE("se-table peak values")
    {
        auto r = run_cli("se-table --mode scptm --n-rb 50");
        CHECK(r.code == 0);
        CHECK(r.out.find("peak_se 7.0922\n") != std::string::npos);
        r = run_cli("se-table --mode mbsfn --n-rb 50");
        CHECK(r.out.find("peak_se 7.0613\n") != std::string::npos);
    }

    TEST_CASE("exit codes")
    {
        CHECK(run_cli("se-table --mode foo").code == 1);
        CHECK(run_cli("se-table").code == 1);
        CHECK(run_cli("se-table --mode scptm --n-rb 0").code == 1);
        CHECK(run_cli("bler --mode scptm --cnr-db 0").code == 1);
        CHECK(run_cli("--bogus").code == 1);
        CHECK(run_cli("--help").code == 0);
        CHECK(run_cli("se-table --mode scptm --data-dir /nonexistent/embms").code == 2);
        const auto dir = std::filesystem::temp_directory_path() / "embms_tests" / "bad_data";
        std::filesystem::create_directories(dir);
        for (const char *f : {"qpp.csv", "constellations.csv"})
            std::filesystem::copy_file(testutil::tables().dir / f, dir / f,
                                       std::filesystem::copy_options::overwrite_existing);
        std::ofstream(dir / "mcs_tbs.csv") << "mode,mcs_index\n";
        CHECK(run_cli("se-table --mode scptm --data-dir \"" + dir.string() + "\"").code == 2);
    }

    TEST_CASE("config file with flag override")
    {
        const auto cfg = testutil::temp_file("se.ini", "# analytic table\nmode = scptm\nn-rb = 50\nstreams = 4\n");
        auto r = run_cli("se-table --config \"" + cfg.string() + "\"");
        CHECK(r.code == 0);
        CHECK(r.out.find("peak_se 28.3687\n") != std::string::npos);
        r = run_cli("se-table --config \"" + cfg.string() + "\" --streams 1");
        CHECK(r.out.find("peak_se 7.0922\n") != std::string::npos);
    }

    TEST_CASE("bler and sweep output")
    {
        auto r = run_cli("bler --mode scptm --mcs 0 --cnr-db 40 --max-blocks 3");
        CHECK(r.code == 0);
        auto rows = lines(r.out);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0] == csv_header);
        CHECK(rows[1] == "scptm,awgn,1,1,0,2,0.100,40.00,3,0,0.000000,,");

        const auto out = std::filesystem::temp_directory_path() / "embms_tests" / "sweep.csv";
        r = run_cli("sweep --mode mbsfn --channel rayleigh --tx 1 --rx 2 --mcs-list 0,3 --cnr-start 40 --cnr-stop 40 "
                    "--max-blocks 2 --out \"" + out.string() + "\"");
        CHECK(r.code == 0);
        std::ifstream in(out);
        std::stringstream ss;
        ss << in.rdbuf();
        rows = lines(ss.str());
        REQUIRE(rows.size() == 5);
        CHECK(rows[1].rfind("mbsfn,rayleigh,1,2,0,2,", 0) == 0);
        CHECK(split(rows[1])[11] == "40.00");
        CHECK(split(rows[3])[4] == "3");
    }

    TEST_CASE("layout dump")
    {
        const auto r = run_cli("layout --mode mbsfn --n-rb 1");
        CHECK(r.code == 0);
        CHECK(lines(r.out).size() == 144);
    }
}
