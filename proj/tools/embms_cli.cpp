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

#include "embms/csv_output.hpp"
#include "embms/data_tables.hpp"
#include "embms/errors.hpp"
#include "embms/grid.hpp"
#include "embms/harness.hpp"
#include "embms/numerology.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

using namespace embms;

namespace
{
    // Config files hold flat `key = value` lines; they apply to whichever subcommand runs.
    class FlatConfig : public CLI::ConfigINI
    {
    public:
        explicit FlatConfig(const CLI::App *app) : app_(app) {}

        std::vector<CLI::ConfigItem> from_config(std::istream &input) const override
        {
            auto items = CLI::ConfigINI::from_config(input);
            const auto subs = app_->get_subcommands();
            if (subs.empty())
                return items;
            for (auto &item : items)
                if (item.parents.empty() && item.name != "config")
                    item.parents = {subs.front()->get_name()};
            return items;
        }

    private:
        const CLI::App *app_;
    };

    // The config option lives on the root app; accept it anywhere on the command line.
    std::vector<std::string> hoist_config(int argc, char **argv)
    {
        std::vector<std::string> rest, front;
        for (int i = 1; i < argc; ++i)
        {
            const std::string a = argv[i];
            if (a == "--config" && i + 1 < argc)
            {
                front = {a, argv[++i]};
            }
            else if (a.rfind("--config=", 0) == 0)
                front = {a};
            else
                rest.push_back(a);
        }
        front.insert(front.end(), rest.begin(), rest.end());
        std::reverse(front.begin(), front.end()); // CLI::App::parse consumes from the back
        return front;
    }

    struct Options
    {
        std::string data_dir;
        std::string mode;
        std::string channel = "awgn";
        std::string fading = "per-re";
        int n_rb = 50;
        int streams = 1;
        int tx = 1;
        int rx = 1;
        int mcs = -1;
        double cnr_db = 0.0;
        std::vector<int> mcs_list;
        harness::CnrGrid grid;
        double target_bler = 0.01;
        long max_blocks = 10000;
        long min_errors = 50;
        std::uint64_t seed = 1;
        int workers = 1;
        std::uint32_t scrambling_seed = 0x5A3C;
        std::string out;
    };

    void add_common(CLI::App *sub, Options &o)
    {
        sub->add_option("--data-dir", o.data_dir, "Directory with the bundled data files");
        sub->add_option("--mode", o.mode, "mbsfn or scptm");
        sub->add_option("--n-rb", o.n_rb, "Resource blocks")->capture_default_str();
        sub->add_option("--out", o.out, "CSV output file");
    }

    void add_link(CLI::App *sub, Options &o)
    {
        sub->add_option("--channel", o.channel, "awgn or rayleigh")->capture_default_str();
        sub->add_option("--tx", o.tx, "Transmit antennas (spatial layers)")->capture_default_str();
        sub->add_option("--rx", o.rx, "Receive antennas")->capture_default_str();
        sub->add_option("--fading", o.fading, "per-re or per-subframe")->capture_default_str();
        sub->add_option("--max-blocks", o.max_blocks, "Blocks per CNR point at most")->capture_default_str();
        sub->add_option("--min-errors", o.min_errors, "Stop a point after this many block errors")
            ->capture_default_str();
        sub->add_option("--seed", o.seed, "Master seed")->capture_default_str();
        sub->add_option("--workers", o.workers, "Worker threads")->capture_default_str();
        sub->add_option("--scrambling-seed", o.scrambling_seed, "31-bit scrambler initialisation")->capture_default_str();
    }

    Mode required_mode(const Options &o)
    {
        if (o.mode.empty())
            throw ConfigError("--mode is required");
        return parse_mode(o.mode);
    }

    DataTables load_tables(const Options &o)
    {
        return DataTables::load(o.data_dir.empty() ? default_data_dir() : std::filesystem::path(o.data_dir));
    }

    harness::SimConfig sim_config(const Options &o)
    {
        harness::SimConfig c;
        c.mode = required_mode(o);
        c.channel = channel::parse_channel(o.channel);
        c.fading = channel::parse_fading(o.fading);
        c.n_tx = o.tx;
        c.n_rx = o.rx;
        c.n_rb = o.n_rb;
        c.cnr = o.grid;
        c.target_bler = o.target_bler;
        c.max_blocks = o.max_blocks;
        c.min_block_errors = o.min_errors;
        c.master_seed = o.seed;
        c.workers = o.workers;
        c.scrambling_seed = o.scrambling_seed;
        c.mcs_list = o.mcs_list;
        return c;
    }

    std::ostream &output(const Options &o, std::ofstream &file)
    {
        if (o.out.empty())
            return std::cout;
        file.open(o.out);
        if (!file)
            throw ConfigError("cannot open output file " + o.out);
        return file;
    }

    int run_se_table(const Options &o)
    {
        const Mode mode = required_mode(o);
        validate(SeConfig{o.n_rb, o.streams}, mode);
        const auto tables = load_tables(o);
        const auto table = tables.mcs_table(mode, o.n_rb);
        if (table.empty())
            throw ConfigError("no MCS entries at " + std::to_string(o.n_rb) + " RB");

        std::printf("%-4s %-2s %-5s %-6s %-9s %s\n", "mcs", "m", "i_tbs", "tbs", "code_rate", "se_bits_per_re");
        double peak = 0.0;
        for (const auto &e : table)
        {
            const double se = bicm_se(e.modulation_order, e.code_rate, o.streams);
            peak = std::max(peak, se);
            std::printf("%-4d %-2d %-5d %-6ld %-9s %s\n", e.mcs_index, e.modulation_order, e.i_tbs, e.tbs_bits,
                        harness::format_fixed(e.code_rate, 4).c_str(), harness::format_fixed(se, 4).c_str());
        }
        std::printf("peak_se %s\n", harness::format_fixed(peak, 4).c_str());

        if (!o.out.empty())
        {
            std::ofstream f(o.out);
            if (!f)
                throw ConfigError("cannot open output file " + o.out);
            harness::write_se_table_csv(f, mode, o.streams, table);
        }
        return 0;
    }

    int run_bler(const Options &o)
    {
        if (o.mcs < 0)
            throw ConfigError("--mcs is required");
        auto c = sim_config(o);
        c.mcs_list = {o.mcs};
        const auto tables = load_tables(o);
        harness::LinkSimulator sim(c, tables);
        const auto p = sim.run_bler_point(o.mcs, o.cnr_db);
        std::ofstream f;
        harness::write_point_csv(output(o, f), c, sim.mcs(o.mcs), p);
        return 0;
    }

    int run_sweep(const Options &o)
    {
        const auto c = sim_config(o);
        const auto tables = load_tables(o);
        harness::LinkSimulator sim(c, tables);
        harness::SeCurve curve;
        for (int m : c.mcs_list)
        {
            harness::SePoint p;
            p.mcs = sim.mcs(m);
            p.se = bicm_se(p.mcs.modulation_order, p.mcs.code_rate, c.n_tx);
            p.threshold = sim.find_threshold(m);
            std::fprintf(stderr, "mcs %d: %s\n", m,
                         p.threshold.achieved()
                             ? ("threshold " + harness::format_fixed(*p.threshold.cnr_db, 2) + " dB").c_str()
                             : "target not met on the grid");
            curve.points.push_back(std::move(p));
        }
        if (c.channel == channel::ChannelKind::awgn)
            for (double x : c.cnr.points())
                curve.capacity.push_back({x, harness::shannon_capacity(x)});
        std::ofstream f;
        harness::write_curve_csv(output(o, f), c, curve);
        return 0;
    }

    int run_layout(const Options &o)
    {
        const Mode mode = required_mode(o);
        const auto g = grid::build_layout(default_numerology(mode, o.n_rb), o.n_rb);
        std::ofstream f;
        grid::dump_layout(g, output(o, f));
        return 0;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Link-level simulator for LTE MBSFN and SC-PTM transmission", "embms"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<FlatConfig>(&app));
    app.set_config("--config", "", "File of key = value lines mirroring the flags (flags win)");

    Options o;
    auto *se = app.add_subcommand("se-table", "Analytic code rate and BICM spectral efficiency per MCS");
    add_common(se, o);
    se->add_option("--streams", o.streams, "Spatial streams")->capture_default_str();

    auto *bler = app.add_subcommand("bler", "Block error rate at one MCS and CNR");
    add_common(bler, o);
    add_link(bler, o);
    bler->add_option("--mcs", o.mcs, "MCS index");
    bler->add_option("--cnr-db", o.cnr_db, "Carrier-to-noise ratio in dB")->capture_default_str();

    auto *sweep = app.add_subcommand("sweep", "1 %-BLER CNR thresholds and SE per MCS");
    add_common(sweep, o);
    add_link(sweep, o);
    sweep->add_option("--mcs-list", o.mcs_list, "Comma-separated MCS indices")->delimiter(',');
    sweep->add_option("--cnr-start", o.grid.start, "First CNR of the coarse grid (dB)")->capture_default_str();
    sweep->add_option("--cnr-stop", o.grid.stop, "Last CNR of the coarse grid (dB)")->capture_default_str();
    sweep->add_option("--cnr-step", o.grid.step, "Coarse grid step (dB)")->capture_default_str();
    sweep->add_option("--target-bler", o.target_bler, "BLER target")->capture_default_str();

    auto *layout = app.add_subcommand("layout", "Dump the resource-grid layout (symbol,subcarrier,kind)");
    add_common(layout, o);

    try
    {
        app.parse(hoist_config(argc, argv));
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try
    {
        if (app.got_subcommand(se))
            return run_se_table(o);
        if (app.got_subcommand(bler))
            return run_bler(o);
        if (app.got_subcommand(sweep))
            return run_sweep(o);
        return run_layout(o);
    }
    catch (const DataError &e)
    {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
