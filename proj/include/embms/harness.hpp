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

#pragma once

#include "embms/channel.hpp"
#include "embms/data_tables.hpp"
#include "embms/fec/chain.hpp"
#include "embms/fec/turbo.hpp"
#include "embms/grid.hpp"
#include "embms/numerology.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace embms::harness
{
    struct CnrGrid
    {
        double start = -10.0;
        double stop = 40.0;
        double step = 1.0;

        /// start, start + step, ... up to stop (inclusive within step / 1000).
        std::vector<double> points() const;
    };

    struct SimConfig
    {
        Mode mode = Mode::scptm;
        channel::ChannelKind channel = channel::ChannelKind::awgn;
        int n_tx = 1;
        int n_rx = 1;
        int n_rb = 50;
        std::vector<int> mcs_list;
        CnrGrid cnr;
        double target_bler = 0.01;
        long max_blocks = 10000;
        long min_block_errors = 50;
        std::uint64_t master_seed = 1;
        channel::Fading fading = channel::Fading::per_re;
        int workers = 1;
        std::uint32_t scrambling_seed = 0x5A3C; // 31-bit scrambler initialisation of layer 0
        bool scrambling = true;
    };

    /// Throws ConfigError when a field is out of range or an MCS is not in `table`.
    void validate(const SimConfig &config, const std::vector<McsEntry> &table);

    struct BlerPoint
    {
        int mcs_index = 0;
        double cnr_db = 0.0;
        long blocks_run = 0;
        long block_errors = 0;
        double bler = 0.0;
        double half_width = 0.0; // 95 % Wilson interval

        bool meets(double target) const { return bler < target; }
    };

    /// Wilson score interval half-width at 95 % confidence.
    double wilson_half_width(long errors, long blocks);

    BlerPoint make_point(int mcs_index, double cnr_db, long blocks, long errors);

    struct ThresholdResult
    {
        int mcs_index = 0;
        std::optional<double> cnr_db; // empty: target not met anywhere on the grid
        std::vector<BlerPoint> evaluated; // ascending CNR

        bool achieved() const { return cnr_db.has_value(); }
    };

    using BlerOracle = std::function<BlerPoint(int mcs_index, double cnr_db)>;

    inline constexpr double threshold_resolution_db = 0.25;

    /// Scans the grid for the first point below `target`, then bisects between it and the
    /// previous grid point until the bracket is at most 0.25 dB wide and returns its upper end.
    /// A target met at the first grid point returns that point.
    ThresholdResult find_threshold(const CnrGrid &grid, double target, int mcs_index, const BlerOracle &oracle);

    /// log2(1 + 10^(cnr_db / 10)).
    double shannon_capacity(double cnr_db);

    struct SePoint
    {
        McsEntry mcs;
        double se = 0.0;
        ThresholdResult threshold;
    };

    struct CapacitySample
    {
        double cnr_db = 0.0;
        double se = 0.0;
    };

    struct SeCurve
    {
        std::vector<SePoint> points;              // in MCS-list order
        std::vector<CapacitySample> capacity;     // AWGN only
    };

    /// Monte-Carlo link simulator for one configuration.
    ///
    /// Every trial draws its own random stream from (master_seed, mcs, cnr, trial index) and
    /// trials are consumed in index order, so results do not depend on the worker count.
    class LinkSimulator
    {
    public:
        LinkSimulator(SimConfig config, const DataTables &tables);

        const SimConfig &config() const { return config_; }
        const std::vector<McsEntry> &mcs_table() const { return table_; }
        const McsEntry &mcs(int mcs_index) const { return find_mcs(table_, mcs_index); }
        const grid::ResourceGrid &layout() const { return layout_; }

        /// One subframe: every layer carries its own transport block. Returns true when any
        /// layer fails its TB CRC or decodes to different bits.
        bool run_trial(int mcs_index, double cnr_db, long trial) const;

        BlerPoint run_bler_point(int mcs_index, double cnr_db) const;
        ThresholdResult find_threshold(int mcs_index) const;
        SeCurve sweep_se_curve() const;

    private:
        const fec::ChainPlan &plan(int mcs_index) const;

        SimConfig config_;
        const DataTables *tables_;
        std::vector<McsEntry> table_;
        Numerology num_;
        grid::ResourceGrid layout_;
        fec::TurboDecoder decoder_;
        std::vector<fec::ChainPlan> plans_; // indexed like table_
    };

    /// Seed of one trial's random stream.
    std::uint64_t trial_seed(std::uint64_t master_seed, int mcs_index, double cnr_db, long trial);

    /// Scrambling initialisation of a spatial layer.
    std::uint32_t layer_scrambling_seed(std::uint32_t base, int layer);
}
