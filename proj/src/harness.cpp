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

#include "embms/harness.hpp"

#include "embms/bicm.hpp"
#include "embms/detector.hpp"
#include "embms/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace embms::harness
{
    namespace
    {
        std::uint64_t splitmix64(std::uint64_t x)
        {
            x += 0x9E3779B97F4A7C15ull;
            x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
            x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
            return x ^ (x >> 31);
        }
    }

    std::vector<double> CnrGrid::points() const
    {
        std::vector<double> p;
        if (!(step > 0.0) || stop < start)
            return p;
        const long n = long(std::floor((stop - start) / step + 1e-3)) + 1;
        for (long i = 0; i < n; ++i)
            p.push_back(start + double(i) * step);
        return p;
    }

    void validate(const SimConfig &c, const std::vector<McsEntry> &table)
    {
        if (c.n_tx != 1 && c.n_tx != 2 && c.n_tx != 4)
            throw ConfigError("tx must be 1, 2 or 4");
        if (c.n_rx < c.n_tx || c.n_rx > 8)
            throw ConfigError("rx must be in [tx, 8]");
        if (c.mode == Mode::mbsfn && c.n_tx != 1)
            throw ConfigError("MBSFN transmits a single layer (tx = 1)");
        if (table.empty())
            throw ConfigError("no MCS entries for " + std::string(to_string(c.mode)) + " at " + std::to_string(c.n_rb) +
                              " RB");
        for (int m : c.mcs_list)
            find_mcs(table, m);
        if (!(c.cnr.step > 0.0) || !(c.cnr.stop >= c.cnr.start))
            throw ConfigError("CNR grid must be nonempty and increasing (step > 0, stop >= start)");
        if (!(c.target_bler > 0.0 && c.target_bler < 1.0))
            throw ConfigError("target BLER must be in (0, 1)");
        if (c.max_blocks < 1 || c.min_block_errors < 1)
            throw ConfigError("max-blocks and min-errors must be positive");
        if (c.workers < 1)
            throw ConfigError("workers must be positive");
        if (c.scrambling_seed > 0x7FFFFFFFu)
            throw ConfigError("scrambling seed must fit in 31 bits");
    }

    double wilson_half_width(long errors, long blocks)
    {
        if (blocks <= 0)
            return 0.0;
        constexpr double z = 1.959963984540054;
        const double n = double(blocks), p = double(errors) / n;
        return z / (1.0 + z * z / n) * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
    }

    BlerPoint make_point(int mcs_index, double cnr_db, long blocks, long errors)
    {
        BlerPoint p;
        p.mcs_index = mcs_index;
        p.cnr_db = cnr_db;
        p.blocks_run = blocks;
        p.block_errors = errors;
        p.bler = blocks > 0 ? double(errors) / double(blocks) : 0.0;
        p.half_width = wilson_half_width(errors, blocks);
        return p;
    }

    ThresholdResult find_threshold(const CnrGrid &grid, double target, int mcs_index, const BlerOracle &oracle)
    {
        ThresholdResult r;
        r.mcs_index = mcs_index;
        const auto pts = grid.points();

        size_t hit = pts.size();
        for (size_t i = 0; i < pts.size(); ++i)
        {
            r.evaluated.push_back(oracle(mcs_index, pts[i]));
            if (r.evaluated.back().meets(target))
            {
                hit = i;
                break;
            }
        }
        if (hit == pts.size())
            return r;
        if (hit == 0)
        {
            r.cnr_db = pts[0];
            return r;
        }

        double lo = pts[hit - 1], hi = pts[hit];
        while (hi - lo > threshold_resolution_db + 1e-9)
        {
            const double mid = 0.5 * (lo + hi);
            r.evaluated.push_back(oracle(mcs_index, mid));
            (r.evaluated.back().meets(target) ? hi : lo) = mid;
        }
        r.cnr_db = hi;
        std::sort(r.evaluated.begin(), r.evaluated.end(),
                  [](const BlerPoint &a, const BlerPoint &b) { return a.cnr_db < b.cnr_db; });
        return r;
    }

    double shannon_capacity(double cnr_db)
    {
        return std::log2(1.0 + std::pow(10.0, cnr_db / 10.0));
    }

    std::uint64_t trial_seed(std::uint64_t master_seed, int mcs_index, double cnr_db, long trial)
    {
        std::uint64_t h = splitmix64(master_seed);
        h = splitmix64(h ^ std::uint64_t(std::int64_t(mcs_index)));
        h = splitmix64(h ^ std::uint64_t(std::llround(cnr_db * 1000.0)));
        return splitmix64(h ^ std::uint64_t(trial));
    }

    std::uint32_t layer_scrambling_seed(std::uint32_t base, int layer)
    {
        return (base + (std::uint32_t(layer) << 14)) & 0x7FFFFFFFu;
    }

    // ---------------------------------------------------------------------------------------

    LinkSimulator::LinkSimulator(SimConfig config, const DataTables &tables)
        : config_(std::move(config)), tables_(&tables), table_(tables.mcs_table(config_.mode, config_.n_rb)),
          num_(default_numerology(config_.mode, config_.n_rb)),
          layout_(grid::build_layout(num_, config_.n_rb, config_.n_tx)), decoder_(tables.qpp)
    {
        validate(config_, table_);
        for (const auto &e : table_)
        {
            const long avail = n_avail(num_, config_.n_rb, e.modulation_order);
            if (avail != long(layout_.data_re_count()) * e.modulation_order)
                throw DataError("grid layout disagrees with the RE budget");
            plans_.push_back(fec::plan_chain(int(e.tbs_bits), avail, e.modulation_order));
        }
    }

    const fec::ChainPlan &LinkSimulator::plan(int mcs_index) const
    {
        const auto &e = mcs(mcs_index);
        return plans_[size_t(&e - table_.data())];
    }

    bool LinkSimulator::run_trial(int mcs_index, double cnr_db, long trial) const
    {
        const McsEntry &e = mcs(mcs_index);
        const fec::ChainPlan &p = plan(mcs_index);
        const auto &con = tables_->constellations.for_bits(e.modulation_order);
        channel::Rng rng(trial_seed(config_.master_seed, mcs_index, cnr_db, trial));

        const int n_layers = config_.n_tx;
        std::vector<Bits> tbs(static_cast<size_t>(n_layers));
        std::vector<std::vector<grid::cd>> layers(static_cast<size_t>(n_layers));
        for (int l = 0; l < n_layers; ++l)
        {
            Bits &tb = tbs[size_t(l)];
            tb.resize(size_t(e.tbs_bits));
            for (size_t i = 0; i < tb.size(); i += 64)
            {
                const std::uint64_t w = rng();
                for (size_t j = 0; j < 64 && i + j < tb.size(); ++j)
                    tb[i + j] = std::uint8_t((w >> j) & 1u);
            }
            Bits coded = fec::chain_encode(tb, p, tables_->qpp);
            if (config_.scrambling)
                coded = bicm::scramble(coded, layer_scrambling_seed(config_.scrambling_seed, l));
            layers[size_t(l)] = bicm::map_symbols(coded, con);
        }

        grid::ResourceGrid g = layout_;
        grid::map_to_grid(layers, g);
        const auto tx = grid::extract_from_grid(g);

        const int n_re = layout_.data_re_count();
        channel::ChannelMatrices h = config_.channel == channel::ChannelKind::rayleigh
                                         ? channel::draw_rayleigh(config_.n_tx, config_.n_rx, n_re, rng, config_.fading)
                                         : channel::awgn_matrices(config_.n_tx, config_.n_rx, n_re);
        const auto rx = channel::apply_channel(tx, std::move(h), cnr_db, rng);
        const auto det = detector::detect(rx.received, rx.realization);

        for (int l = 0; l < n_layers; ++l)
        {
            Llrs llr = bicm::demap_llr(det.symbols[size_t(l)], det.noise_var[size_t(l)], con,
                                       decoder_.config().llr_clamp);
            if (config_.scrambling)
                bicm::descramble_llrs(llr, layer_scrambling_seed(config_.scrambling_seed, l));
            const auto dec = fec::chain_decode(llr, p, decoder_, {.stop_on_block_failure = true});
            if (!dec.crc_ok || dec.tb != tbs[size_t(l)])
                return true;
        }
        return false;
    }

    BlerPoint LinkSimulator::run_bler_point(int mcs_index, double cnr_db) const
    {
        mcs(mcs_index);
        const long batch = 8L * config_.workers;
        long blocks = 0, errors = 0;
        std::vector<std::uint8_t> outcome;

        for (long first = 0; first < config_.max_blocks; first += batch)
        {
            const long n = std::min(batch, config_.max_blocks - first);
            outcome.assign(size_t(n), 0);

            if (config_.workers == 1)
            {
                for (long i = 0; i < n; ++i)
                    outcome[size_t(i)] = run_trial(mcs_index, cnr_db, first + i);
            }
            else
            {
                std::atomic<long> next{0};
                std::exception_ptr failure;
                std::mutex failure_mutex;
                auto work = [&] {
                    for (long i; (i = next.fetch_add(1)) < n;)
                    {
                        try
                        {
                            outcome[size_t(i)] = run_trial(mcs_index, cnr_db, first + i);
                        }
                        catch (...)
                        {
                            std::lock_guard lock(failure_mutex);
                            if (!failure)
                                failure = std::current_exception();
                        }
                    }
                };
                std::vector<std::thread> pool;
                for (int w = 0; w < config_.workers; ++w)
                    pool.emplace_back(work);
                for (auto &t : pool)
                    t.join();
                if (failure)
                    std::rethrow_exception(failure);
            }

            for (long i = 0; i < n; ++i)
            {
                ++blocks;
                errors += outcome[size_t(i)];
                if (errors >= config_.min_block_errors)
                    return make_point(mcs_index, cnr_db, blocks, errors);
            }
        }
        return make_point(mcs_index, cnr_db, blocks, errors);
    }

    ThresholdResult LinkSimulator::find_threshold(int mcs_index) const
    {
        return harness::find_threshold(config_.cnr, config_.target_bler, mcs_index,
                                       [this](int m, double c) { return run_bler_point(m, c); });
    }

    SeCurve LinkSimulator::sweep_se_curve() const
    {
        SeCurve curve;
        for (int m : config_.mcs_list)
        {
            SePoint p;
            p.mcs = mcs(m);
            p.se = bicm_se(p.mcs.modulation_order, p.mcs.code_rate, config_.n_tx);
            p.threshold = find_threshold(m);
            curve.points.push_back(std::move(p));
        }
        if (config_.channel == channel::ChannelKind::awgn)
            for (double c : config_.cnr.points())
                curve.capacity.push_back({c, shannon_capacity(c)});
        return curve;
    }
}
