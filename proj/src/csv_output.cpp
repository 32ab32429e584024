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

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace embms::harness
{
    std::string format_fixed(double value, int decimals)
    {
        std::array<char, 64> buf{};
        auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, decimals);
        std::string s(buf.data(), ec == std::errc{} ? end : buf.data());
        if (s.find_first_not_of("-0.") == std::string::npos && !s.empty() && s[0] == '-')
            s.erase(0, 1);
        return s;
    }

    namespace
    {
        struct Row
        {
            std::string mode, channel, n_tx, n_rx, mcs, m, cr, cnr, blocks, errors, bler, threshold, se;
        };

        void emit(std::ostream &out, const Row &r)
        {
            out << r.mode << ',' << r.channel << ',' << r.n_tx << ',' << r.n_rx << ',' << r.mcs << ',' << r.m << ','
                << r.cr << ',' << r.cnr << ',' << r.blocks << ',' << r.errors << ',' << r.bler << ',' << r.threshold
                << ',' << r.se << '\n';
        }

        Row base(const SimConfig &c)
        {
            Row r;
            r.mode = to_string(c.mode);
            r.channel = channel::to_string(c.channel);
            r.n_tx = std::to_string(c.n_tx);
            r.n_rx = std::to_string(c.n_rx);
            return r;
        }

        void fill_mcs(Row &r, const McsEntry &e)
        {
            r.mcs = std::to_string(e.mcs_index);
            r.m = std::to_string(e.modulation_order);
            r.cr = format_fixed(e.code_rate, 3);
        }

        void fill_point(Row &r, const BlerPoint &p)
        {
            r.cnr = format_fixed(p.cnr_db, 2);
            r.blocks = std::to_string(p.blocks_run);
            r.errors = std::to_string(p.block_errors);
            r.bler = format_fixed(p.bler, 6);
        }
    }

    void write_curve_csv(std::ostream &out, const SimConfig &config, const SeCurve &curve)
    {
        out << csv_header << '\n';
        std::vector<const SePoint *> order;
        for (const auto &p : curve.points)
            order.push_back(&p);
        std::stable_sort(order.begin(), order.end(),
                         [](const SePoint *a, const SePoint *b) { return a->mcs.mcs_index < b->mcs.mcs_index; });

        for (const SePoint *p : order)
        {
            Row s = base(config);
            fill_mcs(s, p->mcs);
            if (p->threshold.achieved())
                s.threshold = format_fixed(*p->threshold.cnr_db, 2);
            s.se = format_fixed(p->se, 4);
            emit(out, s);

            auto pts = p->threshold.evaluated;
            std::stable_sort(pts.begin(), pts.end(),
                             [](const BlerPoint &a, const BlerPoint &b) { return a.cnr_db < b.cnr_db; });
            for (const auto &bp : pts)
            {
                Row r = base(config);
                fill_mcs(r, p->mcs);
                fill_point(r, bp);
                emit(out, r);
            }
        }
        for (const auto &c : curve.capacity)
        {
            Row r = base(config);
            r.cnr = format_fixed(c.cnr_db, 2);
            r.se = format_fixed(c.se, 4);
            emit(out, r);
        }
    }

    void write_point_csv(std::ostream &out, const SimConfig &config, const McsEntry &mcs, const BlerPoint &point)
    {
        out << csv_header << '\n';
        Row r = base(config);
        fill_mcs(r, mcs);
        fill_point(r, point);
        emit(out, r);
    }

    void write_se_table_csv(std::ostream &out, Mode mode, int n_streams, const std::vector<McsEntry> &table)
    {
        out << csv_header << '\n';
        for (const auto &e : table)
        {
            Row r;
            r.mode = to_string(mode);
            r.n_tx = std::to_string(n_streams);
            fill_mcs(r, e);
            r.se = format_fixed(bicm_se(e.modulation_order, e.code_rate, n_streams), 4);
            emit(out, r);
        }
    }
}
