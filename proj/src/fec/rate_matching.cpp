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

#include "embms/fec/rate_matching.hpp"

#include "embms/fec/segmentation.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace embms::fec
{
    namespace
    {
        constexpr std::array<int, subblock_columns> column_permutation = {
            0, 16, 8, 24, 4, 20, 12, 28, 2, 18, 10, 26, 6, 22, 14, 30,
            1, 17, 9, 25, 5, 21, 13, 29, 3, 19, 11, 27, 7, 23, 15, 31};
    }

    std::vector<int> circular_buffer_order(int k, int filler_count, int rv)
    {
        if (!valid_interleaver_size(k))
            throw std::invalid_argument("rate matching: invalid block size " + std::to_string(k));
        if (rv != 0)
            throw std::invalid_argument("rate matching: only redundancy version 0 is supported");

        const int d = k + 4;
        const int rows = (d + subblock_columns - 1) / subblock_columns;
        const int kpi = rows * subblock_columns;
        const int dummies = kpi - d;
        const int ncb = 3 * kpi;
        const int k0 = 2 * rows; // R * (2 * ceil(Ncb / 8R) * rv + 2) with rv = 0

        // Mother position of interleaved element j of stream `stream`, or -1 for <NULL>.
        auto source = [&](int stream, int j) {
            int y = column_permutation[size_t(j / rows)] + subblock_columns * (j % rows);
            if (stream == 2)
                y = (y + 1) % kpi;
            const int idx = y - dummies;
            if (idx < 0)
                return -1;
            if (stream < 2 && idx < filler_count)
                return -1;
            return stream * d + idx;
        };

        std::vector<int> order;
        order.reserve(size_t(3 * d));
        for (int n = 0; n < ncb; ++n)
        {
            const int w = (k0 + n) % ncb;
            int pos;
            if (w < kpi)
                pos = source(0, w);
            else
            {
                const int j = (w - kpi) / 2;
                pos = source((w - kpi) % 2 == 0 ? 1 : 2, j);
            }
            if (pos >= 0)
                order.push_back(pos);
        }
        return order;
    }

    Bits rate_match(const MotherCodeword &mother, int e, int rv)
    {
        return rate_match(mother, circular_buffer_order(mother.k, mother.filler_count, rv), e);
    }

    Bits rate_match(const MotherCodeword &mother, std::span<const int> order, int e)
    {
        if (e <= 0)
            throw std::invalid_argument("rate_match: e must be positive");
        if (mother.bits.size() != size_t(3 * mother.stream_length()))
            throw std::invalid_argument("rate_match: mother codeword must hold 3k + 12 bits");
        if (order.empty())
            throw std::invalid_argument("rate_match: empty buffer order");
        Bits out(static_cast<size_t>(e));
        size_t j = 0;
        for (auto &bit : out)
        {
            bit = mother.bits[size_t(order[j])];
            if (++j == order.size())
                j = 0;
        }
        return out;
    }

    SoftBuffer rate_dematch(LlrSpan llrs, int k, int filler_count, int e, int rv)
    {
        if (e <= 0 || llrs.size() != size_t(e))
            throw std::invalid_argument("rate_dematch: expected " + std::to_string(e) + " LLRs, got " +
                                        std::to_string(llrs.size()));
        return rate_dematch(llrs, k, circular_buffer_order(k, filler_count, rv));
    }

    SoftBuffer rate_dematch(LlrSpan llrs, int k, std::span<const int> order)
    {
        if (order.empty())
            throw std::invalid_argument("rate_dematch: empty buffer order");
        SoftBuffer soft;
        soft.k = k;
        soft.llr.assign(size_t(3 * (k + 4)), 0.0f);
        size_t j = 0;
        for (float v : llrs)
        {
            soft.llr[size_t(order[j])] += v;
            if (++j == order.size())
                j = 0;
        }
        return soft;
    }
}
