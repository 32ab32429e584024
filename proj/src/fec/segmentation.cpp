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

#include "embms/fec/segmentation.hpp"

#include "embms/fec/crc.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace embms::fec
{
    namespace
    {
        constexpr std::array<int, 188> make_sizes()
        {
            std::array<int, 188> k{};
            int n = 0;
            for (int v = 40; v <= 512; v += 8)
                k[n++] = v;
            for (int v = 528; v <= 1024; v += 16)
                k[n++] = v;
            for (int v = 1056; v <= 2048; v += 32)
                k[n++] = v;
            for (int v = 2112; v <= 6144; v += 64)
                k[n++] = v;
            return k;
        }

        constexpr std::array<int, 188> sizes = make_sizes();
    }

    std::span<const int> interleaver_sizes()
    {
        return sizes;
    }

    bool valid_interleaver_size(int k)
    {
        return std::binary_search(sizes.begin(), sizes.end(), k);
    }

    SegmentationPlan plan_segmentation(int input_bits)
    {
        if (input_bits <= crc_length)
            throw std::invalid_argument("segment: input must hold the TB CRC and at least one payload bit");

        SegmentationPlan p;
        p.input_bits = input_bits;
        int b_prime = input_bits;
        if (input_bits <= max_code_block_size)
        {
            p.c = 1;
        }
        else
        {
            p.cb_crc = crc_length;
            p.c = (input_bits + (max_code_block_size - crc_length) - 1) / (max_code_block_size - crc_length);
            b_prime = input_bits + p.c * crc_length;
        }

        // Smallest K with C * K >= B'.
        const auto plus = std::find_if(sizes.begin(), sizes.end(), [&](int k) { return p.c * k >= b_prime; });
        if (plus == sizes.end())
            throw std::invalid_argument("segment: no interleaver size fits the input");
        p.k_plus = *plus;

        if (p.c == 1)
        {
            p.c_plus = 1;
            p.k_minus = 0;
            p.c_minus = 0;
        }
        else
        {
            p.k_minus = plus == sizes.begin() ? 0 : *(plus - 1);
            const int delta = p.k_plus - p.k_minus;
            p.c_minus = (p.c * p.k_plus - b_prime) / delta;
            p.c_plus = p.c - p.c_minus;
        }
        p.filler = p.c_plus * p.k_plus + p.c_minus * p.k_minus - b_prime;
        return p;
    }

    std::vector<CodeBlock> segment(BitSpan tb_with_crc)
    {
        const SegmentationPlan plan = plan_segmentation(int(tb_with_crc.size()));
        std::vector<CodeBlock> blocks(size_t(plan.c));
        size_t s = 0;
        for (int r = 0; r < plan.c; ++r)
        {
            CodeBlock &cb = blocks[size_t(r)];
            cb.k = plan.block_size(r);
            cb.filler_count = r == 0 ? plan.filler : 0;
            cb.bits.assign(size_t(cb.k), 0);

            const size_t data_bits = size_t(cb.k - cb.filler_count - plan.cb_crc);
            std::copy_n(tb_with_crc.begin() + long(s), data_bits, cb.bits.begin() + cb.filler_count);
            s += data_bits;

            if (plan.cb_crc)
            {
                // Leading zero fillers do not change the parity.
                const std::uint32_t parity = crc24(BitSpan(cb.bits).first(size_t(cb.k - crc_length)), CrcType::cb_24b);
                for (int i = 0; i < crc_length; ++i)
                    cb.bits[size_t(cb.k - crc_length + i)] = std::uint8_t((parity >> (crc_length - 1 - i)) & 1u);
            }
        }
        return blocks;
    }

    Bits desegment(std::span<const Bits> blocks, const SegmentationPlan &plan)
    {
        if (blocks.size() != size_t(plan.c))
            throw std::invalid_argument("desegment: block count mismatch");
        Bits out;
        out.reserve(size_t(plan.input_bits));
        for (int r = 0; r < plan.c; ++r)
        {
            const Bits &b = blocks[size_t(r)];
            const int k = plan.block_size(r);
            if (b.size() != size_t(k))
                throw std::invalid_argument("desegment: block size mismatch");
            const int first = r == 0 ? plan.filler : 0;
            out.insert(out.end(), b.begin() + first, b.begin() + (k - plan.cb_crc));
        }
        return out;
    }
}
