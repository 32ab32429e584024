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

#include "embms/fec/chain.hpp"

#include "embms/fec/crc.hpp"
#include "embms/fec/rate_matching.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace embms::fec
{
    ChainPlan plan_chain(int tbs, long n_avail, int bits_per_symbol)
    {
        if (tbs <= 0)
            throw std::invalid_argument("plan_chain: TBS must be positive");
        if (bits_per_symbol <= 0 || n_avail <= 0 || n_avail % bits_per_symbol != 0)
            throw std::invalid_argument("plan_chain: n_avail must be a positive multiple of the bits per symbol");

        ChainPlan plan;
        plan.tbs = tbs;
        plan.n_avail = n_avail;
        plan.bits_per_symbol = bits_per_symbol;
        plan.segmentation = plan_segmentation(tbs + crc_length);

        const int c = plan.segmentation.c;
        const long symbols = n_avail / bits_per_symbol; // G' with one layer per codeword
        const long gamma = symbols % c;
        plan.e.resize(size_t(c));
        for (int r = 0; r < c; ++r)
        {
            const long per = r <= c - gamma - 1 ? symbols / c : (symbols + c - 1) / c;
            plan.e[size_t(r)] = int(bits_per_symbol * per);
            plan.buffer_order.push_back(
                circular_buffer_order(plan.segmentation.block_size(r), r == 0 ? plan.segmentation.filler : 0));
        }
        return plan;
    }

    Bits chain_encode(BitSpan tb, const ChainPlan &plan, const QppTable &qpp)
    {
        if (tb.size() != size_t(plan.tbs))
            throw std::invalid_argument("chain_encode: payload has " + std::to_string(tb.size()) + " bits, plan expects " +
                                        std::to_string(plan.tbs));
        const Bits with_crc = crc_attach(tb, CrcType::tb_24a);
        const std::vector<CodeBlock> blocks = segment(with_crc);

        Bits out;
        out.reserve(size_t(plan.n_avail));
        for (size_t r = 0; r < blocks.size(); ++r)
        {
            const Bits rm = rate_match(turbo_encode(blocks[r], qpp), plan.buffer_order[r], plan.e[r]);
            out.insert(out.end(), rm.begin(), rm.end());
        }
        return out;
    }

    ChainDecodeResult chain_decode(LlrSpan llrs, const ChainPlan &plan, const TurboDecoder &decoder,
                                   ChainDecodeOptions options)
    {
        if (llrs.size() != size_t(plan.n_avail))
            throw std::invalid_argument("chain_decode: expected " + std::to_string(plan.n_avail) + " LLRs, got " +
                                        std::to_string(llrs.size()));
        const SegmentationPlan &seg = plan.segmentation;
        const CrcType check = seg.c > 1 ? CrcType::cb_24b : CrcType::tb_24a;

        ChainDecodeResult result;
        std::vector<Bits> hard(size_t(seg.c));
        size_t offset = 0;
        for (int r = 0; r < seg.c; ++r)
        {
            const int k = seg.block_size(r);
            const int filler = r == 0 ? seg.filler : 0;
            const int e = plan.e[size_t(r)];
            const SoftBuffer soft = rate_dematch(llrs.subspan(offset, size_t(e)), k, plan.buffer_order[size_t(r)]);
            offset += size_t(e);

            TurboDecodeResult dec = decoder.decode(soft, filler, check);
            result.max_iterations_used = std::max(result.max_iterations_used, dec.iterations);
            if (!dec.converged && options.stop_on_block_failure)
            {
                result.tb.assign(size_t(plan.tbs), 0);
                result.crc_ok = false;
                return result;
            }
            hard[size_t(r)] = std::move(dec.bits);
        }

        Bits with_crc = desegment(hard, seg);
        result.crc_ok = crc_check(with_crc, CrcType::tb_24a);
        with_crc.resize(size_t(plan.tbs));
        result.tb = std::move(with_crc);
        return result;
    }
}
