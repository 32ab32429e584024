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

#include "embms/bits.hpp"
#include "embms/fec/segmentation.hpp"
#include "embms/fec/turbo.hpp"

#include <vector>

namespace embms::fec
{
    /// How one transport block is spread over the coded bits of a subframe.
    struct ChainPlan
    {
        int tbs = 0;
        long n_avail = 0;
        int bits_per_symbol = 2;
        SegmentationPlan segmentation;
        std::vector<int> e; // rate-matched length per code block, sums to n_avail
        std::vector<std::vector<int>> buffer_order; // circular_buffer_order per code block
    };

    /// Segments TBS + 24 bits and splits n_avail across the code blocks in whole symbols
    /// (the first C - gamma blocks get floor, the rest ceil).
    ChainPlan plan_chain(int tbs, long n_avail, int bits_per_symbol);

    /// TB CRC, segmentation, turbo coding, rate matching and concatenation.
    Bits chain_encode(BitSpan tb, const ChainPlan &plan, const QppTable &qpp);

    struct ChainDecodeResult
    {
        Bits tb;             // decoded payload, tbs bits
        bool crc_ok = false; // TB CRC status
        int max_iterations_used = 0;
    };

    struct ChainDecodeOptions
    {
        // Give up on the transport block as soon as one code block fails its CRC after the
        // last iteration; the remaining blocks are not decoded and crc_ok is false.
        bool stop_on_block_failure = false;
    };

    ChainDecodeResult chain_decode(LlrSpan llrs, const ChainPlan &plan, const TurboDecoder &decoder,
                                   ChainDecodeOptions options = {});
}
