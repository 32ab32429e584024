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

#include <span>
#include <vector>

namespace embms::fec
{
    inline constexpr int max_code_block_size = 6144;
    inline constexpr int min_code_block_size = 40;

    /// The 188 turbo interleaver sizes, ascending.
    std::span<const int> interleaver_sizes();
    bool valid_interleaver_size(int k);

    /// Block sizes produced by code-block segmentation of B bits (TB payload plus TB CRC).
    struct SegmentationPlan
    {
        int input_bits = 0; // B
        int c = 0;          // number of code blocks
        int k_plus = 0;
        int k_minus = 0;
        int c_plus = 0;
        int c_minus = 0;
        int filler = 0;     // filler bits at the start of the first block
        int cb_crc = 0;     // 24 when segmented, else 0

        // Blocks 0..c_minus-1 use k_minus, the rest k_plus.
        int block_size(int r) const { return r < c_minus ? k_minus : k_plus; }
    };

    SegmentationPlan plan_segmentation(int input_bits);

    struct CodeBlock
    {
        Bits bits;            // k bits: fillers (zeros) first, then data, then CB CRC when segmented
        int k = 0;
        int filler_count = 0; // non-zero only for the first block
    };

    /// Splits a transport block that already carries its CRC into code blocks.
    std::vector<CodeBlock> segment(BitSpan tb_with_crc);

    /// Inverse of segment for hard decisions: strips fillers and CB CRCs.
    Bits desegment(std::span<const Bits> blocks, const SegmentationPlan &plan);
}
