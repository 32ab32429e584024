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
#include "embms/fec/turbo.hpp"

#include <span>
#include <vector>

namespace embms::fec
{
    /// Columns of the sub-block interleaver matrix and its inter-column permutation.
    inline constexpr int subblock_columns = 32;

    /// Mother-codeword positions in circular-buffer read order starting at the redundancy
    /// version's offset. Dummy and filler (<NULL>) entries are skipped, so the list holds each
    /// transmittable position exactly once.
    std::vector<int> circular_buffer_order(int k, int filler_count, int rv = 0);

    /// Reads e bits from the circular buffer, wrapping around when e exceeds its size.
    Bits rate_match(const MotherCodeword &mother, int e, int rv = 0);

    /// Adds every LLR into the mother position its bit came from. Throws std::invalid_argument
    /// if `llrs.size() != e`.
    SoftBuffer rate_dematch(LlrSpan llrs, int k, int filler_count, int e, int rv = 0);

    // Same operations with a read order from circular_buffer_order computed up front.
    Bits rate_match(const MotherCodeword &mother, std::span<const int> order, int e);
    SoftBuffer rate_dematch(LlrSpan llrs, int k, std::span<const int> order);
}
