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
#include "embms/fec/crc.hpp"
#include "embms/fec/qpp.hpp"
#include "embms/fec/segmentation.hpp"

#include <optional>

namespace embms::fec
{
    /// Rate-1/3 mother codeword in the d(0) | d(1) | d(2) layout, each stream k + 4 long.
    /// Tail bits follow the standard multiplexing of the two trellis terminations.
    struct MotherCodeword
    {
        int k = 0;
        int filler_count = 0; // d(0) and d(1) positions below this are <NULL>
        Bits bits;

        int stream_length() const { return k + 4; }
    };

    MotherCodeword turbo_encode(const CodeBlock &cb, const QppTable &qpp);

    /// Soft mother codeword, same layout as MotherCodeword. Untransmitted positions hold 0.
    struct SoftBuffer
    {
        int k = 0;
        Llrs llr;
    };

    struct TurboDecoderConfig
    {
        int max_iterations = 8;
        float extrinsic_scale = 0.75f;
        float llr_clamp = default_llr_clamp;
    };

    struct TurboDecodeResult
    {
        Bits bits; // k hard decisions, fillers included
        bool converged = false;
        int iterations = 0;
    };

    /// Max-log BCJR turbo decoder. Stateless apart from configuration, so one instance can be
    /// shared across threads.
    class TurboDecoder
    {
    public:
        explicit TurboDecoder(const QppTable &qpp, TurboDecoderConfig config = {});

        /// Decodes one block. Filler positions get a saturated "bit 0" prior. When `crc` is
        /// set, iterations stop as soon as the hard decisions (fillers excluded) pass it.
        TurboDecodeResult decode(const SoftBuffer &soft, int filler_count, std::optional<CrcType> crc) const;

        const TurboDecoderConfig &config() const { return config_; }

    private:
        const QppTable *qpp_;
        TurboDecoderConfig config_;
    };
}
