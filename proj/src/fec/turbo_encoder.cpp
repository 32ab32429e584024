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

#include "embms/fec/turbo.hpp"

#include <stdexcept>

namespace embms::fec
{
    namespace
    {
        // 8-state constituent encoder, feedback 1 + D^2 + D^3, feedforward 1 + D + D^3.
        struct Constituent
        {
            unsigned s1 = 0, s2 = 0, s3 = 0;

            std::uint8_t step(std::uint8_t u)
            {
                const unsigned a = u ^ s2 ^ s3;
                const unsigned z = a ^ s1 ^ s3;
                s3 = s2;
                s2 = s1;
                s1 = a;
                return std::uint8_t(z);
            }

            // One termination step: the input equals the feedback so a zero enters the register.
            std::pair<std::uint8_t, std::uint8_t> terminate()
            {
                const auto x = std::uint8_t(s2 ^ s3);
                const auto z = std::uint8_t(s1 ^ s3);
                s3 = s2;
                s2 = s1;
                s1 = 0;
                return {x, z};
            }
        };
    }

    MotherCodeword turbo_encode(const CodeBlock &cb, const QppTable &qpp)
    {
        const int k = cb.k;
        if (!valid_interleaver_size(k))
            throw std::invalid_argument("turbo_encode: invalid block size " + std::to_string(k));
        if (cb.bits.size() != size_t(k))
            throw std::invalid_argument("turbo_encode: block length does not match k");

        const std::vector<int> &pi = qpp.permutation(k);
        const int d = k + 4;
        MotherCodeword out;
        out.k = k;
        out.filler_count = cb.filler_count;
        out.bits.assign(size_t(3 * d), 0);
        std::uint8_t *d0 = out.bits.data();
        std::uint8_t *d1 = d0 + d;
        std::uint8_t *d2 = d1 + d;

        Constituent enc1, enc2;
        for (int i = 0; i < k; ++i)
        {
            d0[i] = cb.bits[size_t(i)];
            d1[i] = enc1.step(cb.bits[size_t(i)]);
            d2[i] = enc2.step(cb.bits[size_t(pi[size_t(i)])]);
        }

        std::uint8_t x[3], z[3], xp[3], zp[3];
        for (int i = 0; i < 3; ++i)
            std::tie(x[i], z[i]) = enc1.terminate();
        for (int i = 0; i < 3; ++i)
            std::tie(xp[i], zp[i]) = enc2.terminate();

        d0[k] = x[0], d0[k + 1] = z[1], d0[k + 2] = xp[0], d0[k + 3] = zp[1];
        d1[k] = z[0], d1[k + 1] = x[2], d1[k + 2] = zp[0], d1[k + 3] = xp[2];
        d2[k] = x[1], d2[k + 1] = z[2], d2[k + 2] = xp[1], d2[k + 3] = zp[2];
        return out;
    }
}
