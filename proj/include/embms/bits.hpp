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

#include <cstdint>
#include <span>
#include <vector>

namespace embms
{
    // One bit per element, values 0 or 1.
    using Bits = std::vector<std::uint8_t>;
    using BitSpan = std::span<const std::uint8_t>;

    // Log-likelihood ratios, log P(b=0)/P(b=1): positive favours bit 0.
    using Llrs = std::vector<float>;
    using LlrSpan = std::span<const float>;

    inline constexpr float default_llr_clamp = 30.0f;
}
