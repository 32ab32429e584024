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

#include "embms/harness.hpp"

#include <ostream>
#include <string>
#include <string_view>

namespace embms::harness
{
    inline constexpr std::string_view csv_header =
        "mode,channel,n_tx,n_rx,mcs,modulation_order,code_rate,cnr_db,blocks,block_errors,bler,threshold_cnr_db,"
        "se_bits_per_re";

    /// Fixed-point text with '.' as decimal separator, independent of the global locale.
    std::string format_fixed(double value, int decimals);

    /// Per MCS (ascending): a summary row with threshold and SE, then every evaluated point by
    /// ascending CNR. Capacity samples follow with an empty MCS field.
    void write_curve_csv(std::ostream &out, const SimConfig &config, const SeCurve &curve);

    void write_point_csv(std::ostream &out, const SimConfig &config, const McsEntry &mcs, const BlerPoint &point);

    /// Analytic rows: MCS, modulation order, code rate and SE; no channel or CNR fields.
    void write_se_table_csv(std::ostream &out, Mode mode, int n_streams, const std::vector<McsEntry> &table);
}
