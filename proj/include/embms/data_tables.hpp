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

#include "embms/bicm.hpp"
#include "embms/fec/qpp.hpp"
#include "embms/numerology.hpp"

#include <filesystem>
#include <vector>

namespace embms
{
    /// $EMBMS_DATA_DIR when set, otherwise the directory configured at build time.
    std::filesystem::path default_data_dir();

    /// The bundled data files: MCS/TBS table, QPP parameters and constellations.
    struct DataTables
    {
        std::filesystem::path dir;
        fec::QppTable qpp;
        bicm::ConstellationSet constellations;

        std::filesystem::path mcs_path() const { return dir / "mcs_tbs.csv"; }
        std::vector<McsEntry> mcs_table(Mode mode, int n_rb) const { return load_mcs_table(mode, mcs_path(), n_rb); }

        /// Throws DataError if any file is missing or malformed.
        static DataTables load(const std::filesystem::path &dir = default_data_dir());
    };
}
