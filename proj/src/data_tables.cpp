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

#include "embms/data_tables.hpp"

#include "embms/errors.hpp"

#include <cstdlib>

namespace embms
{
    std::filesystem::path default_data_dir()
    {
        if (const char *env = std::getenv("EMBMS_DATA_DIR"); env != nullptr && *env != '\0')
            return env;
        return EMBMS_DATA_DIR;
    }

    DataTables DataTables::load(const std::filesystem::path &dir)
    {
        if (!std::filesystem::is_directory(dir))
            throw DataError("data directory not found: " + dir.string());
        DataTables t;
        t.dir = dir;
        t.qpp = fec::QppTable::load(dir / "qpp.csv");
        t.constellations = bicm::ConstellationSet::load(dir / "constellations.csv");
        // Parse once so a broken MCS file is reported up front.
        load_mcs_table(Mode::scptm, t.mcs_path());
        load_mcs_table(Mode::mbsfn, t.mcs_path());
        return t;
    }
}
