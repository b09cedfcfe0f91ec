// SPDX-License-Identifier: Apache-2.0
//
// aperiodic-mimo: Monte-Carlo MU-MIMO evaluation and aperiodic array synthesis
// Copyright (C) 2026 The aperiodic-mimo authors
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

#ifndef APERIODIC_EXPERIMENT_HPP
#define APERIODIC_EXPERIMENT_HPP

#include "array.hpp"
#include "engine.hpp"
#include "metrics.hpp"
#include "scenario.hpp"
#include "synthesis.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace aperiodic
{
    struct CompareOptions
    {
        SynthesisOptions synthesis;
        // Used verbatim instead of synthesizing when set.
        std::optional<ArrayLayout> aperiodic_layout;
    };

    struct ComparisonReport
    {
        SimulationReport regular;
        SimulationReport aperiodic;
        std::optional<SynthesisResult> synthesis; // empty when the layout was provided
        double sinrg_db = 0.0;
        double sinrg_halfwidth_db = 0.0; // 95% interval half-width, independent-sample bound
        std::optional<double> psc_db;
        double sr_gain_fraction = 0.0;
    };

    // Regular and aperiodic arrays with the same aperture and element count,
    // evaluated on common random numbers (same master seed).
    inline ComparisonReport compare_layouts(const ScenarioConfig &scenario, const CompareOptions &opts = {})
    {
        scenario.validate();
        ComparisonReport out;

        ArrayLayout aperiodic_layout;
        if (opts.aperiodic_layout)
        {
            aperiodic_layout = *opts.aperiodic_layout;
        }
        else
        {
            out.synthesis = synthesize_aperiodic(scenario, opts.synthesis);
            aperiodic_layout = out.synthesis->layout;
        }
        const ArrayLayout regular = regular_layout(scenario.M, scenario.aperture_lambda());

        const RunOptions &run = opts.synthesis.run;
        out.regular = run_simulation(scenario, regular, run);
        out.aperiodic = run_simulation(scenario, aperiodic_layout, run);

        out.sinrg_db = sinr_gain(out.aperiodic.sinr_cdf, out.regular.sinr_cdf);
        const auto ia = out.aperiodic.sinr_cdf.percentile_interval(sinrg_percentile);
        const auto ir = out.regular.sinr_cdf.percentile_interval(sinrg_percentile);
        const double ha = 0.5 * (ia.hi - ia.lo);
        const double hr = 0.5 * (ir.hi - ir.lo);
        out.sinrg_halfwidth_db = std::sqrt(ha * ha + hr * hr);

        out.psc_db = psc(out.regular.power_spread.db, out.aperiodic.power_spread.db);
        if (out.regular.sum_rate > 0.0)
            out.sr_gain_fraction = out.aperiodic.sum_rate / out.regular.sum_rate - 1.0;
        return out;
    }

    struct SweepRow
    {
        std::size_t M = 0;
        std::size_t K = 0;
        double crowdedness = 0.0;
        bool skipped = false;
        std::string notice;
        double sinrg_db = 0.0;
        double sinrg_halfwidth_db = 0.0;
        std::optional<double> psc_db;
        double sr_gain_fraction = 0.0;
        double ps_regular_db = 0.0;
        double ps_aperiodic_db = 0.0;
    };

    // One comparison per (M, crowdedness) grid point, K = round(crowdedness * M).
    // Every point is re-synthesized in its own environment and aperture (M - 1).
    inline std::vector<SweepRow> sweep(const ScenarioConfig &base, const std::vector<std::size_t> &bs_counts,
                                       const std::vector<double> &crowdedness, const CompareOptions &opts = {})
    {
        std::vector<SweepRow> rows;
        for (const std::size_t M : bs_counts)
        {
            for (const double frac : crowdedness)
            {
                SweepRow row;
                row.M = M;
                row.crowdedness = frac;
                const double k = std::round(frac * static_cast<double>(M));
                row.K = k > 0.0 ? static_cast<std::size_t>(k) : 0;

                ScenarioConfig sc = base;
                sc.M = M;
                sc.K = row.K;
                sc.aperture.reset();
                try
                {
                    sc.validate();
                }
                catch (const InvalidArgument &e)
                {
                    row.skipped = true;
                    row.notice = e.what();
                    rows.push_back(std::move(row));
                    continue;
                }

                CompareOptions point = opts;
                point.aperiodic_layout.reset();
                const ComparisonReport rep = compare_layouts(sc, point);
                row.sinrg_db = rep.sinrg_db;
                row.sinrg_halfwidth_db = rep.sinrg_halfwidth_db;
                row.psc_db = rep.psc_db;
                row.sr_gain_fraction = rep.sr_gain_fraction;
                row.ps_regular_db = rep.regular.power_spread.db;
                row.ps_aperiodic_db = rep.aperiodic.power_spread.db;
                rows.push_back(std::move(row));
            }
        }
        return rows;
    }

} // namespace aperiodic

#endif
