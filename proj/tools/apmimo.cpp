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

// apmimo: command-line front-end for MU-MIMO array evaluation and synthesis.
//
//   apmimo simulate   [options] [--layout file]   one layout (regular by default)
//   apmimo synthesize [options]                   aperiodic layout + dense mu profile
//   apmimo compare    [options] [--layout file]   aperiodic vs regular
//   apmimo sweep      [options] --bs-counts 16,32,64 --crowdedness 0.1,0.25,0.3

#include "aperiodic.hpp"
#include "aperiodic/io/config.hpp"
#include "aperiodic/io/csv.hpp"
#include "aperiodic/io/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace
{
    using namespace aperiodic;

    struct Flags
    {
        std::string config_file;
        std::optional<std::size_t> M, K, realizations;
        std::optional<double> aperture, snr_db, oversampling;
        std::optional<int> waves_per_ue;
        std::optional<std::uint64_t> seed;
        std::optional<std::string> link;
        std::optional<std::size_t> synthesis_realizations;
        unsigned workers = 1;
        std::string out = "out";
        std::string layout_file;
        std::vector<std::size_t> bs_counts{16, 32, 64};
        std::vector<double> crowdedness{0.10, 0.25, 0.30};
    };

    void add_scenario_flags(CLI::App &cmd, Flags &f)
    {
        cmd.add_option("-c,--config", f.config_file, "key=value scenario file");
        cmd.add_option("-M,--elements", f.M, "BS antenna elements");
        cmd.add_option("-K,--users", f.K, "single-antenna UEs");
        cmd.add_option("--aperture", f.aperture, "aperture in wavelengths (default M-1)");
        cmd.add_option("-L,--waves-per-ue,--waves_per_ue", f.waves_per_ue, "plane waves per UE, 1 (RLOS) .. 20 (RIMP)");
        cmd.add_option("--snr-db,--snr_db", f.snr_db, "average per-user SNR in dB");
        cmd.add_option("-n,--realizations", f.realizations, "Monte-Carlo realizations");
        cmd.add_option("-s,--seed,--master-seed", f.seed, "master seed");
        cmd.add_option("--link", f.link, "downlink or uplink")->check(CLI::IsMember({"downlink", "uplink"}));
        cmd.add_option("-j,--workers", f.workers, "worker threads")->check(CLI::PositiveNumber);
        cmd.add_option("-o,--out", f.out, "output directory");
    }

    void add_synthesis_flags(CLI::App &cmd, Flags &f)
    {
        cmd.add_option("--oversampling", f.oversampling, "dense reference elements per wavelength (default 8)");
        cmd.add_option("--synthesis-realizations,--synthesis_realizations", f.synthesis_realizations,
                       "realizations for the dense reference simulation (default 1e5)");
    }

    struct Resolved
    {
        ScenarioConfig scenario;
        SynthesisOptions synthesis;
        io::json echo;
    };

    Resolved resolve(const Flags &f)
    {
        io::ConfigFile cfg;
        if (!f.config_file.empty())
            cfg = io::parse_config_file(io::read_text_file(f.config_file));
        auto &sc = cfg.scenario;
        if (f.M)
            sc.M = *f.M;
        if (f.K)
            sc.K = *f.K;
        if (f.aperture)
            sc.aperture = *f.aperture;
        if (f.waves_per_ue)
            sc.waves_per_ue = *f.waves_per_ue;
        if (f.snr_db)
            sc.snr_db = *f.snr_db;
        if (f.realizations)
            sc.realizations = *f.realizations;
        if (f.seed)
            sc.master_seed = *f.seed;
        if (f.link)
            sc.link = *f.link == "uplink" ? Link::uplink : Link::downlink;
        io::validate_scenario(sc);

        Resolved r;
        r.scenario = sc;
        r.synthesis.oversampling = f.oversampling.value_or(cfg.oversampling.value_or(8.0));
        r.synthesis.realizations = f.synthesis_realizations.value_or(cfg.synthesis_realizations.value_or(100000));
        r.synthesis.run.workers = f.workers;
        r.echo = io::scenario_json(sc);
        r.echo["oversampling"] = io::number(r.synthesis.oversampling);
        r.echo["synthesis_realizations"] = r.synthesis.realizations;
        if (!f.layout_file.empty())
            r.echo["layout_file"] = f.layout_file;
        return r;
    }

    void report_files(const std::vector<std::string> &files, const std::string &dir)
    {
        for (const auto &name : files)
            std::cout << dir << "/" << name << "\n";
    }

    void warn_invalid(const SimulationReport &rep, const char *what)
    {
        if (!rep.valid)
            std::cerr << "warning: " << what << " report flagged invalid: " << rep.rejected_count
                      << " rejected realizations (" << rep.rejected_fraction() * 100.0 << "%)\n";
        if (rep.sinr_cdf.underflow() + rep.sinr_cdf.overflow() > 0)
            std::cerr << "warning: " << what << " SINR histogram clamped " << rep.sinr_cdf.underflow() << " low / "
                      << rep.sinr_cdf.overflow() << " high samples\n";
    }

    int exit_code(const std::string &category)
    {
        if (category == "parse-error" || category == "invalid-argument")
            return 2;
        if (category == "io-error")
            return 3;
        if (category == "singular-channel")
            return 4;
        if (category == "invalid-state")
            return 5;
        if (category == "degenerate-profile")
            return 6;
        return 1;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"MU-MIMO zero-forcing evaluation and aperiodic array synthesis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(APERIODIC_VERSION));

    Flags f;
    auto *simulate = app.add_subcommand("simulate", "evaluate one layout");
    add_scenario_flags(*simulate, f);
    simulate->add_option("--layout", f.layout_file, "layout CSV (default: regular array)");

    auto *synthesize = app.add_subcommand("synthesize", "synthesize an aperiodic layout");
    add_scenario_flags(*synthesize, f);
    add_synthesis_flags(*synthesize, f);

    auto *compare = app.add_subcommand("compare", "aperiodic vs regular array");
    add_scenario_flags(*compare, f);
    add_synthesis_flags(*compare, f);
    compare->add_option("--layout", f.layout_file, "aperiodic layout CSV (skips synthesis)");

    auto *sweep_cmd = app.add_subcommand("sweep", "SINRG/PSC over BS size and crowdedness");
    add_scenario_flags(*sweep_cmd, f);
    add_synthesis_flags(*sweep_cmd, f);
    sweep_cmd->add_option("--bs-counts", f.bs_counts, "BS element counts")->delimiter(',');
    sweep_cmd->add_option("--crowdedness", f.crowdedness, "K/M fractions")->delimiter(',');

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e);
    }

    try
    {
        const Resolved r = resolve(f);
        const auto &sc = r.scenario;
        RunOptions run;
        run.workers = f.workers;

        if (simulate->parsed())
        {
            const ArrayLayout layout =
                f.layout_file.empty() ? regular_layout(sc.M, sc.aperture_lambda()) : io::read_layout(f.layout_file);
            const SimulationReport rep = run_simulation(sc, layout, run);
            warn_invalid(rep, "simulation");
            report_files(io::emit_reports(rep, f.out, r.echo), f.out);
        }
        else if (synthesize->parsed())
        {
            const SynthesisResult res = synthesize_aperiodic(sc, r.synthesis);
            if (res.low_realizations)
                std::cerr << "warning: fewer than " << min_synthesis_realizations
                          << " realizations in the dense reference simulation\n";
            if (res.separations_enforced > 0)
                std::cerr << "note: " << res.separations_enforced << " elements moved to keep "
                          << r.synthesis.min_separation << " lambda separation\n";
            report_files(io::emit_synthesis(sc, res, f.out, r.echo), f.out);
        }
        else if (compare->parsed())
        {
            CompareOptions opts;
            opts.synthesis = r.synthesis;
            if (!f.layout_file.empty())
                opts.aperiodic_layout = io::read_layout(f.layout_file);
            const ComparisonReport rep = compare_layouts(sc, opts);
            warn_invalid(rep.regular, "regular");
            warn_invalid(rep.aperiodic, "aperiodic");
            report_files(io::emit_comparison(rep, f.out, r.echo), f.out);
        }
        else if (sweep_cmd->parsed())
        {
            CompareOptions opts;
            opts.synthesis = r.synthesis;
            const auto rows = aperiodic::sweep(sc, f.bs_counts, f.crowdedness, opts);
            for (const auto &row : rows)
                if (row.skipped)
                    std::cerr << "notice: skipped M=" << row.M << " crowdedness=" << row.crowdedness << ": "
                              << row.notice << "\n";
            io::json echo = r.echo;
            echo["bs_counts"] = f.bs_counts;
            echo["crowdedness"] = f.crowdedness;
            report_files(io::emit_sweep(sc, rows, f.out, echo), f.out);
        }
    }
    catch (const aperiodic::Error &e)
    {
        std::cerr << "error: " << e.category() << ": " << e.what() << "\n";
        return exit_code(e.category());
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
