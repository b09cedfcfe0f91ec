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

#ifndef APERIODIC_IO_REPORT_HPP
#define APERIODIC_IO_REPORT_HPP

#include "../engine.hpp"
#include "../experiment.hpp"
#include "../synthesis.hpp"
#include "csv.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#ifndef APERIODIC_VERSION
#define APERIODIC_VERSION "0.0.0"
#endif

namespace aperiodic::io
{
    using json = nlohmann::ordered_json;

    inline std::string sha256_hex(const std::string &data)
    {
        unsigned char digest[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
            throw IoError("sha256 digest failed");
        std::string hex;
        hex.reserve(2 * len);
        char buf[3];
        for (unsigned int i = 0; i < len; ++i)
        {
            std::snprintf(buf, sizeof buf, "%02x", digest[i]);
            hex += buf;
        }
        return hex;
    }

    // Finite numbers rounded to 9 significant digits; non-finite values become null.
    inline json number(double v)
    {
        if (!std::isfinite(v))
            return nullptr;
        return round9(v);
    }

    inline json scenario_json(const ScenarioConfig &sc)
    {
        return json{{"M", sc.M},
                    {"K", sc.K},
                    {"aperture", number(sc.aperture_lambda())},
                    {"waves_per_ue", sc.waves_per_ue},
                    {"snr_db", number(sc.snr_db)},
                    {"realizations", sc.realizations},
                    {"master_seed", sc.master_seed},
                    {"link", to_string(sc.link)}};
    }

    inline std::string cdf_to_csv(const SinrCdf &cdf)
    {
        std::string out = "sinr_db,cdf\n";
        const auto counts = cdf.counts();
        std::size_t first = counts.size();
        std::size_t last = 0;
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (counts[i] != 0)
            {
                first = std::min(first, i);
                last = i;
            }
        if (first == counts.size())
            return out;
        const double total = static_cast<double>(cdf.count());
        std::uint64_t cum = 0;
        for (std::size_t i = first; i <= last; ++i)
        {
            cum += counts[i];
            out += format_number(cdf.bin_center(i)) + "," + format_number(static_cast<double>(cum) / total) + "\n";
        }
        return out;
    }

    inline std::string power_to_csv(const SimulationReport &rep)
    {
        std::string out = "element_index,position_lambda,mu,sigma2\n";
        const auto &p = rep.power_profile;
        for (std::size_t m = 0; m < p.mu.size(); ++m)
            out += std::to_string(m) + "," + format_number(rep.layout[m]) + "," + format_number(p.mu[m]) + "," +
                   format_number(p.sigma2[m]) + "\n";
        return out;
    }

    inline std::string profile_to_csv(const ArrayLayout &dense, const PowerProfile &profile)
    {
        std::string out = "position_lambda,mu\n";
        for (std::size_t m = 0; m < profile.mu.size(); ++m)
            out += format_number(dense[m]) + "," + format_number(profile.mu[m]) + "\n";
        return out;
    }

    inline json simulation_json(const SimulationReport &rep)
    {
        json j;
        j["sum_rate"] = number(rep.sum_rate);
        j["power_spread_db"] = number(rep.power_spread.db);
        j["power_spread_unbounded"] = rep.power_spread.unbounded;
        j["power_taper_db"] = number(rep.power_taper_db);
        j["sinr_p5_db"] = rep.sinr_cdf.count() > 0 ? number(rep.sinr_cdf.percentile(sinrg_percentile)) : json(nullptr);
        j["sinr_samples"] = rep.sinr_cdf.count();
        j["sinr_underflow"] = rep.sinr_cdf.underflow();
        j["sinr_overflow"] = rep.sinr_cdf.overflow();
        j["accepted_count"] = rep.accepted_count;
        j["rejected_count"] = rep.rejected_count;
        j["valid"] = rep.valid;
        j["normalization"] = number(rep.normalization);
        return j;
    }

    // Collects emitted files and writes manifest.json last.
    class OutputSet
    {
    public:
        explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)), start_(std::chrono::steady_clock::now())
        {
            std::error_code ec;
            std::filesystem::create_directories(dir_, ec);
            if (ec)
                throw IoError("cannot create output directory '" + dir_.string() + "': " + ec.message());
        }

        void write(const std::string &relative, const std::string &content)
        {
            const auto path = dir_ / relative;
            if (path.has_parent_path())
            {
                std::error_code ec;
                std::filesystem::create_directories(path.parent_path(), ec);
                if (ec)
                    throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
            }
            write_text_file(path, content);
            files_.push_back({{"path", relative}, {"bytes", content.size()}, {"sha256", sha256_hex(content)}});
        }

        void write_json(const std::string &relative, const json &j) { write(relative, j.dump(2) + "\n"); }

        std::vector<std::string> finish(const std::string &command, const json &config, std::uint64_t seed)
        {
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
            json manifest{{"tool", "apmimo"},
                          {"version", APERIODIC_VERSION},
                          {"command", command},
                          {"master_seed", seed},
                          {"config", config},
                          {"timing", {{"elapsed_seconds", elapsed}}},
                          {"files", files_}};
            write_text_file(dir_ / "manifest.json", manifest.dump(2) + "\n");
            std::vector<std::string> names;
            for (const auto &f : files_)
                names.push_back(f["path"].get<std::string>());
            names.push_back("manifest.json");
            return names;
        }

        const std::filesystem::path &dir() const noexcept { return dir_; }

    private:
        std::filesystem::path dir_;
        std::chrono::steady_clock::time_point start_;
        json files_ = json::array();
    };

    // cdf.csv, power.csv, layout.csv, summary.json and manifest.json.
    inline std::vector<std::string> emit_reports(const SimulationReport &rep, const std::filesystem::path &out_dir,
                                                 const json &config_echo = nullptr)
    {
        OutputSet out(out_dir);
        out.write("cdf.csv", cdf_to_csv(rep.sinr_cdf));
        out.write("power.csv", power_to_csv(rep));
        out.write("layout.csv", layout_to_csv(rep.layout));

        json summary{{"command", "simulate"}, {"master_seed", rep.scenario.master_seed}};
        summary["scenario"] = scenario_json(rep.scenario);
        summary["result"] = simulation_json(rep);
        out.write_json("summary.json", summary);
        return out.finish("simulate", config_echo.is_null() ? scenario_json(rep.scenario) : config_echo,
                          rep.scenario.master_seed);
    }

    inline json comparison_json(const ComparisonReport &rep)
    {
        json j;
        j["sinrg_db"] = number(rep.sinrg_db);
        j["sinrg_halfwidth_db"] = number(rep.sinrg_halfwidth_db);
        j["psc_db"] = rep.psc_db ? number(*rep.psc_db) : json(nullptr);
        j["psc_defined"] = rep.psc_db.has_value();
        j["sr_gain_fraction"] = number(rep.sr_gain_fraction);
        return j;
    }

    // Top level: summary.json, layout.csv (aperiodic), profile.csv when
    // synthesized; per-array files under regular/ and aperiodic/.
    inline std::vector<std::string> emit_comparison(const ComparisonReport &rep, const std::filesystem::path &out_dir,
                                                    const json &config_echo = nullptr)
    {
        OutputSet out(out_dir);
        for (const auto &[name, sub] : {std::pair{"regular", &rep.regular}, std::pair{"aperiodic", &rep.aperiodic}})
        {
            const std::string dir = name;
            out.write(dir + "/cdf.csv", cdf_to_csv(sub->sinr_cdf));
            out.write(dir + "/power.csv", power_to_csv(*sub));
            out.write(dir + "/layout.csv", layout_to_csv(sub->layout));
        }
        out.write("layout.csv", layout_to_csv(rep.aperiodic.layout));
        if (rep.synthesis)
            out.write("profile.csv", profile_to_csv(rep.synthesis->dense_layout, rep.synthesis->dense_power));

        const auto &sc = rep.regular.scenario;
        json summary{{"command", "compare"}, {"master_seed", sc.master_seed}};
        summary["scenario"] = scenario_json(sc);
        summary["comparison"] = comparison_json(rep);
        summary["regular"] = simulation_json(rep.regular);
        summary["aperiodic"] = simulation_json(rep.aperiodic);
        summary["layout_source"] = rep.synthesis ? "synthesized" : "provided";
        if (rep.synthesis)
        {
            summary["synthesis"] = {{"dense_elements", rep.synthesis->dense_layout.size()},
                                    {"dense_rejected", rep.synthesis->dense_rejected},
                                    {"separations_enforced", rep.synthesis->separations_enforced},
                                    {"low_realizations", rep.synthesis->low_realizations}};
        }
        out.write_json("summary.json", summary);
        return out.finish("compare", config_echo.is_null() ? scenario_json(sc) : config_echo, sc.master_seed);
    }

    inline std::vector<std::string> emit_synthesis(const ScenarioConfig &sc, const SynthesisResult &res,
                                                   const std::filesystem::path &out_dir,
                                                   const json &config_echo = nullptr)
    {
        OutputSet out(out_dir);
        out.write("layout.csv", layout_to_csv(res.layout));
        out.write("profile.csv", profile_to_csv(res.dense_layout, res.dense_power));
        json summary{{"command", "synthesize"}, {"master_seed", sc.master_seed}};
        summary["scenario"] = scenario_json(sc);
        summary["synthesis"] = {{"elements", res.layout.size()},
                                {"dense_elements", res.dense_layout.size()},
                                {"dense_samples", res.dense_power.count},
                                {"dense_rejected", res.dense_rejected},
                                {"separations_enforced", res.separations_enforced},
                                {"low_realizations", res.low_realizations}};
        out.write_json("summary.json", summary);
        return out.finish("synthesize", config_echo.is_null() ? scenario_json(sc) : config_echo, sc.master_seed);
    }

    inline std::string sweep_to_csv(const std::vector<SweepRow> &rows)
    {
        std::string out = "M,K,crowdedness,sinrg_db,sinrg_halfwidth_db,psc_db,sr_gain_fraction,skipped\n";
        for (const auto &r : rows)
        {
            out += std::to_string(r.M) + "," + std::to_string(r.K) + "," + format_number(r.crowdedness) + ",";
            if (r.skipped)
            {
                out += "nan,nan,nan,nan,1\n";
                continue;
            }
            out += format_number(r.sinrg_db) + "," + format_number(r.sinrg_halfwidth_db) + "," +
                   (r.psc_db ? format_number(*r.psc_db) : std::string("nan")) + "," + format_number(r.sr_gain_fraction) +
                   ",0\n";
        }
        return out;
    }

    inline std::vector<std::string> emit_sweep(const ScenarioConfig &base, const std::vector<SweepRow> &rows,
                                               const std::filesystem::path &out_dir, const json &config_echo = nullptr)
    {
        OutputSet out(out_dir);
        out.write("sweep.csv", sweep_to_csv(rows));
        json table = json::array();
        for (const auto &r : rows)
        {
            json row{{"M", r.M}, {"K", r.K}, {"crowdedness", number(r.crowdedness)}, {"skipped", r.skipped}};
            if (r.skipped)
                row["notice"] = r.notice;
            else
            {
                row["sinrg_db"] = number(r.sinrg_db);
                row["sinrg_halfwidth_db"] = number(r.sinrg_halfwidth_db);
                row["psc_db"] = r.psc_db ? number(*r.psc_db) : json(nullptr);
                row["sr_gain_fraction"] = number(r.sr_gain_fraction);
                row["ps_regular_db"] = number(r.ps_regular_db);
                row["ps_aperiodic_db"] = number(r.ps_aperiodic_db);
            }
            table.push_back(std::move(row));
        }
        json summary{{"command", "sweep"}, {"master_seed", base.master_seed}};
        summary["scenario"] = scenario_json(base);
        summary["rows"] = std::move(table);
        out.write_json("summary.json", summary);
        return out.finish("sweep", config_echo.is_null() ? scenario_json(base) : config_echo, base.master_seed);
    }

} // namespace aperiodic::io

#endif
