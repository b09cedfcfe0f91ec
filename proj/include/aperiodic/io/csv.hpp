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

#ifndef APERIODIC_IO_CSV_HPP
#define APERIODIC_IO_CSV_HPP

#include "../array.hpp"
#include "../errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace aperiodic::io
{
    // Fixed 9-significant-digit rendering used by every emitted file.
    inline std::string format_number(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.9g", v);
        return buf;
    }

    // v rounded to 9 significant digits (for JSON, whose writer prints the
    // shortest round-trip representation).
    inline double round9(double v)
    {
        if (!std::isfinite(v))
            return v;
        return std::stod(format_number(v));
    }

    inline void write_text_file(const std::filesystem::path &path, const std::string &content)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open '" + path.string() + "' for writing");
        out << content;
        out.close();
        if (!out)
            throw IoError("failed writing '" + path.string() + "'");
    }

    inline std::string read_text_file(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError("cannot open '" + path.string() + "' for reading");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    inline constexpr const char *layout_header = "position_lambda";

    // Shortest round-trip digits so that a written layout parses back
    // bit-identically.
    inline std::string layout_to_csv(const ArrayLayout &layout)
    {
        std::string out = std::string(layout_header) + "\n";
        for (double x : layout.positions())
        {
            char buf[64];
            const auto res = std::to_chars(buf, buf + sizeof buf, x);
            out.append(buf, res.ptr);
            out += '\n';
        }
        return out;
    }

    inline ArrayLayout layout_from_csv(const std::string &text, const std::string &origin = "<layout>")
    {
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line))
            throw IoError(origin + ": empty layout file");
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line != layout_header)
            throw IoError(origin + ": expected header '" + std::string(layout_header) + "', got '" + line + "'");
        std::vector<double> x;
        std::size_t line_no = 1;
        while (std::getline(in, line))
        {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty())
                continue;
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
            if (ec != std::errc() || ptr != line.data() + line.size())
                throw IoError(origin + ": line " + std::to_string(line_no) + ": not a number: '" + line + "'");
            x.push_back(v);
        }
        try
        {
            return ArrayLayout(std::move(x));
        }
        catch (const InvalidArgument &e)
        {
            throw IoError(origin + ": " + e.what());
        }
    }

    inline void write_layout(const std::filesystem::path &path, const ArrayLayout &layout)
    {
        write_text_file(path, layout_to_csv(layout));
    }

    inline ArrayLayout read_layout(const std::filesystem::path &path)
    {
        return layout_from_csv(read_text_file(path), path.string());
    }

} // namespace aperiodic::io

#endif
