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
#ifndef APERIODIC_ARRAY_HPP
#define APERIODIC_ARRAY_HPP

#include "errors.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace aperiodic
{
    // Element positions of a linear array, in wavelengths, anchored at the origin.
    class ArrayLayout
    {
    public:
        ArrayLayout() = default;

        // Throws InvalidArgument unless positions are finite, strictly ascending
        // and start at 0.
        explicit ArrayLayout(std::vector<double> positions) : positions_(std::move(positions))
        {
            if (positions_.empty())
                throw InvalidArgument("ArrayLayout: at least one element is required");
            if (positions_.front() != 0.0)
                throw InvalidArgument("ArrayLayout: first position must be 0, got " + std::to_string(positions_.front()));
            for (std::size_t m = 0; m < positions_.size(); ++m)
            {
                if (!std::isfinite(positions_[m]))
                    throw InvalidArgument("ArrayLayout: non-finite position at index " + std::to_string(m));
                if (m > 0 && !(positions_[m] > positions_[m - 1]))
                    throw InvalidArgument("ArrayLayout: positions must be strictly ascending (index " + std::to_string(m) + ")");
            }
        }

        std::size_t size() const noexcept { return positions_.size(); }
        std::span<const double> positions() const noexcept { return positions_; }
        double operator[](std::size_t m) const { return positions_[m]; }
        double aperture() const noexcept { return positions_.empty() ? 0.0 : positions_.back() - positions_.front(); }

        bool operator==(const ArrayLayout &) const = default;

    private:
        std::vector<double> positions_;
    };

    // M equispaced elements on [0, aperture].
    inline ArrayLayout regular_layout(std::size_t M, double aperture)
    {
        if (M < 2)
            throw InvalidArgument("regular_layout: M must be >= 2, got " + std::to_string(M));
        if (!(aperture > 0.0) || !std::isfinite(aperture))
            throw InvalidArgument("regular_layout: aperture must be > 0");

        std::vector<double> x(M);
        const double last = static_cast<double>(M - 1);
        for (std::size_t m = 0; m < M; ++m)
            x[m] = static_cast<double>(m) * aperture / last;
        return ArrayLayout(std::move(x));
    }

    // Normalized Huygens-source (cardioid) field pattern, theta from broadside.
    inline double huygens_gain(double theta) noexcept
    {
        return 0.5 * (1.0 + std::cos(theta));
    }

} // namespace aperiodic

#endif
