// SPDX-License-Identifier: Apache-2.0
//
// spade-declip: sparse audio declipping via scaled ADMM
// Copyright (C) 2026 The spade-declip authors
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

#include "spade/frames.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>

namespace spade
{
    /// One sinusoidal component; frequency in cycles per sample.
    struct Partial
    {
        double frequency;
        double amplitude;
        double phase;
    };

    /// Frequencies sit on the 1024-point DFT grid (bins 12, 28, 45), so the
    /// mix is exactly sparse in every default-sized frame at any hop.
    inline constexpr std::array<Partial, 3> kTestPartials{{
        {12.0 / 1024, 1.0, 0.3},
        {28.0 / 1024, 0.6, 1.7},
        {45.0 / 1024, 0.35, -0.9},
    }};

    /// Sum of sinusoids, rescaled so that max |x| == peak.
    template <typename Partials = decltype(kTestPartials)>
    RealVector sinusoid_mix(std::size_t length, const Partials &partials = kTestPartials, double peak = 1.0)
    {
        RealVector x(length, 0.0);
        for (const auto &pt : partials)
            for (std::size_t n = 0; n < length; ++n)
                x[n] += pt.amplitude * std::sin(2.0 * std::numbers::pi * pt.frequency * static_cast<double>(n) + pt.phase);
        double m = 0.0;
        for (double v : x) m = std::max(m, std::abs(v));
        if (m > 0.0)
            for (double &v : x) v *= peak / m;
        return x;
    }

    inline double peak_abs(std::span<const double> x) noexcept
    {
        double m = 0.0;
        for (double v : x) m = std::max(m, std::abs(v));
        return m;
    }
}  // namespace spade
