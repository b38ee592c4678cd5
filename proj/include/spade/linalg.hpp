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

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <type_traits>

namespace spade
{
    inline double norm2(std::span<const double> v) noexcept
    {
        double acc = 0.0;
        for (double x : v) acc += x * x;
        return std::sqrt(acc);
    }

    inline double norm2(std::span<const std::complex<double>> v) noexcept
    {
        double acc = 0.0;
        for (const auto &c : v) acc += std::norm(c);
        return std::sqrt(acc);
    }

    /// ||a - b||_2
    template <typename T>
    double distance2(std::span<const T> a, std::span<const T> b)
    {
        if (a.size() != b.size()) throw std::invalid_argument("distance2: length mismatch");
        double acc = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            if constexpr (std::is_floating_point_v<T>)
                acc += (a[i] - b[i]) * (a[i] - b[i]);
            else
                acc += std::norm(a[i] - b[i]);
        }
        return std::sqrt(acc);
    }

    /// Real inner product on C^P (stacked real/imaginary parts).
    inline double real_inner(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b)
    {
        if (a.size() != b.size()) throw std::invalid_argument("real_inner: length mismatch");
        double acc = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) acc += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        return acc;
    }

    inline double real_inner(std::span<const double> a, std::span<const double> b)
    {
        if (a.size() != b.size()) throw std::invalid_argument("real_inner: length mismatch");
        double acc = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
        return acc;
    }
}  // namespace spade
