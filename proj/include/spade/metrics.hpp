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
#include <cstddef>
#include <cstdio>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spade
{
    /// Signal-to-distortion ratio in dB, 20 log10(||ref|| / ||ref - est||).
    /// Exact recovery yields +infinity. No alignment or gain is fitted.
    inline double sdr(std::span<const double> reference, std::span<const double> estimate)
    {
        if (reference.size() != estimate.size()) throw std::invalid_argument("sdr: length mismatch");
        double signal = 0.0, error = 0.0;
        for (std::size_t n = 0; n < reference.size(); ++n)
        {
            signal += reference[n] * reference[n];
            const double d = reference[n] - estimate[n];
            error += d * d;
        }
        if (signal == 0.0) throw std::invalid_argument("sdr: reference is all zero");
        if (error == 0.0) return std::numeric_limits<double>::infinity();
        return 10.0 * std::log10(signal / error);
    }

    inline double sdr_masked(std::span<const double> reference, std::span<const double> estimate,
                             std::span<const std::size_t> indices)
    {
        if (indices.empty()) throw std::invalid_argument("sdr_masked: empty index set");
        if (reference.size() != estimate.size()) throw std::invalid_argument("sdr_masked: length mismatch");
        std::vector<double> ref, est;
        ref.reserve(indices.size());
        est.reserve(indices.size());
        for (auto i : indices)
        {
            if (i >= reference.size()) throw std::out_of_range("sdr_masked: index out of range");
            ref.push_back(reference[i]);
            est.push_back(estimate[i]);
        }
        return sdr(ref, est);
    }

    /// "inf" for exact recovery, "nan" when undefined.
    inline std::string format_db(double db, int precision = 3)
    {
        if (std::isinf(db)) return db > 0 ? "inf" : "-inf";
        if (std::isnan(db)) return "nan";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f", precision, db);
        return buf;
    }

    struct FrameStats
    {
        std::size_t iterations = 0;
        double final_residual = 0.0;
        std::size_t final_k = 0;
        bool converged = false;
    };

    struct DeclipReport
    {
        double sdr_clipped_input = std::numeric_limits<double>::quiet_NaN();
        double sdr_restored = std::numeric_limits<double>::quiet_NaN();
        double sdr_on_clipped_samples = std::numeric_limits<double>::quiet_NaN();
        std::size_t num_clipped = 0;
        std::vector<FrameStats> per_frame;
        double runtime = 0.0;  // seconds

        double mean_iterations() const noexcept
        {
            if (per_frame.empty()) return 0.0;
            double acc = 0.0;
            for (const auto &f : per_frame) acc += static_cast<double>(f.iterations);
            return acc / static_cast<double>(per_frame.size());
        }

        std::size_t frames_converged() const noexcept
        {
            std::size_t c = 0;
            for (const auto &f : per_frame) c += f.converged ? 1 : 0;
            return c;
        }
    };
}  // namespace spade
