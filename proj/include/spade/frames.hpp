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

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spade
{
    using Complex = std::complex<double>;
    using RealVector = std::vector<double>;
    using ComplexVector = std::vector<Complex>;

    enum class FrameKind
    {
        UnitaryDFT,   ///< P == N
        RedundantDFT  ///< P > N, zero-padded DFT
    };

    /// Rational redundancy P/N, kept exact so that P is checked for integrality.
    struct Redundancy
    {
        std::size_t num = 1;
        std::size_t den = 1;

        constexpr double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    };

    /// Parses "2", "3/2" or a short decimal like "1.5".
    inline Redundancy parse_redundancy(const std::string &text)
    {
        auto fail = [&]() -> Redundancy { throw std::invalid_argument("invalid redundancy '" + text + "'"); };
        std::size_t num = 0, den = 1;
        try
        {
            if (auto slash = text.find('/'); slash != std::string::npos)
            {
                std::size_t pos_a = 0, pos_b = 0;
                const auto a = text.substr(0, slash), b = text.substr(slash + 1);
                num = std::stoul(a, &pos_a);
                den = std::stoul(b, &pos_b);
                if (pos_a != a.size() || pos_b != b.size()) return fail();
            }
            else if (auto dot = text.find('.'); dot != std::string::npos)
            {
                const auto frac = text.substr(dot + 1);
                const auto whole = text.substr(0, dot);
                if (frac.empty() || frac.size() > 6 || frac.find_first_not_of("0123456789") != std::string::npos ||
                    whole.find_first_not_of("0123456789") != std::string::npos)
                    return fail();
                for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
                num = (whole.empty() ? 0 : std::stoul(whole)) * den + std::stoul(frac);
            }
            else
            {
                std::size_t pos = 0;
                num = std::stoul(text, &pos);
                if (pos != text.size()) return fail();
            }
        }
        catch (const std::logic_error &)
        {
            return fail();
        }
        if (den == 0 || num < den) return fail();
        const auto g = std::gcd(num, den);
        return {num / g, den / g};
    }

    namespace detail
    {
        // FFTW planning is not thread-safe; execution on new arrays is.
        inline std::mutex &fftw_planner_mutex()
        {
            static std::mutex m;
            return m;
        }

        class DftPlans
        {
          public:
            explicit DftPlans(std::size_t n) : n_(n)
            {
                std::vector<Complex> in(n), out(n);
                auto *pin = reinterpret_cast<fftw_complex *>(in.data());
                auto *pout = reinterpret_cast<fftw_complex *>(out.data());
                const int len = static_cast<int>(n);
                std::lock_guard lock(fftw_planner_mutex());
                forward_ = fftw_plan_dft_1d(len, pin, pout, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
                backward_ = fftw_plan_dft_1d(len, pin, pout, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
                if (!forward_ || !backward_) throw std::runtime_error("FFTW planning failed");
            }

            DftPlans(const DftPlans &) = delete;
            DftPlans &operator=(const DftPlans &) = delete;

            ~DftPlans()
            {
                std::lock_guard lock(fftw_planner_mutex());
                if (forward_) fftw_destroy_plan(forward_);
                if (backward_) fftw_destroy_plan(backward_);
            }

            // Unnormalized: out[p] = sum_n in[n] exp(-+2 pi i p n / N).
            void forward(std::vector<Complex> &in, std::vector<Complex> &out) const { run(forward_, in, out); }
            void backward(std::vector<Complex> &in, std::vector<Complex> &out) const { run(backward_, in, out); }

          private:
            void run(fftw_plan plan, std::vector<Complex> &in, std::vector<Complex> &out) const
            {
                fftw_execute_dft(plan, reinterpret_cast<fftw_complex *>(in.data()),
                                 reinterpret_cast<fftw_complex *>(out.data()));
            }

            std::size_t n_;
            fftw_plan forward_ = nullptr;
            fftw_plan backward_ = nullptr;
        };
    }  // namespace detail

    /// Parseval tight frame built from a zero-padded DFT.
    ///
    /// analyze(x) = (1/sqrt(P)) * DFT_P(zero_pad(x, P)) maps R^N to C^P, and
    /// synthesize is its exact adjoint under the real inner product
    /// Re<a, b> on C^P. synthesize(analyze(x)) == x for every real x.
    /// Immutable after construction; analyze/synthesize may be called
    /// concurrently.
    class FrameOperator
    {
      public:
        FrameOperator(std::size_t signal_len, std::size_t coeff_len)
            : signal_len_(signal_len), coeff_len_(coeff_len)
        {
            if (signal_len == 0) throw std::invalid_argument("FrameOperator: signal length must be positive");
            if (coeff_len < signal_len)
                throw std::invalid_argument("FrameOperator: coefficient length must be >= signal length");
            plans_ = std::make_shared<const detail::DftPlans>(coeff_len);
            scale_ = 1.0 / std::sqrt(static_cast<double>(coeff_len));
        }

        std::size_t signal_len() const noexcept { return signal_len_; }
        std::size_t coeff_len() const noexcept { return coeff_len_; }
        FrameKind kind() const noexcept
        {
            return coeff_len_ == signal_len_ ? FrameKind::UnitaryDFT : FrameKind::RedundantDFT;
        }
        bool is_unitary() const noexcept { return kind() == FrameKind::UnitaryDFT; }

        ComplexVector analyze(std::span<const double> x) const
        {
            if (x.size() != signal_len_)
                throw std::invalid_argument("analyze: expected " + std::to_string(signal_len_) + " samples, got " +
                                            std::to_string(x.size()));
            std::vector<Complex> in(coeff_len_), out(coeff_len_);
            for (std::size_t n = 0; n < signal_len_; ++n) in[n] = x[n];
            plans_->forward(in, out);
            for (auto &c : out) c *= scale_;
            return out;
        }

        RealVector synthesize(std::span<const Complex> c) const
        {
            if (c.size() != coeff_len_)
                throw std::invalid_argument("synthesize: expected " + std::to_string(coeff_len_) +
                                            " coefficients, got " + std::to_string(c.size()));
            std::vector<Complex> in(c.begin(), c.end()), out(coeff_len_);
            plans_->backward(in, out);
            RealVector x(signal_len_);
            for (std::size_t n = 0; n < signal_len_; ++n) x[n] = out[n].real() * scale_;
            return x;
        }

      private:
        std::size_t signal_len_;
        std::size_t coeff_len_;
        double scale_ = 1.0;
        std::shared_ptr<const detail::DftPlans> plans_;
    };

    /// Builds the DFT frame with P = redundancy * N. Redundancy 1 gives the unitary DFT.
    inline FrameOperator make_frame(std::size_t signal_len, Redundancy redundancy)
    {
        if (signal_len == 0) throw std::invalid_argument("make_frame: signal length must be positive");
        if (redundancy.den == 0 || redundancy.num < redundancy.den)
            throw std::invalid_argument("make_frame: redundancy must be a ratio >= 1");
        if ((signal_len * redundancy.num) % redundancy.den != 0)
            throw std::invalid_argument("make_frame: redundancy * signal length is not an integer");
        return FrameOperator(signal_len, signal_len * redundancy.num / redundancy.den);
    }

    inline FrameOperator make_frame(std::size_t signal_len, std::size_t redundancy = 1)
    {
        return make_frame(signal_len, Redundancy{redundancy, 1});
    }
}  // namespace spade
