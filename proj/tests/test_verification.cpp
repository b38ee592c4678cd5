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

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "spade/verification.hpp"

#include <Eigen/QR>

using namespace spade;
using namespace spade::verify;

namespace
{
    // Real orthonormal N x N dictionary stored as a complex matrix.
    Eigen::MatrixXcd random_orthonormal(std::size_t n, unsigned seed)
    {
        std::mt19937 rng(seed);
        std::normal_distribution<double> g;
        Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
        const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(m).householderQ();
        return q.cast<Complex>();
    }

    double coef_objective(const FrameOperator &op, const RealVector &x, const ComplexVector &s)
    {
        const double d = distance2<Complex>(op.analyze(x), s);
        return d * d;
    }

    double time_objective(const FrameOperator &op, const RealVector &x, const ComplexVector &s)
    {
        const double d = distance2<double>(x, op.synthesize(s));
        return d * d;
    }
}  // namespace

TEST_CASE("OracleConfig validation")
{
    OracleConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.n_trials = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.tol_strict = 1e-6;
    cfg.tol_numeric = 1e-9;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.tol_strict = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("dense frame matrices")
{
    const auto a = dense_analysis_matrix(4, 8);
    CHECK(a.rows() == 8);
    CHECK(a.cols() == 4);
    CHECK((a.adjoint() * a - Eigen::MatrixXcd::Identity(4, 4)).norm() <= 1e-14);
    CHECK_THROWS_AS(dense_analysis_matrix(17, 34), std::invalid_argument);
    CHECK_THROWS_AS(dense_analysis_matrix(8, 4), std::invalid_argument);
    oracle::Gen gen(3);
    const auto c = gen.complex(12);
    const auto d = dense_synthesize(dense_synthesis_matrix(6, 12), c);
    const auto n = oracle::naive_synthesize(c, 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(d[i] == Catch::Approx(n[i]).margin(1e-13));
}

TEST_CASE("brute_force_sparse_ls")
{
    oracle::Gen gen(9);
    SECTION("k = 0 gives the zero vector")
    {
        const auto t = gen.real(4);
        const auto sol = brute_force_sparse_ls(dense_synthesis_matrix(4, 8), t, 0);
        CHECK(sol.support.empty());
        CHECK(sol.coeffs == ComplexVector(8));
        const double n2 = norm2(t);
        CHECK(sol.objective == Catch::Approx(n2 * n2).epsilon(1e-14));
    }
    SECTION("orthonormal dictionary matches hard thresholding of the analysis")
    {
        for (std::size_t n : {4u, 6u, 8u})
            for (std::size_t k = 1; k <= 3; ++k)
                for (int t = 0; t < 10; ++t)
                {
                    const auto q = random_orthonormal(n, 100 * static_cast<unsigned>(n) + static_cast<unsigned>(t));
                    const auto target = gen.real(n);
                    Eigen::VectorXcd tv(static_cast<Eigen::Index>(n));
                    for (std::size_t i = 0; i < n; ++i) tv(static_cast<Eigen::Index>(i)) = target[i];
                    const Eigen::VectorXcd cv = q.adjoint() * tv;
                    ComplexVector c(cv.data(), cv.data() + cv.size());
                    const auto z = hard_threshold(c, k);
                    const double ht = threshold_objective(z, c);
                    const auto sol = brute_force_sparse_ls(q, target, k);
                    CHECK(std::abs(sol.objective - ht) <= 1e-12);
                    const double te = distance2<double>(dense_synthesize(q, z), target);
                    CHECK(std::abs(te * te - ht) <= 1e-12);
                }
    }
    SECTION("unitary DFT dictionary: exact optimum <= thresholded time error <= coefficient error")
    {
        // Re(D z) lets one coefficient stand in for a whole conjugate pair,
        // so the exact optimum can be strictly smaller than the H_k value.
        const auto op = make_frame(8, 1);
        const auto d = dense_synthesis_matrix(8, 8);
        bool strictly_smaller = false;
        for (std::size_t k = 1; k <= 3; ++k)
            for (int t = 0; t < 20; ++t)
            {
                const auto target = gen.real(8);
                const auto sol = brute_force_sparse_ls(d, target, k);
                const auto c = op.analyze(target);
                for (auto rule : {Thresholding::Plain, Thresholding::ConjugatePairs})
                {
                    const auto z = sparsify(c, k, rule);
                    const double te = distance2<double>(op.synthesize(z), target);
                    CHECK(sol.objective <= te * te + 1e-12);
                    CHECK(te * te <= threshold_objective(z, c) + 1e-12);
                }
                strictly_smaller = strictly_smaller || sol.objective < threshold_objective(hard_threshold(c, k), c) - 1e-6;
                const auto back = dense_synthesize(d, sol.coeffs);
                const double obj = distance2<double>(back, target);
                CHECK(std::abs(obj * obj - sol.objective) <= 1e-12);
            }
        CHECK(strictly_smaller);
    }
    SECTION("redundant dictionary P = 8, N = 4, k = 2")
    {
        const auto op = make_frame(4, 2);
        const auto d = dense_synthesis_matrix(4, 8);
        for (int t = 0; t < 50; ++t)
        {
            const auto target = gen.real(4);
            const auto sol = brute_force_sparse_ls(d, target, 2);
            CHECK(sol.support.size() <= 2);
            const auto c = op.analyze(target);
            const auto z = hard_threshold(c, 2);
            const double te = distance2<double>(op.synthesize(z), target);
            CHECK(sol.objective <= te * te + 1e-12);
            CHECK(te <= distance2<Complex>(z, c) + 1e-12);
        }
    }
    SECTION("lower bound for any k-sparse candidate")
    {
        const auto d = dense_synthesis_matrix(4, 8);
        const auto target = gen.real(4);
        const auto sol = brute_force_sparse_ls(d, target, 2);
        for (int t = 0; t < 500; ++t)
        {
            auto z = hard_threshold(gen.complex(8), 2);
            const double obj = distance2<double>(dense_synthesize(d, z), target);
            CHECK(sol.objective <= obj * obj + 1e-12);
        }
    }
    SECTION("size limits")
    {
        CHECK_THROWS_AS(brute_force_sparse_ls(dense_synthesis_matrix(8, 16), gen.real(8), 2), std::invalid_argument);
        CHECK_THROWS_AS(brute_force_sparse_ls(dense_synthesis_matrix(4, 8), gen.real(4), 4), std::invalid_argument);
        CHECK_THROWS_AS(brute_force_sparse_ls(dense_synthesis_matrix(4, 8), gen.real(5), 1), std::invalid_argument);
    }
}

TEST_CASE("threshold oracles agree with the test-side enumerations")
{
    oracle::Gen gen(10);
    for (std::size_t p = 1; p <= 8; ++p)
        for (std::size_t k = 0; k <= 4; ++k)
        {
            const auto s = gen.complex(p);
            CHECK(brute_force_threshold_objective(s, k) == Catch::Approx(oracle::brute_threshold(s, k)).margin(1e-12));
            CHECK(brute_force_conjugate_threshold_objective(s, k) ==
                  Catch::Approx(oracle::brute_threshold_conjugate(s, k)).margin(1e-12));
        }
}

TEST_CASE("check_unitary_equivalence")
{
    SECTION("clipped sinusoids, 200 iterations")
    {
        const auto op = make_frame(64, 1);
        const auto model = clipped_test_model(64, 0.5);
        const auto res = check_unitary_equivalence(op, model, equivalence_params(), 200);
        CHECK(res.iterations == 200);
        CHECK(res.same_termination);
        CHECK(res.max_deviation <= 1e-9);
    }
    SECTION("default parameters also agree until termination")
    {
        const auto op = make_frame(64, 1);
        const auto model = clipped_test_model(64, 0.5);
        const auto res = check_unitary_equivalence(op, model, SolverParams{}, 200);
        CHECK(res.same_termination);
        CHECK(res.max_deviation <= 1e-9);
    }
    SECTION("all-reliable input: deviation exactly zero")
    {
        oracle::Gen gen(2);
        const auto model = detect_masks(gen.real(64, 0.1), 5.0, 0.0);
        auto p = equivalence_params();
        p.epsilon = 1e-300;
        const auto res = check_unitary_equivalence(make_frame(64, 1), model, p, 50);
        CHECK(res.max_deviation == 0.0);
    }
    SECTION("redundant frame is refused")
    {
        const auto model = clipped_test_model(64, 0.5);
        CHECK_THROWS_AS(check_unitary_equivalence(make_frame(64, 2), model, equivalence_params(), 10),
                        std::invalid_argument);
    }
}

TEST_CASE("check_dr_bound")
{
    const auto model = clipped_test_model(64, 0.4);
    SolverParams p;
    p.epsilon = 1e-300;
    const auto res = check_dr_bound(make_frame(64, 2), model, p, 500);
    CHECK(res.iterations == 500);
    CHECK(res.max_excess <= 1e-12);
}

TEST_CASE("check_scaled_form")
{
    SECTION("rho = 1, y = 0: both sides are half the squared norm")
    {
        const RealVector r{0.5, -2.0, 1.5};
        double lhs = 0.0, rhs = 0.0;
        for (double v : r)
        {
            lhs += 0.0 * v + 0.5 * v * v;
            rhs += 0.5 * (v + 0.0) * (v + 0.0);
        }
        CHECK(lhs == rhs);
        CHECK(lhs == Catch::Approx(0.5 * (0.25 + 4.0 + 2.25)));
    }
    SECTION("1000 random trials")
    {
        OracleConfig cfg;
        cfg.n_trials = 1000;
        const auto rep = check_scaled_form(cfg);
        CHECK(rep.passed);
        CHECK(rep.cases == 2000);
        CHECK(rep.worst <= 1e-12);
    }
}

TEST_CASE("check_projection_transposition")
{
    OracleConfig cfg;
    oracle::Gen gen(17);
    SECTION("redundant frame, 20 targets x 100 feasible candidates")
    {
        const auto op = make_frame(8, 2);
        const auto x = gen.real(8);
        const auto model = detect_masks(hard_clip(x, 0.5), 0.5, 0.0);
        const auto res = check_projection_transposition(op, model, cfg, 20);
        CHECK(res.comparisons == 2000);
        CHECK(res.violations == 0);
        CHECK(res.max_orthogonality <= 1e-12);
        CHECK(res.max_range_residual <= 1e-10);
    }
    SECTION("targets in range(A) have no orthogonal component")
    {
        for (auto red : {1u, 2u, 4u})
        {
            const auto op = make_frame(16, red);
            for (int t = 0; t < 10; ++t)
            {
                const auto s = op.analyze(gen.real(16));
                CHECK(distance2<Complex>(op.analyze(op.synthesize(s)), s) <= 1e-10);
            }
        }
    }
    SECTION("unitary frame: the two objectives agree on conjugate-symmetric targets")
    {
        const auto op = make_frame(16, 1);
        for (int t = 0; t < 20; ++t)
        {
            const auto s = gen.conjugate_symmetric(16);
            const auto x = gen.real(16);
            CHECK(std::abs(coef_objective(op, x, s) - time_objective(op, x, s)) <= 1e-12);
        }
    }
    SECTION("unitary frame: for general targets they differ by a constant")
    {
        // A maps into conjugate-symmetric vectors, so the antisymmetric
        // part of s adds the same ||s - A A* s||^2 to every x.
        const auto op = make_frame(16, 1);
        for (int t = 0; t < 10; ++t)
        {
            const auto s = gen.complex(16);
            const double e = distance2<Complex>(op.analyze(op.synthesize(s)), s);
            for (int j = 0; j < 10; ++j)
            {
                const auto x = gen.real(16);
                CHECK(std::abs(coef_objective(op, x, s) - time_objective(op, x, s) - e * e) <= 1e-12);
            }
        }
    }
    SECTION("size mismatch")
    {
        const auto model = detect_masks(gen.real(4), 0.5, 0.0);
        CHECK_THROWS_AS(check_projection_transposition(make_frame(8, 2), model, cfg), std::invalid_argument);
    }
}

TEST_CASE("oracle checks are deterministic given the seed")
{
    OracleConfig cfg;
    cfg.n_trials = 5;
    const auto a = run_all(cfg);
    const auto b = run_all(cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        CHECK(a[i].name == b[i].name);
        CHECK(a[i].worst == b[i].worst);
        CHECK(a[i].cases == b[i].cases);
        CHECK(a[i].passed == b[i].passed);
    }
}

TEST_CASE("run_all passes with default configuration")
{
    const auto reports = run_all(OracleConfig{});
    CHECK(reports.size() == 8);
    for (const auto &r : reports)
    {
        INFO(r.name << ": worst " << r.worst << " tol " << r.tolerance << " " << r.detail);
        CHECK(r.passed);
        CHECK(r.cases > 0);
    }
}

TEST_CASE("run_all passes for other seeds")
{
    for (std::uint64_t seed : {1u, 42u, 9999u})
    {
        OracleConfig cfg;
        cfg.seed = seed;
        cfg.n_trials = 20;
        for (const auto &r : run_all(cfg))
        {
            INFO("seed " << seed << " " << r.name);
            CHECK(r.passed);
        }
    }
}
