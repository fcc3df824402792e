// SPDX-License-Identifier: Apache-2.0
//
// jade: joint angle and delay estimation for faded multipath arrays
// Copyright (C) 2026 The jade authors
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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "jade/error.hpp"
#include "jade/polynomial.hpp"
#include "jade/prony.hpp"
#include "oracles.hpp"

namespace jade {
namespace {

using testing::kPi;

struct Mode {
    double amplitude;
    double phase;
};

CorrelationSequence exponential_sum(const std::vector<Mode>& modes, std::size_t m, double delta = 0.5) {
    CorrelationSequence corr;
    corr.delta = delta;
    corr.c.resize(m);
    for (std::size_t l = 0; l < m; ++l)
        for (const auto& md : modes) corr.c[l] += md.amplitude * std::polar(1.0, md.phase * static_cast<double>(l));
    return corr;
}

PronyConfig with_paths(int l) {
    PronyConfig cfg;
    cfg.paths = l;
    return cfg;
}

// -- polynomial roots --------------------------------------------------------

std::vector<Complex> sorted(std::vector<Complex> v) {
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return v;
}

TEST(Roots, DifferenceOfSquares) {
    const ComplexVector p{1.0, 0.0, -1.0};
    const auto r = sorted(roots_of_polynomial(p));
    ASSERT_EQ(r.size(), 2u);
    EXPECT_LT(std::abs(r[0] - Complex(-1.0)), 1e-12);
    EXPECT_LT(std::abs(r[1] - Complex(1.0)), 1e-12);
}

TEST(Roots, DoubleRoot) {
    const ComplexVector p{1.0, -2.0, 1.0};
    const auto r = roots_of_polynomial(p);
    ASSERT_EQ(r.size(), 2u);
    // A double root is only determined to about sqrt(eps).
    for (const auto& z : r) EXPECT_LT(std::abs(z - Complex(1.0)), 1e-7);
}

TEST(Roots, RecoversUnitCircleRoots) {
    const ComplexVector truth{std::polar(1.0, 0.3), std::polar(1.0, 1.1)};
    const auto p = polynomial_from_roots(truth);
    ASSERT_EQ(p.size(), 3u);
    const auto r = roots_of_polynomial(p);
    for (const auto& z : truth) {
        double best = 1e9;
        for (const auto& w : r) best = std::min(best, std::abs(z - w));
        EXPECT_LT(best, 1e-10);
    }
}

TEST(Roots, RandomPolynomialsSatisfyResidualBound) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n01;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t degree = 1 + trial % 40;
        ComplexVector p(degree + 1);
        for (auto& c : p) c = Complex(n01(rng), n01(rng));
        const auto r = roots_of_polynomial(p);
        ASSERT_EQ(r.size(), degree);
        double max_coeff = 0.0;
        for (const auto& c : p) max_coeff = std::max(max_coeff, std::abs(c));
        for (const auto& z : r) {
            const double scale =
                static_cast<double>(degree) * max_coeff * std::pow(std::max(1.0, std::abs(z)), static_cast<double>(degree));
            EXPECT_LT(std::abs(evaluate_polynomial(p, z)) / scale, 1e-8);
        }
    }
}

TEST(Roots, RejectsDegenerateInput) {
    EXPECT_THROW(roots_of_polynomial(ComplexVector{1.0}), ValidationError);
    EXPECT_THROW(roots_of_polynomial(ComplexVector{0.0, 1.0}), ValidationError);
    EXPECT_THROW(roots_of_polynomial(ComplexVector{1.0, std::nan("")}), ValidationError);
}

// -- svd_prony ----------------------------------------------------------------

TEST(Prony, SingleExponential) {
    const auto est = svd_prony(exponential_sum({{1.0, 0.8}}, 64), with_paths(1));
    ASSERT_EQ(est.s.size(), 1u);
    EXPECT_NEAR(est.s[0], 0.8 / kPi, 1e-12);
    EXPECT_NEAR(est.s[0], 0.254647908947032537, 1e-12);
    EXPECT_NEAR(est.theta_deg[0], std::asin(0.8 / kPi) * 180.0 / kPi, 1e-10);
    EXPECT_LT(std::abs(est.roots[0] - std::polar(1.0, 0.8)), 1e-10);
    EXPECT_NEAR(est.amplitudes[0], 1.0, 1e-10);
    EXPECT_TRUE(est.valid);
    EXPECT_FALSE(est.clamped);
    EXPECT_EQ(est.prediction_order, 42);
    EXPECT_EQ(est.rank, 1);
}

TEST(Prony, TwoExponentials) {
    const auto corr = exponential_sum({{2.0, 0.3}, {1.0, 1.1}}, 64);
    const auto est = svd_prony(corr, with_paths(2));
    ASSERT_EQ(est.phase_increments.size(), 2u);
    EXPECT_NEAR(est.phase_increments[0], 0.3, 1e-8);
    EXPECT_NEAR(est.phase_increments[1], 1.1, 1e-8);
    EXPECT_NEAR(est.amplitudes[0], 2.0, 1e-8);
    EXPECT_NEAR(est.amplitudes[1], 1.0, 1e-8);
    EXPECT_LT(est.amplitude_imag[0], 1e-6);
    EXPECT_LT(est.amplitude_imag[1], 1e-6);

    // The reconstructed sum reproduces the input.
    double resid = 0.0;
    for (std::size_t l = 0; l < corr.c.size(); ++l) {
        Complex fit{};
        for (std::size_t i = 0; i < 2; ++i)
            fit += est.amplitudes[i] * std::polar(1.0, est.phase_increments[i] * static_cast<double>(l));
        resid = std::max(resid, std::abs(fit - corr.c[l]));
    }
    EXPECT_LT(resid, 1e-10 * 3.0);
}

TEST(Prony, ForwardBackwardAgreesOnExactData) {
    const auto corr = exponential_sum({{2.0, -0.7}, {1.0, 1.1}}, 32);
    auto cfg = with_paths(2);
    cfg.forward_backward = true;
    const auto est = svd_prony(corr, cfg);
    EXPECT_NEAR(est.phase_increments[0], -0.7, 1e-8);
    EXPECT_NEAR(est.phase_increments[1], 1.1, 1e-8);
}

std::vector<Mode> random_modes(std::mt19937_64& rng, std::size_t count, double lo_amp, double hi_amp) {
    std::uniform_real_distribution<double> phase(-kPi + 0.05, kPi - 0.05);
    std::uniform_real_distribution<double> amp(lo_amp, hi_amp);
    std::vector<Mode> modes;
    while (modes.size() < count) {
        const double p = phase(rng);
        bool ok = true;
        for (const auto& m : modes) ok = ok && std::abs(testing::wrap(m.phase - p)) >= 0.1;
        if (ok) modes.push_back({amp(rng), p});
    }
    return modes;
}

TEST(Prony, ExactDataProperty) {
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 80; ++trial) {
        const std::size_t count = 1 + trial % 4;
        const auto modes = random_modes(rng, count, 0.5, 2.0);
        const auto est = svd_prony(exponential_sum(modes, 64), with_paths(static_cast<int>(count)));
        std::vector<double> truth;
        for (const auto& m : modes) truth.push_back(m.phase);
        std::sort(truth.begin(), truth.end());
        ASSERT_EQ(est.phase_increments.size(), count);
        for (std::size_t i = 0; i < count; ++i) EXPECT_NEAR(est.phase_increments[i], truth[i], 1e-8) << "trial " << trial;
    }
}

TEST(Prony, ScaleInvariance) {
    const auto corr = exponential_sum({{1.5, -0.4}, {0.7, 0.9}}, 40);
    const auto base = svd_prony(corr, with_paths(2));
    for (double alpha : {1e-6, 0.37, 1e5}) {
        auto scaled = corr;
        for (auto& c : scaled.c) c *= alpha;
        const auto est = svd_prony(scaled, with_paths(2));
        for (std::size_t i = 0; i < 2; ++i) {
            EXPECT_NEAR(est.s[i], base.s[i], 1e-12);
            EXPECT_NEAR(est.amplitudes[i] / alpha, base.amplitudes[i], 1e-9);
        }
    }
}

TEST(Prony, ConjugationNegatesSines) {
    const auto corr = exponential_sum({{1.5, -0.4}, {0.7, 0.9}, {1.0, 2.0}}, 48);
    auto mirrored = corr;
    for (auto& c : mirrored.c) c = std::conj(c);
    const auto a = svd_prony(corr, with_paths(3));
    const auto b = svd_prony(mirrored, with_paths(3));
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(b.s[i], -a.s[2 - i], 1e-10);
}

TEST(Prony, RankDiagnostic) {
    std::mt19937_64 rng(17);
    for (std::size_t count = 1; count <= 4; ++count) {
        const auto est = svd_prony(exponential_sum(random_modes(rng, count, 0.5, 2.0), 64),
                                   with_paths(static_cast<int>(count)));
        EXPECT_LT(est.singular_values[count] / est.singular_values[count - 1], 1e-10);
        EXPECT_EQ(est.suggested_paths, static_cast<int>(count));
    }
}

TEST(Prony, LargestGapOrder) {
    const std::vector<double> sv{10.0, 9.0, 1e-3, 1e-4, 1e-5};
    EXPECT_EQ(largest_gap_order(sv, 4), 2);
    EXPECT_EQ(largest_gap_order(sv, 1), 1);
}

TEST(Prony, TieBreakPrefersStrongerMode) {
    auto cfg = with_paths(1);
    cfg.rank = 2;
    const auto a = svd_prony(exponential_sum({{2.0, 0.3}, {1.0, 1.1}}, 32), cfg);
    EXPECT_NEAR(a.phase_increments[0], 0.3, 1e-8);
    const auto b = svd_prony(exponential_sum({{1.0, 0.3}, {2.0, 1.1}}, 32), cfg);
    EXPECT_NEAR(b.phase_increments[0], 1.1, 1e-8);
}

TEST(Prony, ClampsTinyExcursionSilently) {
    const double delta = 0.45;
    const double phase = 2.0 * kPi * delta * (1.0 + 5e-7);
    const auto est = svd_prony(exponential_sum({{1.0, phase}}, 16, delta), with_paths(1));
    EXPECT_TRUE(est.clamped);
    EXPECT_TRUE(est.valid);
    EXPECT_TRUE(est.warnings.empty());
    EXPECT_EQ(est.s[0], 1.0);
    EXPECT_EQ(est.theta_deg[0], 90.0);
}

TEST(Prony, FlagsAliasedSine) {
    const double delta = 0.4;
    const auto est = svd_prony(exponential_sum({{1.0, 0.9 * kPi}}, 16, delta), with_paths(1));
    EXPECT_TRUE(est.clamped);
    EXPECT_FALSE(est.valid);
    EXPECT_FALSE(est.warnings.empty());
}

TEST(Prony, ResolveDefaults) {
    const auto r = resolve(with_paths(2), 127);
    EXPECT_EQ(r.order, 42);
    EXPECT_EQ(r.rank, 2);
    EXPECT_THROW(resolve(with_paths(0), 127), ValidationError);
    auto too_long = with_paths(2);
    too_long.order = 125;
    EXPECT_THROW(resolve(too_long, 127), ValidationError);
    auto bad_rank = with_paths(2);
    bad_rank.rank = 1;
    EXPECT_THROW(resolve(bad_rank, 127), ValidationError);
}

TEST(Prony, Errors) {
    CorrelationSequence empty;
    EXPECT_THROW(svd_prony(empty, with_paths(1)), ValidationError);

    CorrelationSequence zeros;
    zeros.c.assign(16, Complex{});
    EXPECT_THROW(svd_prony(zeros, with_paths(1)), EstimationError);

    // A sharp two-sided peak 10^-|l| predicts with a root far inside the
    // sanity annulus, so no root qualifies.
    CorrelationSequence peaked;
    for (int l = 0; l < 8; ++l) peaked.c.push_back(std::pow(0.1, l));
    auto cfg = with_paths(1);
    cfg.order = 1;
    EXPECT_THROW(svd_prony(peaked, cfg), EstimationError);
}

}  // namespace
}  // namespace jade
