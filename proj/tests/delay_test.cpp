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

#include <cmath>
#include <numeric>
#include <random>

#include "jade/channel.hpp"
#include "jade/delay.hpp"
#include "jade/error.hpp"
#include "jade/spectral_correlation.hpp"
#include "oracles.hpp"

namespace jade {
namespace {

using testing::kPi;

double sine(double deg) { return std::sin(deg * kPi / 180.0); }

struct Fixture {
    SampledWaveform pulse = generate_pulse(PulseConfig{});
    Spectrum spec = spectrum(pulse);
    std::vector<std::size_t> band = select_band(spec, 0.1);

    // One snapshot, one beam: xi(w) = factor * exp(-j w tau) * g(w).
    BeamformedSpectrum ramp(double tau, Complex factor = 1.0) const {
        BeamformedSpectrum bf;
        bf.snapshots = 1;
        bf.beams = 1;
        bf.bins = spec.size();
        bf.s_used = {0.0};
        for (std::size_t q = 0; q < spec.size(); ++q)
            bf.xi.push_back(factor * std::polar(1.0, -spec.omega[q] * tau) * spec.values[q]);
        return bf;
    }
};

TEST(Beamform, MatchedBeamHasUnitGain) {
    Fixture f;
    const double theta = 13.7, tau = 2.5;
    const std::vector<PathParam> paths{{theta, tau}};
    const auto snaps = synthesize(f.pulse, paths, {64, 0.5}, DeterministicFading{}, 1, 0.0, 1);
    const std::vector<double> s{sine(theta)};
    const auto bf = beamform(snaps, s);
    const double gmax = testing::max_abs(f.spec.values);
    const auto xi = bf.beam(0, 0);
    double worst_mag = 0.0, worst = 0.0;
    for (std::size_t q = 0; q < xi.size(); ++q) {
        worst_mag = std::max(worst_mag, std::abs(std::abs(xi[q]) - f.spec.magnitude[q]));
        worst = std::max(worst, std::abs(xi[q] - std::polar(1.0, -f.spec.omega[q] * tau) * f.spec.values[q]));
    }
    EXPECT_LT(worst_mag / gmax, 1e-10);
    EXPECT_LT(worst / gmax, 1e-10);
}

TEST(Beamform, MismatchFollowsDirichletGain) {
    Fixture f;
    const std::vector<PathParam> paths{{5.0, 0.0}};
    const auto snaps = synthesize(f.pulse, paths, {32, 0.5}, DeterministicFading{}, 1, 0.0, 1);
    for (double ds : {0.004, 0.02, 0.0625, 0.3}) {
        const std::vector<double> s{sine(5.0) + ds};
        const auto bf = beamform(snaps, s);
        const double gain = testing::dirichlet_gain(32, 0.5, ds);
        const auto xi = bf.beam(0, 0);
        for (std::size_t q : f.band) EXPECT_NEAR(std::abs(xi[q]), gain * f.spec.magnitude[q], 1e-10 * f.spec.magnitude[q]);
    }
}

TEST(Beamform, CrossPathLeakage) {
    Fixture f;
    const std::vector<PathParam> paths{{-10.0, 3.0}, {20.0, 7.0}};
    const auto snaps = synthesize(f.pulse, paths, {64, 0.5}, DeterministicFading{}, 1, 0.0, 1);
    const std::vector<double> s{sine(-10.0)};
    const auto bf = beamform(snaps, s);
    const auto xi = bf.beam(0, 0);

    // Closed form at ds = sin 20 - sin(-10), evaluated to 30 digits.
    const double closed = 0.0215725268288592699;
    EXPECT_NEAR(testing::dirichlet_gain(64, 0.5, sine(20.0) - sine(-10.0)), closed, 1e-14);
    double leak = 0.0;
    for (std::size_t q : f.band) {
        const Complex direct = std::polar(1.0, -f.spec.omega[q] * 3.0) * f.spec.values[q];
        leak = std::max(leak, std::abs(xi[q] - direct) / f.spec.magnitude[q]);
    }
    EXPECT_NEAR(leak, closed, 1e-10);
    // Highest Dirichlet sidelobe for M = 64 is about 0.2172.
    EXPECT_LT(leak, 0.2172);
}

TEST(Beamform, RejectsInvalidSine) {
    Fixture f;
    const std::vector<PathParam> paths{{0.0, 0.0}};
    const auto snaps = synthesize(f.pulse, paths, {4, 0.5}, DeterministicFading{}, 1, 0.0, 1);
    const std::vector<double> bad{1.5};
    EXPECT_THROW(beamform(snaps, bad), ValidationError);
}

TEST(FitDelay, ExactRamp) {
    Fixture f;
    const auto est = fit_delay(f.ramp(3.0), f.spec, f.band);
    EXPECT_NEAR(est.slope[0], -3.0, 1e-9);
    EXPECT_EQ(est.tau_per_snapshot[0], -est.slope[0]);
    EXPECT_NEAR(est.rsq[0], 1.0, 1e-12);
    EXPECT_NEAR(est.tau_median[0], 3.0, 1e-9);
    EXPECT_NEAR(est.tau_mean[0], 3.0, 1e-9);
    EXPECT_EQ(est.unreliable[0], 0u);
    EXPECT_EQ(est.band, f.band);
}

TEST(FitDelay, ConstantPhaseGoesToIntercept) {
    Fixture f;
    const auto est = fit_delay(f.ramp(7.0, std::polar(1.0, 1.234)), f.spec, f.band);
    EXPECT_NEAR(est.slope[0], -7.0, 1e-9);
    EXPECT_NEAR(testing::wrap(est.intercept[0] - 1.234), 0.0, 1e-9);
}

TEST(FitDelay, ConstantPhaseInvariance) {
    Fixture f;
    const auto base = fit_delay(f.ramp(4.2), f.spec, f.band);
    for (double phi : {-3.0, -0.5, 0.7, 2.9}) {
        const auto est = fit_delay(f.ramp(4.2, std::polar(1.0, phi)), f.spec, f.band);
        EXPECT_NEAR(est.slope[0], base.slope[0], 1e-12);
    }
}

TEST(FitDelay, SlopeShiftEquivariance) {
    Fixture f;
    auto slope_for = [&](double tau) {
        const std::vector<PathParam> paths{{13.7, tau}};
        const auto snaps = synthesize(f.pulse, paths, {16, 0.5}, DeterministicFading{}, 1, 0.0, 1);
        const std::vector<double> s{sine(13.7)};
        return fit_delay(beamform(snaps, s), f.spec, f.band).slope[0];
    };
    const double base = slope_for(2.5);
    EXPECT_NEAR(base, -2.5, 1e-9);
    for (double shift : {0.25, 1.0, 3.1, 9.75}) EXPECT_NEAR(slope_for(2.5 + shift) - base, -shift, 1e-9);
}

TEST(FitDelay, WeightedFitRecoversExactRamp) {
    Fixture f;
    const auto est = fit_delay(f.ramp(5.5), f.spec, f.band, DelayFitOptions{true});
    EXPECT_NEAR(est.slope[0], -5.5, 1e-9);
}

TEST(FitDelay, RandomPhaseIsUnreliable) {
    Fixture f;
    BeamformedSpectrum bf = f.ramp(0.0);
    bf.snapshots = 20;
    bf.xi.clear();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (std::size_t s = 0; s < bf.snapshots; ++s)
        for (std::size_t q = 0; q < bf.bins; ++q) bf.xi.push_back(std::polar(1.0, u(rng)) * f.spec.values[q]);
    const auto est = fit_delay(bf, f.spec, f.band);
    EXPECT_GT(est.unreliable[0], 0u);
    for (double r : est.rsq) {
        EXPECT_GE(r, 0.0);
        EXPECT_LE(r, 1.0);
    }
}

TEST(FitDelay, RayleighSlopesCentreOnTruth) {
    Fixture f;
    const std::vector<PathParam> paths{{-10.0, 3.0}, {20.0, 7.0}};
    const auto snaps = synthesize(f.pulse, paths, {64, 0.5}, RayleighFading{}, 200, 0.0, 8);
    const std::vector<double> s{sine(-10.0), sine(20.0)};
    const auto est = fit_delay(beamform(snaps, s), f.spec, f.band);
    for (std::size_t i = 0; i < 2; ++i) {
        std::vector<double> slopes;
        for (std::size_t k = 0; k < 200; ++k) slopes.push_back(est.at(est.slope, k, i));
        const double mean = std::accumulate(slopes.begin(), slopes.end(), 0.0) / 200.0;
        double var = 0.0;
        for (double v : slopes) var += (v - mean) * (v - mean);
        const double stderr_ = std::sqrt(var / 199.0 / 200.0);
        const double truth = -paths[i].tau;
        EXPECT_LT(std::abs(mean - truth), std::max(4.0 * stderr_, 1e-3)) << "path " << i;
        EXPECT_NEAR(-est.tau_median[i], truth, 0.15);
    }
}

TEST(FitDelay, RejectsBadBand) {
    Fixture f;
    const auto bf = f.ramp(1.0);
    const std::vector<std::size_t> short_band{3, 4};
    const std::vector<std::size_t> gapped{3, 4, 6};
    EXPECT_THROW(fit_delay(bf, f.spec, short_band), ValidationError);
    EXPECT_THROW(fit_delay(bf, f.spec, gapped), ValidationError);

    auto truncated = f.spec;
    truncated.values.pop_back();
    EXPECT_THROW(fit_delay(bf, truncated, f.band), ValidationError);

    auto hole = f.spec;
    hole.values[f.band[1]] = Complex{};
    EXPECT_THROW(fit_delay(bf, hole, f.band), ValidationError);
}

TEST(FitLine, ExactAndWeighted) {
    const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
    const std::vector<double> y{1.0, 3.0, 5.0, 7.0};
    const auto fit = fit_line(x, y);
    EXPECT_NEAR(fit.slope, 2.0, 1e-14);
    EXPECT_NEAR(fit.intercept, 1.0, 1e-14);
    EXPECT_NEAR(fit.rsq, 1.0, 1e-14);

    const std::vector<double> x3{0.0, 1.0, 2.0};
    const std::vector<double> y3{0.0, 1.0, 5.0};
    const std::vector<double> w3{1.0, 1.0, 0.0};
    EXPECT_NEAR(fit_line(x3, y3, w3).slope, 1.0, 1e-14);
    EXPECT_NEAR(fit_line(x3, y3).slope, 2.5, 1e-14);
    const auto flat = fit_line(x3, std::vector<double>{2.0, 2.0, 2.0});
    EXPECT_EQ(flat.slope, 0.0);
    EXPECT_EQ(flat.rsq, 1.0);
}

TEST(FitLine, Errors) {
    const std::vector<double> one{1.0};
    const std::vector<double> two{1.0, 2.0};
    const std::vector<double> same{1.0, 1.0};
    const std::vector<double> zero{0.0, 0.0};
    EXPECT_THROW(fit_line(one, one), ValidationError);
    EXPECT_THROW(fit_line(two, one), ValidationError);
    EXPECT_THROW(fit_line(same, two), ValidationError);
    EXPECT_THROW(fit_line(two, two, one), ValidationError);
    EXPECT_THROW(fit_line(two, two, zero), ValidationError);
}

TEST(Median, OddEvenEmpty) {
    EXPECT_EQ(median({3.0, 1.0, 2.0}), 2.0);
    EXPECT_EQ(median({4.0, 1.0, 3.0, 2.0}), 2.5);
    EXPECT_TRUE(std::isnan(median({})));
}

}  // namespace
}  // namespace jade
