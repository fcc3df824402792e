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

#include "jade/delay.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "jade/error.hpp"

namespace jade {

BeamformedSpectrum beamform(const SnapshotSet& snaps, std::span<const double> s_values) {
    const std::size_t m = snaps.sensors();
    const std::size_t n = snaps.samples();
    for (double s : s_values)
        if (!(std::abs(s) <= 1.0)) throw ValidationError("beamform: |s| must be <= 1, got " + std::to_string(s));

    BeamformedSpectrum bf;
    bf.snapshots = snaps.snapshots();
    bf.beams = s_values.size();
    bf.bins = n;
    bf.s_used.assign(s_values.begin(), s_values.end());
    bf.xi.assign(bf.snapshots * bf.beams * n, Complex{});

    std::vector<ComplexVector> weights(bf.beams, ComplexVector(m));
    for (std::size_t i = 0; i < bf.beams; ++i)
        for (std::size_t k = 0; k < m; ++k)
            weights[i][k] = std::polar(1.0 / static_cast<double>(m),
                                       -2.0 * std::numbers::pi * snaps.array().delta * static_cast<double>(k) * s_values[i]);

    for (std::size_t s = 0; s < bf.snapshots; ++s) {
        for (std::size_t i = 0; i < bf.beams; ++i) {
            Complex* out = bf.xi.data() + (s * bf.beams + i) * n;
            for (std::size_t k = 0; k < m; ++k) {
                const auto x = snaps.spectrum(s, k);
                const Complex w = weights[i][k];
                for (std::size_t q = 0; q < n; ++q) out[q] += w * x[q];
            }
        }
    }
    return bf;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y, std::span<const double> weights) {
    if (x.size() != y.size() || x.size() < 2) throw ValidationError("fit_line: need at least 2 paired points");
    if (!weights.empty() && weights.size() != x.size()) throw ValidationError("fit_line: weight count mismatch");
    auto w = [&](std::size_t i) { return weights.empty() ? 1.0 : weights[i]; };

    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w(i);
        sx += w(i) * x[i];
        sy += w(i) * y[i];
    }
    if (!(sw > 0.0)) throw ValidationError("fit_line: weights sum to zero");
    const double mx = sx / sw, my = sy / sw;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += w(i) * dx * dx;
        sxy += w(i) * dx * dy;
        syy += w(i) * dy * dy;
    }
    if (!(sxx > 0.0)) throw ValidationError("fit_line: abscissae are all equal");

    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += w(i) * r * r;
    }
    fit.rsq = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    return fit;
}

std::vector<double> phase_residual(std::span<const Complex> xi, const Spectrum& pulse_spectrum,
                                   std::span<const std::size_t> band) {
    std::vector<double> wrapped;
    wrapped.reserve(band.size());
    for (std::size_t q : band) {
        if (q >= xi.size() || q >= pulse_spectrum.size()) throw ValidationError("phase_residual: bin out of range");
        const Complex g = pulse_spectrum.values[q];
        const double power = std::norm(g);
        if (!(power > 0.0)) throw ValidationError("phase_residual: pulse spectrum vanishes at bin " + std::to_string(q));
        wrapped.push_back(std::arg(xi[q] * std::conj(g) / power));
    }
    return unwrap_phase(wrapped);
}

double median(std::vector<double> values) {
    if (values.empty()) return std::nan("");
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    if (values.size() % 2 == 1) return values[mid];
    const double upper = values[mid];
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

DelayEstimate fit_delay(const BeamformedSpectrum& bf, const Spectrum& pulse_spectrum, std::span<const std::size_t> band,
                        const DelayFitOptions& options) {
    if (band.size() < 3) throw ValidationError("fit_delay: band needs at least 3 bins");
    for (std::size_t j = 1; j < band.size(); ++j)
        if (band[j] != band[j - 1] + 1) throw ValidationError("fit_delay: band must be contiguous");
    if (pulse_spectrum.size() != bf.bins) throw ValidationError("fit_delay: pulse spectrum length mismatch");

    std::vector<double> omega, weights;
    for (std::size_t q : band) {
        omega.push_back(pulse_spectrum.omega[q]);
        if (options.weighted) weights.push_back(std::norm(pulse_spectrum.values[q]));
    }

    DelayEstimate est;
    est.snapshots = bf.snapshots;
    est.paths = bf.beams;
    est.band.assign(band.begin(), band.end());
    const std::size_t cells = bf.snapshots * bf.beams;
    est.slope.resize(cells);
    est.intercept.resize(cells);
    est.rsq.resize(cells);
    est.tau_per_snapshot.resize(cells);
    est.unreliable.assign(bf.beams, 0);

    for (std::size_t s = 0; s < bf.snapshots; ++s) {
        for (std::size_t i = 0; i < bf.beams; ++i) {
            const std::vector<double> phi = phase_residual(bf.beam(s, i), pulse_spectrum, band);
            const LineFit fit = fit_line(omega, phi, weights);
            const std::size_t cell = s * bf.beams + i;
            est.slope[cell] = fit.slope;
            est.intercept[cell] = fit.intercept;
            est.rsq[cell] = fit.rsq;
            est.tau_per_snapshot[cell] = -fit.slope;
            if (fit.rsq < kReliableFitRsq) ++est.unreliable[i];
        }
    }

    for (std::size_t i = 0; i < bf.beams; ++i) {
        std::vector<double> taus(bf.snapshots);
        for (std::size_t s = 0; s < bf.snapshots; ++s) taus[s] = est.tau_per_snapshot[s * bf.beams + i];
        est.tau_median.push_back(median(taus));
        est.tau_mean.push_back(std::accumulate(taus.begin(), taus.end(), 0.0) / static_cast<double>(taus.size()));
    }
    return est;
}

}  // namespace jade
