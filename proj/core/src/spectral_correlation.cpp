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

#include "jade/spectral_correlation.hpp"

#include <string>

#include "jade/error.hpp"

namespace jade {
namespace {

// Pairwise reduction keeps the result independent of how snapshots were
// partitioned when they were accumulated.
ComplexVector pairwise_sum(std::vector<ComplexVector>& parts, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return std::move(parts[lo]);
    const std::size_t mid = lo + (hi - lo) / 2;
    ComplexVector left = pairwise_sum(parts, lo, mid);
    const ComplexVector right = pairwise_sum(parts, mid, hi);
    for (std::size_t i = 0; i < left.size(); ++i) left[i] += right[i];
    return left;
}

}  // namespace

Complex CorrelationSequence::at(std::ptrdiff_t lag) const {
    const auto idx = static_cast<std::size_t>(lag < 0 ? -lag : lag);
    if (idx >= c.size()) throw ValidationError("correlation: lag out of range");
    return lag < 0 ? std::conj(c[idx]) : c[idx];
}

ComplexVector CorrelationSequence::two_sided() const {
    ComplexVector out;
    if (c.empty()) return out;
    const auto top = static_cast<std::ptrdiff_t>(c.size()) - 1;
    out.reserve(2 * c.size() - 1);
    for (std::ptrdiff_t l = -top; l <= top; ++l) out.push_back(at(l));
    return out;
}

std::vector<std::size_t> select_band(const Spectrum& pulse_spectrum, double eta) {
    if (!(eta >= 0.0 && eta < 1.0))
        throw ValidationError("select_band: eta must lie in [0, 1), got " + std::to_string(eta));
    auto band = contiguous_band(pulse_spectrum.magnitude, eta);
    if (band.empty()) throw ValidationError("select_band: no positive-frequency bin passes the threshold");
    return band;
}

CorrelationSequence estimate_correlation(const SnapshotSet& snaps, std::span<const std::size_t> band,
                                         std::optional<std::size_t> max_lag) {
    const std::size_t m = snaps.sensors();
    const std::size_t lags = max_lag.value_or(m - 1);
    if (lags > m - 1)
        throw ValidationError("correlation: max lag " + std::to_string(lags) + " exceeds M-1 = " + std::to_string(m - 1));
    if (band.empty()) throw ValidationError("correlation: empty frequency band");
    if (snaps.snapshots() < 1) throw ValidationError("correlation: no snapshots");
    for (std::size_t q : band)
        if (q >= snaps.samples()) throw ValidationError("correlation: band bin out of range");

    const std::size_t s_count = snaps.snapshots();
    std::vector<ComplexVector> partial(s_count, ComplexVector(lags + 1));
    std::vector<Complex> column(m);
    for (std::size_t s = 0; s < s_count; ++s) {
        ComplexVector& acc = partial[s];
        for (std::size_t q : band) {
            for (std::size_t k = 0; k < m; ++k) column[k] = snaps.spectrum_at(s, k, q);
            double power = 0.0;
            for (std::size_t k = 0; k < m; ++k) power += std::norm(column[k]);
            acc[0] += power;
            for (std::size_t l = 1; l <= lags; ++l) {
                Complex sum{};
                for (std::size_t k = l; k < m; ++k) sum += column[k] * std::conj(column[k - l]);
                acc[l] += sum;
            }
        }
    }

    CorrelationSequence out;
    out.c = pairwise_sum(partial, 0, s_count);
    out.band.assign(band.begin(), band.end());
    out.counts.resize(lags + 1);
    out.delta = snaps.array().delta;
    for (std::size_t l = 0; l <= lags; ++l) {
        out.counts[l] = s_count * band.size() * (m - l);
        out.c[l] /= static_cast<double>(out.counts[l]);
    }
    out.c[0] = Complex(out.c[0].real(), 0.0);
    return out;
}

}  // namespace jade
