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

#include "jade/prony.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "jade/error.hpp"
#include "jade/polynomial.hpp"

namespace jade {
namespace {

constexpr double kPi = std::numbers::pi;

// Least-squares G for c(l) = sum_i G_i exp(j l phi_i), l = -(K-1)/2 ... (K-1)/2.
Eigen::VectorXcd fit_amplitudes(const ComplexVector& seq, std::span<const double> phases) {
    const auto rows = static_cast<Eigen::Index>(seq.size());
    const auto cols = static_cast<Eigen::Index>(phases.size());
    const auto half = static_cast<double>(seq.size() / 2);
    Eigen::MatrixXcd basis(rows, cols);
    Eigen::VectorXcd rhs(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const double lag = static_cast<double>(r) - half;
        rhs(r) = seq[static_cast<std::size_t>(r)];
        for (Eigen::Index i = 0; i < cols; ++i) basis(r, i) = std::polar(1.0, lag * phases[static_cast<std::size_t>(i)]);
    }
    return basis.colPivHouseholderQr().solve(rhs);
}

}  // namespace

PronyConfig resolve(const PronyConfig& cfg, std::size_t sequence_length) {
    PronyConfig out = cfg;
    const auto k = static_cast<int>(sequence_length);
    if (out.paths < 1) throw ValidationError("prony: model order L must be >= 1");
    if (out.order == 0) out.order = k / 3;
    if (out.rank == 0) out.rank = out.paths;
    if (out.order < out.paths) throw ValidationError("prony: prediction order must be >= L");
    if (out.rank < out.paths || out.rank > out.order) throw ValidationError("prony: rank must satisfy L <= rank <= p");
    if (k < out.order + out.paths + 1)
        throw ValidationError("prony: sequence of length " + std::to_string(k) + " is too short for p = " +
                              std::to_string(out.order) + ", L = " + std::to_string(out.paths));
    if (k - out.order < out.rank) throw ValidationError("prony: fewer prediction equations than the rank");
    return out;
}

int largest_gap_order(std::span<const double> singular_values, std::size_t max_paths) {
    const std::size_t top = std::min(max_paths, singular_values.size() - (singular_values.empty() ? 0 : 1));
    int best = 0;
    double best_ratio = 0.0;
    for (std::size_t i = 1; i <= top; ++i) {
        const double below = singular_values[i];
        const double ratio = below > 0.0 ? singular_values[i - 1] / below : std::numeric_limits<double>::infinity();
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best = static_cast<int>(i);
        }
    }
    return best;
}

ModeEstimate svd_prony(const CorrelationSequence& corr, const PronyConfig& config) {
    if (corr.c.empty()) throw ValidationError("prony: empty correlation sequence");
    if (!(corr.delta > 0.0)) throw ValidationError("prony: element spacing must be > 0");
    const ComplexVector x = corr.two_sided();
    const PronyConfig cfg = resolve(config, x.size());
    const auto k = static_cast<Eigen::Index>(x.size());
    const Eigen::Index p = cfg.order;
    const auto L = static_cast<std::size_t>(cfg.paths);

    // Forward rows: sum_i a_i x[n-i] = -x[n], n = p ... K-1.
    // Backward rows: sum_i a_i conj(x[n+i]) = -conj(x[n]), n = 0 ... K-1-p.
    const Eigen::Index forward_rows = k - p;
    const Eigen::Index rows = cfg.forward_backward ? 2 * forward_rows : forward_rows;
    Eigen::MatrixXcd a_mat(rows, p);
    Eigen::VectorXcd rhs(rows);
    for (Eigen::Index r = 0; r < forward_rows; ++r) {
        const Eigen::Index n = r + p;
        rhs(r) = -x[static_cast<std::size_t>(n)];
        for (Eigen::Index i = 1; i <= p; ++i) a_mat(r, i - 1) = x[static_cast<std::size_t>(n - i)];
    }
    if (cfg.forward_backward) {
        for (Eigen::Index r = 0; r < forward_rows; ++r) {
            const Eigen::Index n = r;
            rhs(forward_rows + r) = -std::conj(x[static_cast<std::size_t>(n)]);
            for (Eigen::Index i = 1; i <= p; ++i)
                a_mat(forward_rows + r, i - 1) = std::conj(x[static_cast<std::size_t>(n + i)]);
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a_mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();

    ModeEstimate est;
    est.prediction_order = cfg.order;
    est.rank = cfg.rank;
    est.singular_values.assign(sv.data(), sv.data() + sv.size());
    est.suggested_paths = largest_gap_order(est.singular_values, std::min<std::size_t>(est.singular_values.size(), 8));

    Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(p);
    for (Eigen::Index r = 0; r < cfg.rank; ++r) {
        if (!(sv(r) > 0.0)) throw EstimationError("prony: prediction matrix has rank below " + std::to_string(cfg.rank));
        const Complex proj = svd.matrixU().col(r).dot(rhs) / sv(r);  // dot conjugates the left operand
        coeffs += proj * svd.matrixV().col(r);
    }

    ComplexVector poly(static_cast<std::size_t>(p) + 1);
    poly[0] = 1.0;
    for (Eigen::Index i = 0; i < p; ++i) poly[static_cast<std::size_t>(i) + 1] = coeffs(i);
    est.all_roots = roots_of_polynomial(poly);

    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < est.all_roots.size(); ++i) {
        const double r = std::abs(est.all_roots[i]);
        if (r >= kMinRootModulus && r <= kMaxRootModulus) candidates.push_back(i);
    }
    if (candidates.size() < L)
        throw EstimationError("prony: only " + std::to_string(candidates.size()) + " roots have modulus in [0.5, 2], need " +
                              std::to_string(L));

    // Tie-break strength: magnitude of the sequence projected on the root's exponential.
    auto strength = [&](std::size_t idx) {
        const double phi = std::arg(est.all_roots[idx]);
        std::vector<double> one{phi};
        return std::abs(fit_amplitudes(x, one)(0));
    };
    std::vector<double> distance(est.all_roots.size());
    for (std::size_t i : candidates) distance[i] = std::abs(1.0 - std::abs(est.all_roots[i]));
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::size_t a, std::size_t b) { return distance[a] < distance[b]; });
    if (candidates.size() > L && std::abs(distance[candidates[L - 1]] - distance[candidates[L]]) < 1e-12) {
        const double edge = distance[candidates[L - 1]];
        auto tied_begin = std::find_if(candidates.begin(), candidates.end(),
                                       [&](std::size_t i) { return std::abs(distance[i] - edge) < 1e-12; });
        auto tied_end = std::find_if(tied_begin, candidates.end(),
                                     [&](std::size_t i) { return std::abs(distance[i] - edge) >= 1e-12; });
        std::stable_sort(tied_begin, tied_end, [&](std::size_t a, std::size_t b) { return strength(a) > strength(b); });
    }
    candidates.resize(L);

    std::vector<double> s_raw(L);
    for (std::size_t i = 0; i < L; ++i) s_raw[i] = std::arg(est.all_roots[candidates[i]]) / (2.0 * kPi * corr.delta);
    std::vector<std::size_t> order(L);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s_raw[a] < s_raw[b]; });

    for (std::size_t j : order) {
        const std::size_t idx = candidates[j];
        est.selected.push_back(idx);
        est.roots.push_back(est.all_roots[idx]);
        est.phase_increments.push_back(std::arg(est.all_roots[idx]));
        double s = s_raw[j];
        if (std::abs(s) > 1.0) {
            if (std::abs(s) - 1.0 > kSineClampTolerance) {
                est.valid = false;
                est.warnings.push_back("prony: |sin theta| = " + std::to_string(std::abs(s)) +
                                       " exceeds 1 (spatial aliasing or failed fit)");
            }
            est.clamped = true;
            s = std::clamp(s, -1.0, 1.0);
        }
        est.s.push_back(s);
        est.theta_deg.push_back(std::asin(s) * 180.0 / kPi);
    }

    const Eigen::VectorXcd g = fit_amplitudes(x, est.phase_increments);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        est.amplitudes.push_back(g(i).real());
        est.amplitude_imag.push_back(std::abs(g(i)) > 0.0 ? std::abs(g(i).imag()) / std::abs(g(i)) : 0.0);
    }
    return est;
}

}  // namespace jade
