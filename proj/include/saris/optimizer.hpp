// SPDX-License-Identifier: Apache-2.0
//
// saris-sim: scattering-aware RIS channel simulator and optimizer
// Copyright (C) 2026 The saris-sim Authors
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

#ifndef SARIS_OPTIMIZER_HPP
#define SARIS_OPTIMIZER_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "saris/channel.hpp"
#include "saris/linalg.hpp"

namespace saris {

// Sum of per-user MSEs with unit receive scaling:
//   sum_{l,k} |h_l w_k|^2 - 2 sum_l Re{h_l w_l} + L (1 + sigma_n^2).
inline double smse(const CMatrix &H, const CMatrix &W, double sigma_n2) {
    if (H.cols() != W.rows() || H.rows() != W.cols())
        throw dimension_error("smse: H must be L x M and W must be M x L");
    const CMatrix E = H * W;
    const double L = static_cast<double>(H.rows());
    return E.squaredNorm() - 2.0 * E.diagonal().real().sum() + L * (1.0 + sigma_n2);
}

inline double smse(const CMatrix &H_d, const CMatrix &H_ris, const CMatrix &W, double sigma_n2) {
    if (H_d.rows() != H_ris.rows() || H_d.cols() != H_ris.cols())
        throw dimension_error("smse: direct and RIS channels differ in shape");
    return smse(CMatrix(H_d + H_ris), W, sigma_n2);
}

// Sum of log2(1 + SINR_l) in bits/s/Hz, treating other streams as interference.
inline double sum_rate(const CMatrix &H, const CMatrix &W, double sigma_n2) {
    if (H.cols() != W.rows() || H.rows() != W.cols())
        throw dimension_error("sum_rate: H must be L x M and W must be M x L");
    const CMatrix E = H * W;
    double rate = 0.0;
    for (Eigen::Index l = 0; l < E.rows(); ++l) {
        const double desired = std::norm(E(l, l));
        const double interference = E.row(l).squaredNorm() - desired;
        rate += std::log2(1.0 + desired / (interference + sigma_n2));
    }
    return rate;
}

// W̄ = (H^H H + mu I)^-1 H^H with mu = L sigma_n^2 / P.
inline CMatrix regularized_precoder(const CMatrix &H, double P, double sigma_n2) {
    if (!(P > 0.0))
        throw std::invalid_argument("power budget must be positive");
    if (H.size() == 0 || H.norm() == 0.0)
        throw degenerate_channel_error("channel is identically zero; no precoder direction");
    const double mu = static_cast<double>(H.rows()) * sigma_n2 / P;
    CMatrix gram = H.adjoint() * H;
    gram.diagonal().array() += mu;
    return gram.ldlt().solve(H.adjoint());
}

// MMSE-type precoder scaled to spend the whole power budget.
inline CMatrix optimal_precoder(const CMatrix &H, double P, double sigma_n2) {
    const CMatrix w_bar = regularized_precoder(H, P, sigma_n2);
    const double norm = w_bar.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw degenerate_channel_error("regularized precoder has no finite direction");
    return std::sqrt(P) * w_bar / norm;
}

// Relative residual of the precoder stationarity condition,
// ||(H^H H + mu I) W̄ - H^H||_F / ||H||_F.
inline double precoder_residual(const CMatrix &H, const CMatrix &w_bar, double P, double sigma_n2) {
    const double mu = static_cast<double>(H.rows()) * sigma_n2 / P;
    CMatrix gram = H.adjoint() * H;
    gram.diagonal().array() += mu;
    return (gram * w_bar - H.adjoint()).norm() / H.norm();
}

struct optimizer_state;

struct optimizer_config {
    double P = 1.0;
    double sigma_n2 = 1e-11;
    double epsilon = 1e-8;
    int max_iter = 500;
    interval Q{-302.50, -19.66};
    double R0 = 0.2;
    std::optional<double> x_init; // midpoint of Q when unset
    // Called after every RIS update, once G and the traces are current.
    std::function<void(const optimizer_state &)> on_step;
};

struct optimizer_state {
    CMatrix W;
    ris_loads loads;
    CMatrix G;              // (Z_SS + Z_SOS + Z_RIS)^-1 at `G_reactances`
    RVector G_reactances;   // loads G was computed for
    double G_norm = 0.0;    // spectral norm of G
    std::vector<double> smse_trace;
    std::vector<double> rate_trace;
    std::vector<double> guard_trace;        // max_n |delta_n| * ||G|| per RIS step
    std::vector<double> precoder_residuals; // per precoder update
    int iteration = 0;
    bool converged = false;
    // Metrics at the returned (W, loads) on the channel the design is judged on.
    double final_smse = 0.0;
    double final_sum_rate = 0.0;

    bool inverse_current() const {
        return G_reactances.size() == loads.size() && G_reactances == loads.reactances();
    }

    void refresh_inverse(const folded_channel &f) {
        const checked_lu lu(f.ris_block(loads), "Z_SS + Z_SOS + Z_RIS");
        G = lu.inverse();
        G_reactances = loads.reactances();
        G_norm = spectral_norm(G);
    }
};

// Linearized RIS update around the current loads. H_bar[l] stacks
// H̄_R,l (N x M) over h̄_d,l (1 x M).
struct delta_step {
    std::vector<CMatrix> H_bar;
    CVector b;
    CVector delta_tilde;
    CVector delta;
    bool stationary = false;

    Eigen::Index N() const { return H_bar.empty() ? 0 : H_bar.front().rows() - 1; }
    auto H_R(std::size_t l) const { return H_bar[l].topRows(N()); }
    auto h_d(std::size_t l) const { return H_bar[l].bottomRows(1); }
};

inline delta_step build_delta_system(const folded_channel &f, const optimizer_state &state) {
    if (!state.inverse_current())
        throw consistency_error("G is stale: RIS loads changed since it was computed");
    const CMatrix &G = state.G;
    const Eigen::Index N = f.N(), M = f.M();
    const CMatrix a_all = f.left * G;   // rows: z_RL,l Z_ROS G
    const CMatrix g_right = G * f.right; // G Z_SOT Z_TG
    const CMatrix through = a_all * f.right;

    delta_step ds;
    ds.H_bar.reserve(static_cast<std::size_t>(f.L()));
    for (Eigen::Index l = 0; l < f.L(); ++l) {
        CMatrix hb(N + 1, M);
        hb.topRows(N) = a_all.row(l).transpose().asDiagonal() * g_right;
        hb.bottomRows(1) = f.H_d.row(l) - through.row(l);
        ds.H_bar.push_back(std::move(hb));
    }
    return ds;
}

// sum_l H̄_R,l W W^H H̄_R,l^H + sigma_n^2 I.
inline CMatrix delta_system_matrix(const delta_step &ds, const CMatrix &W, double sigma_n2) {
    const Eigen::Index N = ds.N();
    CMatrix a = CMatrix::Zero(N, N);
    for (std::size_t l = 0; l < ds.H_bar.size(); ++l) {
        const CMatrix hw = ds.H_R(l) * W;
        a.noalias() += hw * hw.adjoint();
    }
    a.diagonal().array() += sigma_n2;
    return a;
}

// Channel rows δ̄^H H̄_l for a given δ (exact at δ = 0, first order otherwise).
inline CMatrix linearized_channel(const delta_step &ds, const CVector &delta) {
    CMatrix H(static_cast<Eigen::Index>(ds.H_bar.size()), ds.H_bar.empty() ? 0 : ds.H_bar.front().cols());
    for (std::size_t l = 0; l < ds.H_bar.size(); ++l)
        H.row(static_cast<Eigen::Index>(l)) = delta.adjoint() * ds.H_R(l) + ds.h_d(l);
    return H;
}

// Regularized δ-step, normalized so that max_n |δ_n| = 1 / ||G||.
// A zero unnormalized solution marks a stationary point.
inline delta_step solve_delta(delta_step ds, const CMatrix &W, double sigma_n2, double G_norm) {
    if (!(G_norm > 0.0))
        throw std::invalid_argument("spectral norm of G must be positive");
    const Eigen::Index N = ds.N();
    if (W.cols() != static_cast<Eigen::Index>(ds.H_bar.size()))
        throw dimension_error("precoder has one column per user");
    ds.b = CVector::Zero(N);
    for (std::size_t l = 0; l < ds.H_bar.size(); ++l) {
        const auto hr = ds.H_R(l);
        const CMatrix hw = hr * W;
        ds.b += hr * W.col(static_cast<Eigen::Index>(l)) - hw * (W.adjoint() * ds.h_d(l).adjoint());
    }
    ds.delta_tilde = delta_system_matrix(ds, W, sigma_n2).llt().solve(ds.b);

    double peak = 0.0;
    for (Eigen::Index n = 0; n < N; ++n)
        peak = std::max(peak, std::abs(ds.delta_tilde[n]));
    ds.stationary = !(peak > 0.0) || !std::isfinite(peak);
    ds.delta = ds.stationary ? CVector::Zero(N) : CVector(ds.delta_tilde / (peak * G_norm));
    return ds;
}

namespace detail {

inline void record_point(optimizer_state &s, const CMatrix &H, const optimizer_config &cfg) {
    s.smse_trace.push_back(smse(H, s.W, cfg.sigma_n2));
    s.rate_trace.push_back(sum_rate(H, s.W, cfg.sigma_n2));
}

} // namespace detail

// Alternating minimization of the SMSE over the precoder and RIS reactances.
//
// Each iteration: closed-form precoder for the current channel, one
// normalized Neumann δ-step, reactance update x -= Im δ, projection onto Q,
// and a fresh G. The trace holds the SMSE after every RIS update. The loop
// stops once the RIS update changes the SMSE by at most epsilon.
inline optimizer_state saris_optimize(const folded_channel &f, const optimizer_config &cfg) {
    if (!(cfg.epsilon > 0.0))
        throw std::invalid_argument("epsilon must be positive");
    if (cfg.max_iter < 1)
        throw std::invalid_argument("max_iter must be at least 1");
    optimizer_state s;
    s.loads = ris_loads::uniform(f.N(), cfg.R0, cfg.x_init.value_or(cfg.Q.midpoint()), cfg.Q);
    s.refresh_inverse(f);

    CMatrix H = f.channel_from_inverse(s.G);
    for (s.iteration = 1; s.iteration <= cfg.max_iter; ++s.iteration) {
        const CMatrix w_bar = regularized_precoder(H, cfg.P, cfg.sigma_n2);
        s.precoder_residuals.push_back(precoder_residual(H, w_bar, cfg.P, cfg.sigma_n2));
        s.W = std::sqrt(cfg.P) * w_bar / w_bar.norm();
        const double before = smse(H, s.W, cfg.sigma_n2);

        const delta_step ds = solve_delta(build_delta_system(f, s), s.W, cfg.sigma_n2, s.G_norm);
        if (ds.stationary) {
            detail::record_point(s, H, cfg);
            s.converged = true;
            break;
        }
        s.guard_trace.push_back(ds.delta.cwiseAbs().maxCoeff() * s.G_norm);
        // Z_RIS += j Im{diag(δ^H)}, i.e. x_n -= Im δ_n.
        s.loads = s.loads.shifted(-ds.delta.imag());
        s.refresh_inverse(f);
        H = f.channel_from_inverse(s.G);
        detail::record_point(s, H, cfg);
        if (cfg.on_step)
            cfg.on_step(s);
        if (std::abs(s.smse_trace.back() - before) <= cfg.epsilon) {
            s.converged = true;
            break;
        }
    }
    s.iteration = std::min(s.iteration, cfg.max_iter);
    s.final_smse = s.smse_trace.back();
    s.final_sum_rate = s.rate_trace.back();
    return s;
}

// Designs against the interaction-free model, then scores the design on
// the true folded channel.
inline optimizer_state mismatched_optimize(const folded_channel &f, const impedance_set &z,
                                           const optimizer_config &cfg) {
    optimizer_state s = saris_optimize(without_interaction(f, z), cfg);
    const CMatrix H = end_to_end_channel(f, s.loads);
    s.final_smse = smse(H, s.W, cfg.sigma_n2);
    s.final_sum_rate = sum_rate(H, s.W, cfg.sigma_n2);
    return s;
}

// Best of `trials` uniformly drawn reactance vectors, each with its own
// closed-form precoder. `uniform01` returns doubles in [0, 1).
inline optimizer_state random_baseline(const folded_channel &f, const optimizer_config &cfg, int trials,
                                       const std::function<double()> &uniform01) {
    if (trials < 1)
        throw std::invalid_argument("random baseline needs at least one trial");
    optimizer_state best;
    double best_rate = -1.0;
    for (int t = 0; t < trials; ++t) {
        RVector x(f.N());
        for (Eigen::Index n = 0; n < x.size(); ++n)
            x[n] = cfg.Q.clamp(cfg.Q.lo + (cfg.Q.hi - cfg.Q.lo) * uniform01());
        optimizer_state s;
        s.loads = ris_loads(cfg.R0, std::move(x), cfg.Q);
        s.refresh_inverse(f);
        const CMatrix H = f.channel_from_inverse(s.G);
        const CMatrix w_bar = regularized_precoder(H, cfg.P, cfg.sigma_n2);
        s.W = std::sqrt(cfg.P) * w_bar / w_bar.norm();
        const double rate = sum_rate(H, s.W, cfg.sigma_n2);
        if (rate > best_rate) {
            best_rate = rate;
            const auto smse_trace = std::move(best.smse_trace);
            const auto rate_trace = std::move(best.rate_trace);
            const auto residuals = std::move(best.precoder_residuals);
            best = std::move(s);
            best.smse_trace = smse_trace;
            best.rate_trace = rate_trace;
            best.precoder_residuals = residuals;
            best.precoder_residuals.push_back(precoder_residual(H, w_bar, cfg.P, cfg.sigma_n2));
            best.final_smse = smse(H, best.W, cfg.sigma_n2);
            best.final_sum_rate = rate;
        }
        best.smse_trace.push_back(best.final_smse);
        best.rate_trace.push_back(best.final_sum_rate);
    }
    best.iteration = trials;
    best.converged = true;
    return best;
}

} // namespace saris

#endif // SARIS_OPTIMIZER_HPP
