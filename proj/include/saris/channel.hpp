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

#ifndef SARIS_CHANNEL_HPP
#define SARIS_CHANNEL_HPP

#include <algorithm>
#include <cmath>

#include "saris/impedance.hpp"
#include "saris/linalg.hpp"

namespace saris {

// Closed real interval [lo, hi].
struct interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double v) const { return v >= lo && v <= hi; }
    double clamp(double v) const { return std::clamp(v, lo, hi); }
    double midpoint() const { return 0.5 * (lo + hi); }
    bool operator==(const interval &) const = default;
};

// Diagonal RIS termination R0 + j x_n with every x_n inside the interval.
class ris_loads {
  public:
    ris_loads() = default;

    ris_loads(double r0, RVector reactances, interval feasible)
        : r0_(r0), x_(std::move(reactances)), q_(feasible) {
        if (!(r0_ >= 0.0))
            throw std::invalid_argument("RIS load resistance must be non-negative");
        if (!(q_.lo <= q_.hi))
            throw std::invalid_argument("empty reactance interval");
        for (Eigen::Index n = 0; n < x_.size(); ++n)
            if (!q_.contains(x_[n]))
                throw std::invalid_argument("RIS reactance outside the feasible interval");
    }

    static ris_loads uniform(Eigen::Index n, double r0, double x, interval feasible) {
        return {r0, RVector::Constant(n, x), feasible};
    }

    // Moves every reactance by `step` and clamps the result onto the interval.
    ris_loads shifted(const RVector &step) const {
        RVector x = x_ + step;
        for (Eigen::Index n = 0; n < x.size(); ++n)
            x[n] = q_.clamp(x[n]);
        return {r0_, std::move(x), q_};
    }

    double R0() const { return r0_; }
    const RVector &reactances() const { return x_; }
    const interval &feasible() const { return q_; }
    Eigen::Index size() const { return x_.size(); }

    CVector diagonal() const {
        CVector d(x_.size());
        for (Eigen::Index n = 0; n < x_.size(); ++n)
            d[n] = cplx(r0_, x_[n]);
        return d;
    }

    CMatrix matrix() const { return diagonal().asDiagonal(); }

  private:
    double r0_ = 0.0;
    RVector x_;
    interval q_;
};

// Channel with the ESO block eliminated by a Schur complement. The only
// remaining unknown is the RIS load matrix.
struct folded_channel {
    CMatrix Zbar_OO; // Z_OO + Z_US
    CMatrix Z_ROT;   // L x M
    CMatrix Z_ROS;   // L x N
    CMatrix Z_SOS;   // N x N
    CMatrix Z_SOT;   // N x M
    CMatrix Z_SS;    // N x N
    CMatrix Z_RL;    // (I + Z_RR Z_L^-1)^-1
    CMatrix Z_TG;    // (Z_TT + Z_G)^-1
    CMatrix H_d;     // Z_RL Z_ROT Z_TG
    CMatrix left;    // Z_RL Z_ROS, L x N
    CMatrix right;   // Z_SOT Z_TG, N x M
    double zbar_oo_condition = 1.0;

    Eigen::Index M() const { return Z_TG.rows(); }
    Eigen::Index L() const { return Z_RL.rows(); }
    Eigen::Index N() const { return Z_SS.rows(); }

    // Z_SS + Z_SOS + Z_RIS, the matrix inverted for every load setting.
    CMatrix ris_block(const ris_loads &loads) const {
        if (loads.size() != N())
            throw dimension_error("RIS load count does not match the folded channel");
        CMatrix a = Z_SS + Z_SOS;
        a.diagonal() += loads.diagonal();
        return a;
    }

    // H_E2E for a precomputed G = (Z_SS + Z_SOS + Z_RIS)^-1.
    CMatrix channel_from_inverse(const CMatrix &G) const { return H_d - left * G * right; }
};

namespace detail {

inline void finish_fold(folded_channel &f) {
    f.H_d = f.Z_RL * f.Z_ROT * f.Z_TG;
    f.left = f.Z_RL * f.Z_ROS;
    f.right = f.Z_SOT * f.Z_TG;
}

} // namespace detail

// Eliminates the ESOs. Z̄_OO is factorized once and applied through
// solves; the terminal matrices Z_RL and Z_TG are small and kept explicit.
inline folded_channel fold_esos(const impedance_set &z) {
    folded_channel f;
    const Eigen::Index L = z.L(), N = z.N(), Ns = z.Ns();

    f.Zbar_OO = z.Z_OO();
    f.Zbar_OO.diagonal() += z.Z_US;
    f.Z_SS = z.Z_SS();
    if (Ns > 0) {
        const checked_lu zoo(f.Zbar_OO, "Zbar_OO");
        f.zbar_oo_condition = zoo.condition();
        const CMatrix x_ot = zoo.solve(z.Z_OT());
        const CMatrix x_os = zoo.solve(z.Z_OS());
        f.Z_ROT = z.Z_RT - z.Z_RO() * x_ot;
        f.Z_ROS = z.Z_RO() * x_os - z.Z_RS();
        f.Z_SOS = -(z.Z_SO() * x_os);
        f.Z_SOT = z.Z_SO() * x_ot - z.Z_ST();
    } else {
        f.Z_ROT = z.Z_RT;
        f.Z_ROS = -z.Z_RS();
        f.Z_SOS = CMatrix::Zero(N, N);
        f.Z_SOT = -z.Z_ST();
    }

    CMatrix rl = CMatrix::Identity(L, L) + z.Z_RR * z.Z_L.cwiseInverse().asDiagonal();
    f.Z_RL = checked_lu(rl, "I + Z_RR Z_L^-1").inverse();
    CMatrix tg = z.Z_TT;
    tg.diagonal() += z.Z_G;
    f.Z_TG = checked_lu(tg, "Z_TT + Z_G").inverse();
    detail::finish_fold(f);
    return f;
}

// The additive multipath model: same folded form, with the RIS-ESO
// interaction terms removed (Z_ROS = -Z_RS, Z_SOS = 0, Z_SOT = -Z_ST).
inline folded_channel without_interaction(const folded_channel &f, const impedance_set &z) {
    folded_channel out = f;
    out.Z_ROS = -z.Z_RS();
    out.Z_SOS = CMatrix::Zero(z.N(), z.N());
    out.Z_SOT = -z.Z_ST();
    detail::finish_fold(out);
    return out;
}

// H_E2E = Z_RL [Z_ROT - Z_ROS (Z_SS + Z_SOS + Z_RIS)^-1 Z_SOT] Z_TG.
inline CMatrix end_to_end_channel(const folded_channel &f, const ris_loads &loads) {
    const checked_lu inner(f.ris_block(loads), "Z_SS + Z_SOS + Z_RIS");
    return f.H_d - f.left * inner.solve(f.right);
}

// (Z_EE + Z_SC)^-1 assembled blockwise from the folded quantities, in the
// [O, S] order of Z_EE. Used to cross-check the fold against a dense inverse.
inline CMatrix schur_inverse(const folded_channel &f, const impedance_set &z, const ris_loads &loads) {
    const Eigen::Index Ns = z.Ns(), N = z.N();
    const CMatrix G = checked_lu(f.ris_block(loads), "Z_SS + Z_SOS + Z_RIS").inverse();
    CMatrix out(Ns + N, Ns + N);
    out.bottomRightCorner(N, N) = G;
    if (Ns > 0) {
        const checked_lu zoo(f.Zbar_OO, "Zbar_OO");
        const CMatrix zbar_inv = zoo.inverse();
        const CMatrix a_os = zbar_inv * z.Z_OS();
        const CMatrix so_a = z.Z_SO() * zbar_inv;
        out.topRightCorner(Ns, N) = -a_os * G;
        out.bottomLeftCorner(N, Ns) = -G * so_a;
        out.topLeftCorner(Ns, Ns) = zbar_inv + a_os * G * so_a;
    }
    return out;
}

// Channel predicted by the model that ignores RIS-ESO interaction.
inline CMatrix mismatched_channel(const folded_channel &f, const impedance_set &z, const ris_loads &loads) {
    return end_to_end_channel(without_interaction(f, z), loads);
}

} // namespace saris

#endif // SARIS_CHANNEL_HPP
