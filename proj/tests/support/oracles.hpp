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

// Independent reference computations used only by the test suites.

#ifndef SARIS_TESTS_ORACLES_HPP
#define SARIS_TESTS_ORACLES_HPP

#include <cmath>
#include <random>
#include <vector>

#include <gsl/gsl_sf_expint.h>

#include "saris/saris.hpp"

namespace saris::oracle {

// Side-by-side half-wave dipoles (closed form in cosine/sine integrals).
// Uses the exact eta / (4 pi) in place of the customary 30 ohms.
inline cplx halfwave_mutual(double spacing, double wavelength) {
    const double k = 2.0 * M_PI / wavelength;
    const double len = 0.5 * wavelength;
    const double u0 = k * spacing;
    const double u1 = k * (std::sqrt(spacing * spacing + len * len) + len);
    const double u2 = k * (std::sqrt(spacing * spacing + len * len) - len);
    const double c = 29.9792458;
    const double re = c * (2.0 * gsl_sf_Ci(u0) - gsl_sf_Ci(u1) - gsl_sf_Ci(u2));
    const double im = -c * (2.0 * gsl_sf_Si(u0) - gsl_sf_Si(u1) - gsl_sf_Si(u2));
    return {re, im};
}

// Self impedance of a half-wave dipole of radius a: the same closed form
// with the spacing replaced by the radius (thin-wire limit).
inline cplx halfwave_self(double radius, double wavelength) { return halfwave_mutual(radius, wavelength); }

// End-to-end channel straight from the unfolded block expression, with a
// dense inverse of Z_EE + Z_SC and receiver factor Z_L (Z_L + Z_RR)^-1.
inline CMatrix direct_channel(const impedance_set &z, const ris_loads &loads) {
    CVector sc(z.Ns() + z.N());
    sc << z.Z_US, loads.diagonal();
    CMatrix ee = z.Z_EE;
    ee.diagonal() += sc;
    const CMatrix ee_inv = ee.fullPivLu().inverse();
    CMatrix zl = z.Z_L.asDiagonal();
    const CMatrix rl = zl * CMatrix(zl + z.Z_RR).fullPivLu().inverse();
    CMatrix tg = z.Z_TT;
    tg.diagonal() += z.Z_G;
    return rl * (z.Z_RT - z.Z_RE * ee_inv * z.Z_ET) * tg.fullPivLu().inverse();
}

inline CMatrix dense_ee_inverse(const impedance_set &z, const ris_loads &loads) {
    CMatrix ee = z.Z_EE;
    ee.diagonal().head(z.Ns()) += z.Z_US;
    ee.diagonal().tail(z.N()) += loads.diagonal();
    return ee.fullPivLu().inverse();
}

// Term-by-term sum over users and streams.
inline double smse_loop(const CMatrix &H, const CMatrix &W, double s2) {
    double acc = 0.0;
    for (Eigen::Index l = 0; l < H.rows(); ++l) {
        for (Eigen::Index k = 0; k < W.cols(); ++k) {
            cplx hw = 0.0;
            for (Eigen::Index m = 0; m < H.cols(); ++m)
                hw += H(l, m) * W(m, k);
            acc += std::norm(hw);
            if (k == l)
                acc -= 2.0 * hw.real();
        }
        acc += 1.0 + s2;
    }
    return acc;
}

inline double sum_rate_loop(const CMatrix &H, const CMatrix &W, double s2) {
    double rate = 0.0;
    for (Eigen::Index l = 0; l < H.rows(); ++l) {
        double desired = 0.0, interference = 0.0;
        for (Eigen::Index k = 0; k < W.cols(); ++k) {
            cplx hw = 0.0;
            for (Eigen::Index m = 0; m < H.cols(); ++m)
                hw += H(l, m) * W(m, k);
            (k == l ? desired : interference) += std::norm(hw);
        }
        rate += std::log2(1.0 + desired / (interference + s2));
    }
    return rate;
}

struct instance {
    std::vector<dipole> dipoles;
    impedance_set z;
    folded_channel f;
    ris_loads loads;
};

// Random geometry with dipoles scattered in a 3-wavelength square, at
// least a tenth of a wavelength apart.
inline instance random_instance(std::uint64_t seed, int M, int L, int N, int Ns, double wavelength = 0.06) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> pos(0.0, 3.0 * wavelength);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    instance out;
    auto place = [&](role kind) {
        for (;;) {
            Eigen::Vector3d p(pos(gen), pos(gen), 0.0);
            bool ok = true;
            for (const auto &d : out.dipoles)
                ok = ok && (d.position - p).norm() >= 0.1 * wavelength;
            if (ok) {
                out.dipoles.push_back({p, 0.5 * wavelength, wavelength / 500.0, kind});
                return;
            }
        }
    };
    for (int i = 0; i < M; ++i)
        place(role::transmitter);
    for (int i = 0; i < L; ++i)
        place(role::receiver);
    for (int i = 0; i < Ns; ++i)
        place(role::eso);
    for (int i = 0; i < N; ++i)
        place(role::ris_cell);
    terminations t{CVector::Constant(M, 50.0), CVector::Constant(L, 50.0), CVector(Ns)};
    for (int i = 0; i < Ns; ++i)
        t.Z_US[i] = cplx(5.0 * unit(gen), 40.0 * (unit(gen) - 0.5));
    out.z = assemble_impedances(out.dipoles, wavelength, t);
    out.f = fold_esos(out.z);
    const interval q{-302.50, -19.66};
    RVector x(N);
    for (int n = 0; n < N; ++n)
        x[n] = q.lo + (q.hi - q.lo) * unit(gen);
    out.loads = ris_loads(2.0 * unit(gen), x, q);
    return out;
}

inline CMatrix random_matrix(std::mt19937_64 &gen, Eigen::Index rows, Eigen::Index cols, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    CMatrix a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            a(i, j) = cplx(g(gen), g(gen));
    return a;
}

} // namespace saris::oracle

#endif // SARIS_TESTS_ORACLES_HPP
