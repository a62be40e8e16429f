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

#ifndef SARIS_IMPEDANCE_HPP
#define SARIS_IMPEDANCE_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <tuple>
#include <vector>

#include "saris/dipole.hpp"
#include "saris/linalg.hpp"
#include "saris/quadrature.hpp"

namespace saris {

// eta_0 / (4 pi) = mu_0 c / (4 pi) in ohms.
inline constexpr double kEtaOver4Pi = 29.9792458;

namespace detail {

inline auto wire_key(const dipole &d) {
    return std::make_tuple(d.length, d.wire_radius, d.position.x(), d.position.y(), d.position.z());
}

// Induced-EMF coupling of two parallel z-directed dipoles with sinusoidal
// currents. `src` radiates; its exact near field E_z is integrated against
// the current of `obs`, both normalized to their terminal currents.
inline cplx induced_emf(const dipole &src, const dipole &obs, double rho, double k,
                        const quadrature_options &opts) {
    const double h1 = src.half_length();
    const double h2 = obs.half_length();
    const double s1 = std::sin(k * h1);
    const double s2 = std::sin(k * h2);
    if (std::abs(s1) < 1e-6 || std::abs(s2) < 1e-6)
        throw geometry_error("dipole length is a multiple of the wavelength; terminal current vanishes");
    const double two_cos = 2.0 * std::cos(k * h1);
    const double offset = src.position.z() - obs.position.z(); // source center relative to observer center
    const double rho2 = rho * rho;

    // e^{-jkR}/R
    auto spherical = [k](double r2) {
        const double r = std::sqrt(r2);
        const double inv = 1.0 / r;
        return cplx(std::cos(k * r) * inv, -std::sin(k * r) * inv);
    };
    auto integrand = [&](double u) {
        const double top = u - (offset + h1);
        const double bottom = u - (offset - h1);
        const double mid = u - offset;
        cplx kernel = spherical(rho2 + top * top) + spherical(rho2 + bottom * bottom);
        if (two_cos != 0.0)
            kernel -= two_cos * spherical(rho2 + mid * mid);
        return kernel * std::sin(k * (h2 - std::abs(u)));
    };

    std::vector<double> breaks = {-h2, 0.0, h2};
    for (double p : {offset - h1, offset, offset + h1})
        if (p > -h2 && p < h2)
            breaks.push_back(p);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    const cplx integral = integrate<cplx>(integrand, breaks, opts);
    return cplx(0.0, kEtaOver4Pi / (s1 * s2)) * integral;
}

} // namespace detail

// Mutual impedance (ohms) between two z-aligned thin-wire dipoles.
//
// Uses the induced-EMF method with one sinusoidal current mode per dipole.
// When both arguments describe the same wire, the self impedance is
// returned, with the field evaluated on the wire surface (rho = radius).
// The pair is put in a canonical order first, so the result is exactly
// symmetric in its arguments.
inline cplx mutual_impedance(const dipole &a, const dipole &b, double wavelength,
                             const quadrature_options &opts = {}) {
    if (!(wavelength > 0.0) || !std::isfinite(wavelength))
        throw geometry_error("wavelength must be positive");
    a.validate();
    b.validate();
    const bool ordered = detail::wire_key(a) <= detail::wire_key(b);
    const dipole &src = ordered ? a : b;
    const dipole &obs = ordered ? b : a;
    const double k = 2.0 * std::numbers::pi / wavelength;

    if (src.same_wire(obs))
        return detail::induced_emf(src, obs, src.wire_radius, k, opts);

    const Eigen::Vector3d delta = obs.position - src.position;
    const double radii = src.wire_radius + obs.wire_radius;
    if (delta.norm() < radii)
        throw geometry_error("distinct dipoles overlap (center distance below the sum of wire radii)");
    const double rho = std::hypot(delta.x(), delta.y());
    if (rho < radii && std::abs(delta.z()) < src.half_length() + obs.half_length())
        throw geometry_error("distinct dipoles intersect along their common axis");
    return detail::induced_emf(src, obs, rho, k, opts);
}

// Impedance blocks of the transmitter (T), receivers (R), ESOs (O) and RIS
// cells (S), plus the diagonal terminations.
//
// The scattering environment E stacks the ESOs first and the RIS second.
struct impedance_set {
    CMatrix Z_TT; // M x M
    CMatrix Z_RR; // L x L
    CMatrix Z_RT; // L x M
    CMatrix Z_RE; // L x (Ns + N) = [Z_RO | Z_RS]
    CMatrix Z_ET; // (Ns + N) x M = [Z_OT ; Z_ST]
    CMatrix Z_EE; // (Ns + N) x (Ns + N)
    CVector Z_G;  // generator impedances (diagonal), M
    CVector Z_L;  // receiver loads (diagonal), L
    CVector Z_US; // ESO loads (diagonal), Ns

    // Full port matrix in [T, R, O, S] order.
    CMatrix ports;

    Eigen::Index M() const { return Z_TT.rows(); }
    Eigen::Index L() const { return Z_RR.rows(); }
    Eigen::Index Ns() const { return Z_US.size(); }
    Eigen::Index N() const { return Z_EE.rows() - Ns(); }

    auto Z_RO() const { return Z_RE.leftCols(Ns()); }
    auto Z_RS() const { return Z_RE.rightCols(N()); }
    auto Z_OT() const { return Z_ET.topRows(Ns()); }
    auto Z_ST() const { return Z_ET.bottomRows(N()); }
    auto Z_OO() const { return Z_EE.topLeftCorner(Ns(), Ns()); }
    auto Z_OS() const { return Z_EE.topRightCorner(Ns(), N()); }
    auto Z_SO() const { return Z_EE.bottomLeftCorner(N(), Ns()); }
    auto Z_SS() const { return Z_EE.bottomRightCorner(N(), N()); }

    // Drops the RIS-ESO coupling blocks (Z_OS = Z_SO^T = 0).
    impedance_set without_ris_eso_coupling() const {
        impedance_set out = *this;
        out.Z_EE.topRightCorner(Ns(), N()).setZero();
        out.Z_EE.bottomLeftCorner(N(), Ns()).setZero();
        const Eigen::Index off = M() + L();
        out.ports.block(off, off + Ns(), Ns(), N()).setZero();
        out.ports.block(off + Ns(), off, N(), Ns()).setZero();
        return out;
    }
};

struct terminations {
    CVector Z_G;  // one entry per transmit antenna
    CVector Z_L;  // one entry per receiver
    CVector Z_US; // one entry per ESO
};

// Splits a port matrix in [T, R, O, S] order into its named blocks.
inline impedance_set partition_ports(CMatrix ports, Eigen::Index M, Eigen::Index L, Eigen::Index Ns,
                                     const terminations &loads) {
    const Eigen::Index P = ports.rows();
    const Eigen::Index N = P - M - L - Ns;
    if (ports.cols() != P || M < 1 || L < 1 || Ns < 0 || N < 1)
        throw dimension_error("port matrix does not match the T, R, O, S counts");
    if (loads.Z_G.size() != M || loads.Z_L.size() != L || loads.Z_US.size() != Ns)
        throw dimension_error("termination vectors do not match the dipole counts");
    impedance_set z;
    const Eigen::Index t = 0, r = M, e = M + L;
    z.Z_TT = ports.block(t, t, M, M);
    z.Z_RR = ports.block(r, r, L, L);
    z.Z_RT = ports.block(r, t, L, M);
    z.Z_RE = ports.block(r, e, L, Ns + N);
    z.Z_ET = ports.block(e, t, Ns + N, M);
    z.Z_EE = ports.block(e, e, Ns + N, Ns + N);
    z.Z_G = loads.Z_G;
    z.Z_L = loads.Z_L;
    z.Z_US = loads.Z_US;
    z.ports = std::move(ports);
    return z;
}

// Fills every block from pairwise mutual impedances. Each unordered pair
// is evaluated once and mirrored, so the port matrix is exactly symmetric.
inline impedance_set assemble_impedances(std::span<const dipole> dipoles, double wavelength,
                                         const terminations &loads, const quadrature_options &opts = {}) {
    std::vector<dipole> ordered;
    ordered.reserve(dipoles.size());
    Eigen::Index counts[4] = {0, 0, 0, 0};
    for (role r : {role::transmitter, role::receiver, role::eso, role::ris_cell})
        for (const auto &d : dipoles)
            if (d.kind == r) {
                ordered.push_back(d);
                ++counts[static_cast<int>(r)];
            }
    const Eigen::Index M = counts[static_cast<int>(role::transmitter)];
    const Eigen::Index L = counts[static_cast<int>(role::receiver)];
    const Eigen::Index N = counts[static_cast<int>(role::ris_cell)];
    const Eigen::Index Ns = counts[static_cast<int>(role::eso)];
    if (M == 0 || L == 0 || N == 0)
        throw geometry_error("scenario needs at least one transmitter, receiver and RIS cell");
    if (loads.Z_G.size() != M || loads.Z_L.size() != L || loads.Z_US.size() != Ns)
        throw dimension_error("termination vectors do not match the dipole counts");

    const Eigen::Index P = M + L + Ns + N;
    for (Eigen::Index i = 0; i < P; ++i)
        for (Eigen::Index j = i + 1; j < P; ++j)
            if (ordered[i].position == ordered[j].position)
                throw geometry_error("duplicate dipole position (" + std::string(to_string(ordered[i].kind)) +
                                     " and " + std::string(to_string(ordered[j].kind)) + ")");

    CMatrix ports(P, P);
    for (Eigen::Index i = 0; i < P; ++i)
        for (Eigen::Index j = i; j < P; ++j) {
            const cplx v = mutual_impedance(ordered[i], ordered[j], wavelength, opts);
            ports(i, j) = v;
            ports(j, i) = v;
        }
    return partition_ports(std::move(ports), M, L, Ns, loads);
}

} // namespace saris

#endif // SARIS_IMPEDANCE_HPP
