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

#ifndef SARIS_SCENARIO_HPP
#define SARIS_SCENARIO_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "saris/channel.hpp"
#include "saris/dipole.hpp"
#include "saris/errors.hpp"
#include "saris/impedance.hpp"
#include "saris/philox.hpp"

namespace saris {

using vec2 = Eigen::Vector2d;

// Deployment and link parameters. Lengths and positions are meters;
// impedances ohms; powers watts. Defaults reproduce the reference desk
// scenario (lambda = 6 cm, N = 16 cells at lambda/2).
struct scenario_config {
    double wavelength = 0.06;
    double wire_radius = 0.06 / 500.0;
    int M = 4;
    int L = 2;
    int N = 16;
    int N_c = 4;
    int N_O = 50;
    double d = 0.03;  // RIS spacing along both grid axes
    double R = 2.4;   // cluster region radius (40 lambda)
    double r = 0.06;  // cluster disk radius (lambda)
    vec2 p_BS{0.0, 0.0};
    vec2 p_RIS{0.0, 2.4};
    std::vector<vec2> p_UE{{0.96, 1.44}, {1.2, 1.44}};
    double R0 = 0.2;
    interval Q_interval{-302.50, -19.66};
    cplx Z_G{50.0, 0.0};
    cplx Z_L{50.0, 0.0};
    cplx Z_US{0.0, 0.0};
    double P = 1.0;
    double sigma_n2 = 1e-11;
    std::uint64_t seed = 0;
    int trials = 10;

    int N_s() const { return N_c * N_O; }
    int side() const { return static_cast<int>(std::lround(std::sqrt(static_cast<double>(N)))); }

    // UE positions actually used: the first L listed ones, extended along
    // the step between the last two listed positions when L exceeds the list.
    std::vector<vec2> ue_positions() const;

    void validate() const;

    bool operator==(const scenario_config &o) const {
        return wavelength == o.wavelength && wire_radius == o.wire_radius && M == o.M && L == o.L && N == o.N &&
               N_c == o.N_c && N_O == o.N_O && d == o.d && R == o.R && r == o.r && p_BS == o.p_BS &&
               p_RIS == o.p_RIS && p_UE == o.p_UE && R0 == o.R0 && Q_interval == o.Q_interval && Z_G == o.Z_G &&
               Z_L == o.Z_L && Z_US == o.Z_US && P == o.P && sigma_n2 == o.sigma_n2 && seed == o.seed &&
               trials == o.trials;
    }
};

inline std::vector<vec2> scenario_config::ue_positions() const {
    std::vector<vec2> out;
    for (int l = 0; l < L; ++l) {
        if (l < static_cast<int>(p_UE.size())) {
            out.push_back(p_UE[static_cast<std::size_t>(l)]);
            continue;
        }
        const vec2 step = p_UE.size() >= 2 ? vec2(p_UE.back() - p_UE[p_UE.size() - 2]) : vec2(2.0 * wavelength, 0.0);
        out.push_back(out.back() + step);
    }
    return out;
}

inline void scenario_config::validate() const {
    auto fail = [](const std::string &m) { throw config_error(0, m); };
    if (!(wavelength > 0.0))
        fail("wavelength must be positive");
    if (!(wire_radius > 0.0) || !(wire_radius < wavelength / 20.0))
        fail("wire_radius must be positive and below wavelength/20 (thin half-wave wires)");
    if (M < 1 || L < 1 || N < 1 || N_c < 0 || N_O < 0)
        fail("M, L and N must be positive; N_c and N_O non-negative");
    if (side() * side() != N)
        fail("N = " + std::to_string(N) + " is not a perfect square");
    if (!(d > 0.0))
        fail("d must be positive");
    if (!(R > 0.0) || !(r > 0.0) || !(r < R))
        fail("cluster radii must satisfy 0 < r < R");
    if (p_UE.empty())
        fail("at least one p_UE position is required");
    if (!(R0 >= 0.0))
        fail("R0 must be non-negative");
    if (!(Q_interval.lo <= Q_interval.hi))
        fail("Q_interval must satisfy lo <= hi");
    if (!(P > 0.0) || !(sigma_n2 > 0.0))
        fail("P and sigma_n2 must be positive");
    if (trials < 1)
        fail("trials must be positive");
}

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::optional<double> parse_double(std::string_view s) {
    std::string t = trim(s);
    if (!t.empty() && t.front() == '+')
        t.erase(0, 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(v))
        return std::nullopt;
    return v;
}

inline std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

// Strips a trailing wavelength marker ("λ" or "lambda").
inline bool strip_lambda(std::string &s) {
    s = trim(s);
    for (std::string_view suffix : {std::string_view("λ"), std::string_view("lambda")})
        if (s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0) {
            s = trim(s.substr(0, s.size() - suffix.size()));
            return true;
        }
    return false;
}

} // namespace detail

// Writes every key with shortest round-trip numbers ('.' decimal point).
inline std::string serialize_config(const scenario_config &c) {
    using detail::format_double;
    auto v2 = [](const vec2 &p) { return "[" + format_double(p.x()) + ", " + format_double(p.y()) + "]"; };
    auto cx = [](cplx z) {
        std::string im = format_double(z.imag());
        if (im.front() != '-')
            im = "+" + im;
        return format_double(z.real()) + im + "j";
    };
    std::ostringstream os;
    os << "rng = " << philox4x32::name << "\n";
    os << "wavelength = " << format_double(c.wavelength) << "\n";
    os << "wire_radius = " << format_double(c.wire_radius) << "\n";
    os << "M = " << c.M << "\nL = " << c.L << "\nN = " << c.N << "\nN_c = " << c.N_c << "\nN_O = " << c.N_O << "\n";
    os << "d = " << format_double(c.d) << "\nR = " << format_double(c.R) << "\nr = " << format_double(c.r) << "\n";
    os << "p_BS = " << v2(c.p_BS) << "\np_RIS = " << v2(c.p_RIS) << "\np_UE = ";
    for (std::size_t i = 0; i < c.p_UE.size(); ++i)
        os << (i ? "; " : "") << v2(c.p_UE[i]);
    os << "\nR0 = " << format_double(c.R0) << "\n";
    os << "Q_interval = [" << format_double(c.Q_interval.lo) << ", " << format_double(c.Q_interval.hi) << "]\n";
    os << "Z_G = " << cx(c.Z_G) << "\nZ_L = " << cx(c.Z_L) << "\nZ_US = " << cx(c.Z_US) << "\n";
    os << "P = " << format_double(c.P) << "\nsigma_n2 = " << format_double(c.sigma_n2) << "\n";
    os << "seed = " << c.seed << "\ntrials = " << c.trials << "\n";
    return os.str();
}

// Parses flat "key = value" text. Omitted keys keep their defaults;
// '#' starts a comment. Lengths take an optional λ suffix (multiples of
// the wavelength), e.g. "d = 0.5λ" or "p_UE = [16, 24]λ; [20, 24]λ".
inline scenario_config parse_config(std::string_view text) {
    struct entry {
        std::string value;
        int line;
    };
    std::map<std::string, entry> entries;
    static const std::vector<std::string> known = {
        "rng", "wavelength", "wire_radius", "M", "L", "N", "N_c", "N_O", "d", "R", "r", "p_BS", "p_RIS", "p_UE",
        "R0", "Q_interval", "Z_G", "Z_L", "Z_US", "P", "sigma_n2", "seed", "trials"};

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        const std::string line = detail::trim(raw);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(line_no, "expected 'key = value'");
        const std::string key = detail::trim(std::string_view(line).substr(0, eq));
        const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw config_error(line_no, "unknown key '" + key + "'");
        if (value.empty())
            throw config_error(line_no, "missing value for '" + key + "'");
        if (entries.count(key))
            throw config_error(line_no, "duplicate key '" + key + "'");
        entries[key] = {value, line_no};
    }

    scenario_config c;
    auto real = [](const entry &e) {
        const auto v = detail::parse_double(e.value);
        if (!v)
            throw config_error(e.line, "expected a number, got '" + e.value + "'");
        return *v;
    };
    auto integer = [](const entry &e) -> long long {
        long long v = 0;
        const std::string t = detail::trim(e.value);
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || ptr != t.data() + t.size())
            throw config_error(e.line, "expected an integer, got '" + e.value + "'");
        return v;
    };
    if (auto it = entries.find("wavelength"); it != entries.end()) {
        std::string v = it->second.value;
        if (detail::strip_lambda(v))
            throw config_error(it->second.line, "wavelength cannot be given in multiples of itself");
        c.wavelength = real(it->second);
        if (!(c.wavelength > 0.0))
            throw config_error(it->second.line, "wavelength must be positive");
        // Wavelength-relative defaults follow the configured wavelength.
        const double scale = c.wavelength / 0.06;
        c.wire_radius *= scale;
        c.d *= scale;
        c.R *= scale;
        c.r *= scale;
        c.p_RIS *= scale;
        for (auto &p : c.p_UE)
            p *= scale;
    }
    const double lambda = c.wavelength;
    auto length = [&](const entry &e) {
        std::string v = e.value;
        const bool rel = detail::strip_lambda(v);
        const auto x = detail::parse_double(v);
        if (!x)
            throw config_error(e.line, "expected a length, got '" + e.value + "'");
        return rel ? *x * lambda : *x;
    };
    auto point = [&](const entry &e, std::string v) {
        const bool rel = detail::strip_lambda(v);
        v = detail::trim(v);
        if (v.size() < 2 || v.front() != '[' || v.back() != ']')
            throw config_error(e.line, "expected a position like [x, y], got '" + v + "'");
        const std::string inner = v.substr(1, v.size() - 2);
        const auto comma = inner.find(',');
        if (comma == std::string::npos)
            throw config_error(e.line, "position needs two coordinates");
        std::string xs = inner.substr(0, comma), ys = inner.substr(comma + 1);
        const bool rx = detail::strip_lambda(xs), ry = detail::strip_lambda(ys);
        const auto x = detail::parse_double(xs), y = detail::parse_double(ys);
        if (!x || !y)
            throw config_error(e.line, "bad coordinate in '" + v + "'");
        const double sx = (rel || rx) ? lambda : 1.0, sy = (rel || ry) ? lambda : 1.0;
        return vec2(*x * sx, *y * sy);
    };
    auto complex_value = [](const entry &e) {
        std::string v = detail::trim(e.value);
        if (!v.empty() && (v.back() == 'j' || v.back() == 'i')) {
            v.pop_back();
            // split at the last sign that is not part of an exponent
            std::size_t split = std::string::npos;
            for (std::size_t i = v.size(); i-- > 1;)
                if ((v[i] == '+' || v[i] == '-') && v[i - 1] != 'e' && v[i - 1] != 'E') {
                    split = i;
                    break;
                }
            std::optional<double> re = 0.0, im;
            if (split == std::string::npos) {
                im = detail::parse_double(v.empty() ? "1" : v);
            } else {
                re = detail::parse_double(v.substr(0, split));
                std::string is = v.substr(split);
                if (is == "+" || is == "-")
                    is += "1";
                im = detail::parse_double(is);
            }
            if (!re || !im)
                throw config_error(e.line, "expected a complex impedance like 50+0j, got '" + e.value + "'");
            return cplx(*re, *im);
        }
        const auto re = detail::parse_double(v);
        if (!re)
            throw config_error(e.line, "expected a complex impedance like 50+0j, got '" + e.value + "'");
        return cplx(*re, 0.0);
    };

    for (const auto &[key, e] : entries) {
        if (key == "rng") {
            if (e.value != philox4x32::name)
                throw config_error(e.line, "unsupported rng '" + e.value + "' (only " +
                                               std::string(philox4x32::name) + ")");
        } else if (key == "wavelength") {
        } else if (key == "wire_radius") {
            c.wire_radius = length(e);
        } else if (key == "M" || key == "L" || key == "N" || key == "N_c" || key == "N_O" || key == "trials") {
            const long long v = integer(e);
            const bool allow_zero = key == "N_c" || key == "N_O";
            if (v < (allow_zero ? 0 : 1) || v > 1'000'000)
                throw config_error(e.line, key + " out of range");
            int &dst = key == "M" ? c.M : key == "L" ? c.L : key == "N" ? c.N : key == "N_c" ? c.N_c
                                                                          : key == "N_O" ? c.N_O : c.trials;
            dst = static_cast<int>(v);
            if (key == "N") {
                const long long s = std::llround(std::sqrt(static_cast<double>(v)));
                if (s * s != v)
                    throw config_error(e.line, "N = " + std::to_string(v) + " is not a perfect square");
            }
        } else if (key == "d" || key == "R" || key == "r") {
            const double v = length(e);
            if (!(v > 0.0))
                throw config_error(e.line, key + " must be positive");
            (key == "d" ? c.d : key == "R" ? c.R : c.r) = v;
        } else if (key == "p_BS") {
            c.p_BS = point(e, e.value);
        } else if (key == "p_RIS") {
            c.p_RIS = point(e, e.value);
        } else if (key == "p_UE") {
            c.p_UE.clear();
            std::string rest = e.value;
            std::size_t start = 0;
            while (start <= rest.size()) {
                const auto semi = rest.find(';', start);
                c.p_UE.push_back(point(e, rest.substr(start, semi == std::string::npos ? std::string::npos
                                                                                       : semi - start)));
                if (semi == std::string::npos)
                    break;
                start = semi + 1;
            }
        } else if (key == "R0") {
            c.R0 = real(e);
            if (!(c.R0 >= 0.0))
                throw config_error(e.line, "R0 must be non-negative");
        } else if (key == "Q_interval") {
            const vec2 q = point(e, e.value);
            if (!(q.x() <= q.y()))
                throw config_error(e.line, "Q_interval must satisfy lo <= hi");
            c.Q_interval = {q.x(), q.y()};
        } else if (key == "Z_G") {
            c.Z_G = complex_value(e);
        } else if (key == "Z_L") {
            c.Z_L = complex_value(e);
        } else if (key == "Z_US") {
            c.Z_US = complex_value(e);
        } else if (key == "P" || key == "sigma_n2") {
            const double v = real(e);
            if (!(v > 0.0))
                throw config_error(e.line, key + " must be positive");
            (key == "P" ? c.P : c.sigma_n2) = v;
        } else if (key == "seed") {
            std::uint64_t v = 0;
            const auto [ptr, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
            if (ec != std::errc() || ptr != e.value.data() + e.value.size())
                throw config_error(e.line, "seed must be a non-negative 64-bit integer");
            c.seed = v;
        }
    }
    try {
        c.validate();
    } catch (const config_error &err) {
        throw config_error(0, std::string("invalid configuration: ") + err.what());
    }
    return c;
}

namespace detail {

inline vec2 semicircle_axis(const scenario_config &c) {
    vec2 centroid = vec2::Zero();
    const auto ues = c.ue_positions();
    for (const auto &p : ues)
        centroid += p;
    centroid /= static_cast<double>(ues.size());
    vec2 axis = centroid - c.p_RIS;
    if (axis.norm() == 0.0)
        axis = vec2(0.0, -1.0);
    return axis.normalized();
}

// Area-uniform point in the half disk of radius R around `center` on the
// side of `axis`.
inline vec2 draw_half_disk(random_stream &rng, const vec2 &center, const vec2 &axis, double radius) {
    const double rho = radius * std::sqrt(rng.uniform());
    const double phi = std::atan2(axis.y(), axis.x()) + (rng.uniform() - 0.5) * std::numbers::pi;
    return center + rho * vec2(std::cos(phi), std::sin(phi));
}

inline vec2 draw_disk(random_stream &rng, const vec2 &center, double radius) {
    const double rho = radius * std::sqrt(rng.uniform());
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    return center + rho * vec2(std::cos(phi), std::sin(phi));
}

} // namespace detail

// Cluster centers alone, for distribution checks.
inline std::vector<vec2> draw_cluster_centers(const scenario_config &c, std::uint64_t realization, int count) {
    random_stream rng(c.seed, realization, 0);
    const vec2 axis = detail::semicircle_axis(c);
    std::vector<vec2> out;
    for (int i = 0; i < count; ++i)
        out.push_back(detail::draw_half_disk(rng, c.p_RIS, axis, c.R));
    return out;
}

// Dipoles of one Monte-Carlo realization, in role order
// [transmitter, receivers, ESOs, RIS]. Pure function of (config, realization).
//
// Transmitter: uniform linear array along x, lambda/2 spacing, centered at
// p_BS. RIS: sqrt(N) x sqrt(N) grid in the xy-plane with spacing d,
// centered at p_RIS. ESOs: N_c cluster centers drawn area-uniformly in the
// half disk of radius R around p_RIS that faces the UEs, each holding N_O
// dipoles drawn uniformly in a disk of radius r.
//
// A cluster with a dipole within lambda/10 of any transmitter, receiver or
// RIS cell is redrawn; an ESO closer than lambda/50 to another ESO is
// redrawn inside its cluster.
inline std::vector<dipole> generate(const scenario_config &c, std::uint64_t realization) {
    c.validate();
    const double lambda = c.wavelength;
    const double len = lambda / 2.0;
    auto make = [&](double x, double y, role kind) {
        return dipole{Eigen::Vector3d(x, y, 0.0), len, c.wire_radius, kind};
    };

    std::vector<dipole> fixed;
    for (int m = 0; m < c.M; ++m)
        fixed.push_back(make(c.p_BS.x() + (m - 0.5 * (c.M - 1)) * lambda / 2.0, c.p_BS.y(), role::transmitter));
    for (const auto &p : c.ue_positions())
        fixed.push_back(make(p.x(), p.y(), role::receiver));
    std::vector<dipole> ris;
    const int side = c.side();
    for (int iy = 0; iy < side; ++iy)
        for (int ix = 0; ix < side; ++ix)
            ris.push_back(make(c.p_RIS.x() + (ix - 0.5 * (side - 1)) * c.d, c.p_RIS.y() + (iy - 0.5 * (side - 1)) * c.d,
                               role::ris_cell));

    const double keep_out = lambda / 10.0;
    const double eso_spacing = lambda / 50.0;
    constexpr int kMaxClusterRetries = 1000;
    constexpr int kMaxDipoleRetries = 1000;

    auto near_terminal = [&](const vec2 &p) {
        for (const auto *group : {&fixed, &ris})
            for (const auto &t : *group)
                if ((t.position.head<2>() - p).norm() < keep_out)
                    return true;
        return false;
    };

    random_stream rng(c.seed, realization, 0);
    const vec2 axis = detail::semicircle_axis(c);
    std::vector<dipole> esos;
    for (int k = 0; k < c.N_c; ++k) {
        bool placed = false;
        for (int attempt = 0; attempt < kMaxClusterRetries && !placed; ++attempt) {
            const vec2 center = detail::draw_half_disk(rng, c.p_RIS, axis, c.R);
            std::vector<dipole> cluster;
            bool ok = true;
            for (int o = 0; o < c.N_O && ok; ++o) {
                bool found = false;
                for (int t = 0; t < kMaxDipoleRetries && !found; ++t) {
                    const vec2 p = detail::draw_disk(rng, center, c.r);
                    if (near_terminal(p)) {
                        ok = false;
                        break;
                    }
                    found = true;
                    for (const auto *group : {&esos, &cluster})
                        for (const auto &e : *group)
                            if ((e.position.head<2>() - p).norm() < eso_spacing)
                                found = false;
                    if (found)
                        cluster.push_back(make(p.x(), p.y(), role::eso));
                }
                if (!found)
                    ok = false;
            }
            if (ok) {
                esos.insert(esos.end(), cluster.begin(), cluster.end());
                placed = true;
            }
        }
        if (!placed)
            throw geometry_error("could not place scattering cluster " + std::to_string(k) +
                                 " clear of the terminals");
    }

    std::vector<dipole> out = fixed;
    out.insert(out.end(), esos.begin(), esos.end());
    out.insert(out.end(), ris.begin(), ris.end());
    return out;
}

// Diagonal terminations for a generated realization.
inline terminations make_terminations(const scenario_config &c) {
    return {CVector::Constant(c.M, c.Z_G), CVector::Constant(c.L, c.Z_L), CVector::Constant(c.N_s(), c.Z_US)};
}

} // namespace saris

#endif // SARIS_SCENARIO_HPP
