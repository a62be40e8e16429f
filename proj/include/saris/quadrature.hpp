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

#ifndef SARIS_QUADRATURE_HPP
#define SARIS_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

namespace saris {

struct quadrature_options {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_intervals = 4000;
};

namespace detail {

// 15-point Kronrod nodes on [0, 1] (symmetric), with the embedded 7-point Gauss rule.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct kronrod_panel {
    double a, b;
    T value;
    double error;
    bool operator<(const kronrod_panel &o) const { return error < o.error; }
};

template <typename T, typename F>
kronrod_panel<T> kronrod15(F &f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    T kronrod = f(center) * kKronrodWeights[7];
    T gauss = f(center) * kGaussWeights[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const T sum = f(center - dx) + f(center + dx);
        kronrod += sum * kKronrodWeights[j];
        if (j % 2 == 1)
            gauss += sum * kGaussWeights[j / 2];
    }
    kronrod *= half;
    gauss *= half;
    using std::abs;
    return {a, b, kronrod, static_cast<double>(abs(kronrod - gauss))};
}

} // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) integration of f over the ordered
// breakpoints. The panel with the largest error estimate is bisected until
// the summed estimate meets max(abs_tol, rel_tol * |integral|).
//
// Panels are summed in breakpoint order so the result does not depend on
// the refinement history beyond the final partition.
template <typename T, typename F>
T integrate(F &&f, const std::vector<double> &breakpoints, const quadrature_options &opts = {}) {
    using detail::kronrod_panel;
    std::priority_queue<kronrod_panel<T>> active;
    std::vector<kronrod_panel<T>> done;
    T total{};
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i + 1] > breakpoints[i]))
            continue;
        auto p = detail::kronrod15<T>(f, breakpoints[i], breakpoints[i + 1]);
        total += p.value;
        error += p.error;
        active.push(p);
    }
    int panels = static_cast<int>(active.size());
    using std::abs;
    while (!active.empty() && panels < opts.max_intervals &&
           error > std::max(opts.abs_tol, opts.rel_tol * static_cast<double>(abs(total)))) {
        const auto worst = active.top();
        active.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            done.push_back(worst);
            continue;
        }
        auto left = detail::kronrod15<T>(f, worst.a, mid);
        auto right = detail::kronrod15<T>(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        active.push(left);
        active.push(right);
        ++panels;
    }
    while (!active.empty()) {
        done.push_back(active.top());
        active.pop();
    }
    std::sort(done.begin(), done.end(), [](const auto &x, const auto &y) { return x.a < y.a; });
    T sum{};
    for (const auto &p : done)
        sum += p.value;
    return sum;
}

} // namespace saris

#endif // SARIS_QUADRATURE_HPP
