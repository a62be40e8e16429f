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

#ifndef SARIS_EXPERIMENT_HPP
#define SARIS_EXPERIMENT_HPP

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "saris/channel.hpp"
#include "saris/impedance.hpp"
#include "saris/optimizer.hpp"
#include "saris/philox.hpp"
#include "saris/scenario.hpp"

namespace saris {

enum class algorithm { saris, mismatched, random };

inline constexpr algorithm kAllAlgorithms[] = {algorithm::saris, algorithm::mismatched, algorithm::random};

inline std::string_view to_string(algorithm a) {
    switch (a) {
    case algorithm::saris:
        return "saris";
    case algorithm::mismatched:
        return "mismatched";
    case algorithm::random:
        return "random";
    }
    return "unknown";
}

struct realization {
    std::vector<dipole> dipoles;
    impedance_set impedances;
    folded_channel folded;
};

struct experiment_options {
    double epsilon = 1e-8;
    int max_iter = 500;
    int random_trials = 100;
    quadrature_options quadrature{};
    // Optional hooks, called on the worker thread that owns the run.
    std::function<void(const realization &)> on_realization;
    std::function<void(algorithm, const optimizer_state &)> on_step;  // after every RIS update
    std::function<void(algorithm, const optimizer_state &)> on_final; // returned state of every run
};

inline optimizer_config make_optimizer_config(const scenario_config &c, const experiment_options &o) {
    optimizer_config oc;
    oc.P = c.P;
    oc.sigma_n2 = c.sigma_n2;
    oc.epsilon = o.epsilon;
    oc.max_iter = o.max_iter;
    oc.Q = c.Q_interval;
    oc.R0 = c.R0;
    return oc;
}

// FNV-1a over the canonical serialization, as 16 hex digits.
inline std::string config_hash(const scenario_config &c) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : serialize_config(c)) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4)
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    return out;
}

inline realization build_realization(const scenario_config &c, std::uint64_t index,
                                     const quadrature_options &quad = {}) {
    realization r;
    r.dipoles = generate(c, index);
    r.impedances = assemble_impedances(r.dipoles, c.wavelength, make_terminations(c), quad);
    r.folded = fold_esos(r.impedances);
    return r;
}

struct run_record {
    std::string config_hash;
    std::uint64_t seed = 0;
    std::uint64_t realization = 0;
    algorithm algo = algorithm::saris;
    std::vector<double> smse;
    std::vector<double> sum_rate;
    double final_smse = 0.0;
    double final_sum_rate = 0.0;
    int iterations = 0;
    double wall_time_s = 0.0;
    bool converged = false;
};

// Random-baseline draws use their own substream so they never share
// numbers with the geometry of the same realization.
inline constexpr std::uint32_t kBaselineStream = 1;

inline std::vector<run_record> run_realization(const scenario_config &c, std::uint64_t index,
                                               std::span<const algorithm> algos, const experiment_options &o) {
    const realization r = build_realization(c, index, o.quadrature);
    if (o.on_realization)
        o.on_realization(r);
    optimizer_config oc = make_optimizer_config(c, o);
    const std::string hash = config_hash(c);
    std::vector<run_record> out;
    for (algorithm a : algos) {
        const auto t0 = std::chrono::steady_clock::now();
        optimizer_state s;
        if (o.on_step)
            oc.on_step = [&o, a](const optimizer_state &st) { o.on_step(a, st); };
        switch (a) {
        case algorithm::saris:
            s = saris_optimize(r.folded, oc);
            break;
        case algorithm::mismatched:
            s = mismatched_optimize(r.folded, r.impedances, oc);
            break;
        case algorithm::random: {
            random_stream rng(c.seed, index, kBaselineStream);
            s = random_baseline(r.folded, oc, o.random_trials, [&rng] { return rng.uniform(); });
            break;
        }
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.on_final)
            o.on_final(a, s);
        run_record rec;
        rec.config_hash = hash;
        rec.seed = c.seed;
        rec.realization = index;
        rec.algo = a;
        rec.smse = std::move(s.smse_trace);
        rec.sum_rate = std::move(s.rate_trace);
        rec.final_smse = s.final_smse;
        rec.final_sum_rate = s.final_sum_rate;
        rec.iterations = static_cast<int>(rec.smse.size());
        rec.wall_time_s = elapsed;
        rec.converged = s.converged;
        out.push_back(std::move(rec));
    }
    return out;
}

// Runs realizations 0..trials-1 on `jobs` workers. Records come back in
// (realization, algorithm) order whatever the scheduling; the first worker
// exception is rethrown after all workers have joined.
inline std::vector<run_record> run_trials(const scenario_config &c, std::span<const algorithm> algos,
                                          const experiment_options &o, int jobs) {
    const auto trials = static_cast<std::size_t>(c.trials);
    std::vector<std::vector<run_record>> slots(trials);
    std::vector<std::exception_ptr> errors(trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < trials; i = next++) {
            try {
                slots[i] = run_realization(c, i, algos, o);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int n = std::max(1, std::min<int>(jobs, static_cast<int>(trials)));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < n; ++t)
            pool.emplace_back(worker);
    }
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
    std::vector<run_record> out;
    for (auto &s : slots)
        for (auto &r : s)
            out.push_back(std::move(r));
    return out;
}

struct summary_row {
    algorithm algo = algorithm::saris;
    std::size_t trials = 0;
    double mean_rate = 0.0;
    double std_rate = 0.0; // sample standard deviation (n - 1)
    double mean_iters = 0.0;
    double mean_time_s = 0.0;
};

inline summary_row summarize(std::span<const run_record> records, algorithm a) {
    summary_row row;
    row.algo = a;
    double sum = 0.0, iters = 0.0, time = 0.0;
    for (const auto &r : records)
        if (r.algo == a) {
            ++row.trials;
            sum += r.final_sum_rate;
            iters += r.iterations;
            time += r.wall_time_s;
        }
    if (row.trials == 0)
        return row;
    const double n = static_cast<double>(row.trials);
    row.mean_rate = sum / n;
    row.mean_iters = iters / n;
    row.mean_time_s = time / n;
    double ss = 0.0;
    for (const auto &r : records)
        if (r.algo == a)
            ss += (r.final_sum_rate - row.mean_rate) * (r.final_sum_rate - row.mean_rate);
    row.std_rate = row.trials > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    return row;
}

} // namespace saris

#endif // SARIS_EXPERIMENT_HPP
