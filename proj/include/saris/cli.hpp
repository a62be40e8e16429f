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

#ifndef SARIS_CLI_HPP
#define SARIS_CLI_HPP

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "saris/experiment.hpp"
#include "saris/scenario.hpp"

namespace saris::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum exit_code : int { ok = 0, config_failure = 2, io_failure = 3, numerical_failure = 4 };

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct common_flags {
    std::string config_path;
    std::string algo = "saris";
    int trials = 0;     // 0: take from the config
    std::int64_t seed = -1; // <0: take from the config
    std::string out = "results";
    double epsilon = experiment_options{}.epsilon;
    int max_iter = experiment_options{}.max_iter;
    int random_trials = experiment_options{}.random_trials;
    int jobs = 1;
    std::string sweep_var;
    std::string sweep_values;
};

inline std::string fmt(double v) { return detail::format_double(v); }

inline std::vector<algorithm> parse_algorithms(const std::string &name) {
    if (name == "all")
        return {std::begin(kAllAlgorithms), std::end(kAllAlgorithms)};
    for (algorithm a : kAllAlgorithms)
        if (to_string(a) == name)
            return {a};
    throw config_error(0, "unknown algorithm '" + name + "'");
}

inline scenario_config load_config(const common_flags &f) {
    scenario_config c;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path, std::ios::binary);
        if (!in)
            throw io_error("cannot read config file '" + f.config_path + "'");
        std::ostringstream text;
        text << in.rdbuf();
        c = parse_config(text.str());
    }
    if (f.trials > 0)
        c.trials = f.trials;
    if (f.seed >= 0)
        c.seed = static_cast<std::uint64_t>(f.seed);
    return c;
}

inline void write_file(const std::filesystem::path &p, const std::string &content) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out || !(out << content) || !out.flush())
        throw io_error("cannot write '" + p.string() + "'");
}

inline void make_dirs(const std::filesystem::path &p) {
    std::error_code ec;
    std::filesystem::create_directories(p, ec);
    if (ec)
        throw io_error("cannot create directory '" + p.string() + "': " + ec.message());
}

inline std::string trace_csv(const run_record &r) {
    std::string s = "algo,seed,iter,smse,sum_rate\n";
    for (std::size_t i = 0; i < r.smse.size(); ++i)
        s += std::string(to_string(r.algo)) + "," + std::to_string(r.seed) + "," + std::to_string(i + 1) + "," +
             fmt(r.smse[i]) + "," + fmt(r.sum_rate[i]) + "\n";
    return s;
}

inline std::string runs_csv(std::span<const run_record> records) {
    std::string s = "algo,seed,realization,iterations,final_smse,final_sum_rate,wall_time_s,converged,config_hash\n";
    for (const auto &r : records)
        s += std::string(to_string(r.algo)) + "," + std::to_string(r.seed) + "," + std::to_string(r.realization) +
             "," + std::to_string(r.iterations) + "," + fmt(r.final_smse) + "," + fmt(r.final_sum_rate) + "," +
             fmt(r.wall_time_s) + "," + (r.converged ? "1" : "0") + "," + r.config_hash + "\n";
    return s;
}

inline std::string summary_csv(std::span<const run_record> records, std::span<const algorithm> algos) {
    std::string s = "algo,trials,mean_rate,std_rate,mean_iters,mean_time_s\n";
    for (algorithm a : algos) {
        const summary_row row = summarize(records, a);
        s += std::string(to_string(a)) + "," + std::to_string(row.trials) + "," + fmt(row.mean_rate) + "," +
             fmt(row.std_rate) + "," + fmt(row.mean_iters) + "," + fmt(row.mean_time_s) + "\n";
    }
    return s;
}

inline nlohmann::json metadata(const std::string &command, const scenario_config &c, std::span<const algorithm> algos,
                               const experiment_options &o, const common_flags &f) {
    nlohmann::json j;
    j["tool"] = "saris-sim";
    j["version"] = std::string(kVersion);
    j["command"] = command;
    j["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                         std::to_string(EIGEN_MINOR_VERSION);
    j["rng"] = std::string(philox4x32::name);
    j["seed"] = c.seed;
    j["trials"] = c.trials;
    std::vector<std::uint64_t> realizations;
    for (int i = 0; i < c.trials; ++i)
        realizations.push_back(static_cast<std::uint64_t>(i));
    j["realizations"] = realizations;
    std::vector<std::string> names;
    for (algorithm a : algos)
        names.emplace_back(to_string(a));
    j["algorithms"] = names;
    j["epsilon"] = o.epsilon;
    j["max_iter"] = o.max_iter;
    j["random_trials"] = o.random_trials;
    j["config_path"] = f.config_path;
    j["config_hash"] = config_hash(c);
    j["config"] = serialize_config(c);
    return j;
}

// Runs all trials for one configuration and writes its per-run artifacts.
inline std::vector<run_record> execute(const scenario_config &c, std::span<const algorithm> algos,
                                       const experiment_options &o, int jobs, const std::filesystem::path &dir) {
    std::vector<run_record> records = run_trials(c, algos, o, jobs);
    make_dirs(dir / "traces");
    for (const auto &r : records)
        write_file(dir / "traces" / (std::string(to_string(r.algo)) + "_r" + std::to_string(r.realization) + ".csv"),
                   trace_csv(r));
    write_file(dir / "runs.csv", runs_csv(records));
    write_file(dir / "summary.csv", summary_csv(records, algos));
    return records;
}

inline void apply_sweep_value(scenario_config &c, const std::string &var, const std::string &value) {
    auto as_int = [&](int minimum) {
        const auto v = detail::parse_double(value);
        if (!v || *v != std::floor(*v) || *v < minimum)
            throw config_error(0, "sweep value '" + value + "' is not a valid integer for " + var);
        return static_cast<int>(*v);
    };
    if (var == "N") {
        c.N = as_int(1);
        if (c.side() * c.side() != c.N)
            throw config_error(0, "sweep value N = " + value + " is not a perfect square");
    } else if (var == "N_c") {
        c.N_c = as_int(0);
    } else if (var == "L") {
        c.L = as_int(1);
    } else if (var == "d") {
        std::string v = value;
        const bool rel = detail::strip_lambda(v);
        const auto x = detail::parse_double(v);
        if (!x || !(*x > 0.0))
            throw config_error(0, "sweep value d = '" + value + "' is not a positive length");
        c.d = rel ? *x * c.wavelength : *x;
    } else if (var == "R0") {
        const auto x = detail::parse_double(value);
        if (!x || !(*x >= 0.0))
            throw config_error(0, "sweep value R0 = '" + value + "' must be non-negative");
        c.R0 = *x;
    } else {
        throw config_error(0, "unknown sweep variable '" + var + "' (expected N, d, N_c, L or R0)");
    }
    c.validate();
}

inline std::vector<std::string> split_values(const std::string &list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (auto t = detail::trim(item); !t.empty())
            out.push_back(t);
    if (out.empty())
        throw config_error(0, "--values needs at least one value");
    return out;
}

inline int run_command(const common_flags &f, std::ostream &log) {
    const auto algos = parse_algorithms(f.algo);
    const scenario_config c = load_config(f);
    experiment_options o;
    o.epsilon = f.epsilon;
    o.max_iter = f.max_iter;
    o.random_trials = f.random_trials;
    const std::filesystem::path out(f.out);
    make_dirs(out);
    const auto records = execute(c, algos, o, f.jobs, out);
    write_file(out / "metadata.json", metadata("run", c, algos, o, f).dump(2) + "\n");
    for (algorithm a : algos) {
        const auto row = summarize(records, a);
        log << to_string(a) << ": mean sum-rate " << fmt(row.mean_rate) << " bit/s/Hz over " << row.trials
            << " trials\n";
    }
    return exit_code::ok;
}

inline int sweep_command(const common_flags &f, std::ostream &log) {
    const auto algos = parse_algorithms(f.algo);
    const scenario_config base = load_config(f);
    const auto values = split_values(f.sweep_values);
    std::vector<scenario_config> points;
    for (const auto &v : values) {
        scenario_config c = base;
        apply_sweep_value(c, f.sweep_var, v);
        points.push_back(c);
    }
    experiment_options o;
    o.epsilon = f.epsilon;
    o.max_iter = f.max_iter;
    o.random_trials = f.random_trials;
    const std::filesystem::path out(f.out);
    make_dirs(out);
    std::string table = "var,value,algo,mean_rate,std_rate,mean_iters,mean_time_s\n";
    nlohmann::json meta = metadata("sweep", base, algos, o, f);
    meta["sweep"] = {{"var", f.sweep_var}, {"values", values}};
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto records = execute(points[i], algos, o, f.jobs, out / ("point_" + std::to_string(i)));
        for (algorithm a : algos) {
            const auto row = summarize(records, a);
            table += f.sweep_var + "," + values[i] + "," + std::string(to_string(a)) + "," + fmt(row.mean_rate) + "," +
                     fmt(row.std_rate) + "," + fmt(row.mean_iters) + "," + fmt(row.mean_time_s) + "\n";
            log << f.sweep_var << "=" << values[i] << " " << to_string(a) << ": mean sum-rate " << fmt(row.mean_rate)
                << "\n";
        }
    }
    write_file(out / "sweep.csv", table);
    write_file(out / "metadata.json", meta.dump(2) + "\n");
    return exit_code::ok;
}

// Entry point shared by the executable and the integration tests.
inline int run_cli(int argc, const char *const *argv, std::ostream &log = std::cout, std::ostream &err = std::cerr) {
    CLI::App app{"Scattering-aware RIS channel simulator and optimizer"};
    app.require_subcommand(1);
    common_flags f;
    auto add_common = [&f](CLI::App *sub) {
        sub->add_option("--config", f.config_path, "Scenario config file (defaults apply when omitted)");
        sub->add_option("--algo", f.algo, "saris | mismatched | random | all")
            ->check(CLI::IsMember({"saris", "mismatched", "random", "all"}));
        sub->add_option("--trials", f.trials, "Monte-Carlo realizations (overrides config)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", f.seed, "Master seed (overrides config)")->check(CLI::NonNegativeNumber);
        sub->add_option("--out", f.out, "Output directory");
        sub->add_option("--epsilon", f.epsilon, "Stop when an RIS update changes the SMSE by at most this")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-iter", f.max_iter, "Iteration cap per optimization")->check(CLI::PositiveNumber);
        sub->add_option("--random-trials", f.random_trials, "Draws per random-baseline run")
            ->check(CLI::PositiveNumber);
        sub->add_option("--jobs", f.jobs, "Worker threads")->check(CLI::PositiveNumber);
    };
    auto *run = app.add_subcommand("run", "Run Monte-Carlo trials for one configuration");
    add_common(run);
    auto *sweep = app.add_subcommand("sweep", "Sweep one parameter and aggregate per value");
    add_common(sweep);
    sweep->add_option("--sweep", f.sweep_var, "Variable: N, d, N_c, L or R0")->required();
    sweep->add_option("--values", f.sweep_values, "Comma-separated values")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e, log, err);
        return rc == 0 ? exit_code::ok : exit_code::config_failure;
    }
    try {
        return run->parsed() ? run_command(f, log) : sweep_command(f, log);
    } catch (const io_error &e) {
        err << "error: " << e.what() << "\n";
        return exit_code::io_failure;
    } catch (const config_error &e) {
        err << "error: " << e.what() << "\n";
        return exit_code::config_failure;
    } catch (const geometry_error &e) {
        err << "error: " << e.what() << "\n";
        return exit_code::config_failure;
    } catch (const std::filesystem::filesystem_error &e) {
        err << "error: " << e.what() << "\n";
        return exit_code::io_failure;
    } catch (const std::exception &e) {
        err << "numerical failure: " << e.what() << "\n";
        return exit_code::numerical_failure;
    }
}

} // namespace saris::cli

#endif // SARIS_CLI_HPP
