// Copyright 2026 The qfilt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: sweeps, single-point optimization, closed-form
// verification and ansatz printing.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qfilt/analytic.hpp"
#include "qfilt/errors.hpp"
#include "qfilt/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

constexpr double kVerifyTol = 1e-10;

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw qfilt::ConfigError("cannot write " + path);
    }
    out << content;
}

int cmd_sweep(const std::string& config, const std::string& out, std::optional<int> threads,
              std::optional<std::uint64_t> seed) {
    auto cfg = qfilt::SweepConfig::load(config);
    if (threads || std::getenv("QFILT_THREADS")) {
        cfg.threads = qfilt::resolve_threads(threads);
    }
    if (seed) {
        cfg.optimizer.seed = *seed;
    }
    const auto rows = qfilt::run_sweep(cfg);
    std::ostringstream csv;
    qfilt::write_csv(csv, rows);
    write_output(out.empty() ? cfg.output : out, csv.str());
    return kExitOk;
}

int cmd_optimize(const std::string& config, const std::string& out, std::optional<int> threads,
                 std::optional<std::uint64_t> seed) {
    auto cfg = qfilt::PointConfig::load(config);
    cfg.optimizer.threads = qfilt::resolve_threads(threads);
    if (seed) {
        cfg.optimizer.seed = *seed;
    }
    write_output(out.empty() ? cfg.output : out, qfilt::run_point(cfg).dump(2) + "\n");
    return kExitOk;
}

int cmd_verify(int points) {
    bool ok = true;
    std::printf("%-13s %2s  %-13s %s\n", "metric", "n", "kind", "max_residual");
    for (const auto& row : qfilt::verification_table(points)) {
        std::printf("%-13s %2d  %-13s ", row.metric.c_str(), row.n_ancillas, qfilt::to_string(row.kind).c_str());
        if (!row.supported) {
            std::printf("unsupported\n");
            continue;
        }
        const bool pass = row.max_residual < kVerifyTol;
        ok = ok && pass;
        std::printf("%.3e%s\n", row.max_residual, pass ? "" : "  FAIL");
    }
    return ok ? kExitOk : kExitFailure;
}

void print_matrix(const qfilt::ComplexMatrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const auto z = m(r, c);
            const double re = std::abs(z.real()) < 1e-15 ? 0.0 : z.real();
            const double im = std::abs(z.imag()) < 1e-15 ? 0.0 : z.imag();
            std::printf(" %+.6f%+.6fi", re, im);
        }
        std::printf("\n");
    }
}

int cmd_ansatz(std::optional<int> n, std::optional<std::string> kind) {
    for (int nn : {1, 2}) {
        if (n && *n != nn) {
            continue;
        }
        for (auto k : {qfilt::NoiseKind::Dephasing, qfilt::NoiseKind::Depolarizing}) {
            if (kind && qfilt::parse_noise_kind(*kind) != k) {
                continue;
            }
            std::printf("n=%d %s\n", nn, qfilt::to_string(k).c_str());
            print_matrix(qfilt::ansatz_unitary(nn, k));
            std::printf("\n");
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Error filtration with ancilla-assisted encodings: simulation, optimization and closed forms"};
    app.require_subcommand(1);

    std::string config;
    std::string out;
    std::optional<int> threads;
    std::optional<std::uint64_t> seed;

    auto add_run_flags = [&](CLI::App* sub) {
        sub->add_option("--config", config, "JSON configuration file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out, "Output path (default: config 'output', else stdout)");
        sub->add_option("--threads", threads, "Worker threads, 0 = all cores (fallback: QFILT_THREADS)");
        sub->add_option("--seed", seed, "Override the optimizer seed");
    };

    auto* sweep = app.add_subcommand("sweep", "Run a noise sweep and write CSV");
    add_run_flags(sweep);
    auto* optimize = app.add_subcommand("optimize", "Optimize a single noise point and write JSON");
    add_run_flags(optimize);

    int points = 50;
    auto* verify = app.add_subcommand("verify", "Compare closed forms with simulated ansatz circuits");
    verify->add_option("--points", points, "Grid points per noise kind")->check(CLI::Range(2, 100000));

    std::optional<int> ansatz_n;
    std::optional<std::string> ansatz_kind;
    auto* ansatz = app.add_subcommand("ansatz", "Print the ansatz encoding unitaries");
    ansatz->add_option("--n", ansatz_n, "Number of ancillas (1 or 2)")->check(CLI::Range(1, 2));
    ansatz->add_option("--kind", ansatz_kind, "dephasing or depolarizing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*sweep) return cmd_sweep(config, out, threads, seed);
        if (*optimize) return cmd_optimize(config, out, threads, seed);
        if (*verify) return cmd_verify(points);
        if (*ansatz) return cmd_ansatz(ansatz_n, ansatz_kind);
    } catch (const qfilt::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}
