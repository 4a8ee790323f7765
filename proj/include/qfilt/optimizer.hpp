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

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace qfilt {

enum class OptimizerMethod { Auto, GradientAscent, SPSA };

std::string to_string(OptimizerMethod method);
OptimizerMethod parse_optimizer_method(const std::string& s);

struct OptimizerConfig {
    OptimizerMethod method = OptimizerMethod::Auto;
    int max_iters = 5000;
    /// Initial learning rate; multiplied by `decay` every iteration.
    double step = 0.05;
    double decay = 0.999;
    double fd_step = 1e-5;
    int restarts = 8;
    std::uint64_t seed = 0;
    /// Stop once the best value has improved by less than `tol` over `patience` iterations.
    double tol = 1e-8;
    int patience = 100;
    /// Worker threads for restarts; 0 means all hardware threads.
    int threads = 1;

    void validate() const;
    /// Auto resolves to gradient ascent up to 72 + 8 parameters and SPSA beyond.
    OptimizerMethod resolve(int dim) const;
};

struct ObjectiveValue {
    double value;
    double probability;
};

/// Must be safe to call concurrently.
using Objective = std::function<ObjectiveValue(std::span<const double>)>;

struct GradientEstimate {
    std::vector<double> grad;
    /// Coordinates whose probes were non-finite; their gradient entry is 0.
    std::vector<bool> flagged;
    bool any_flagged() const;
};

/// Central differences (f(p + h e_i) − f(p − h e_i)) / 2h.
GradientEstimate gradient_fd(const Objective& objective, std::span<const double> params, double fd_step);

struct RestartOutcome {
    std::vector<double> params;
    double value;
    double probability;
    int iterations;
    bool failed;
    /// Best value seen after each iteration (index 0 is the initial point).
    std::vector<double> best_trace;
};

struct OptimizationResult {
    std::vector<double> best_params;
    double best_value;
    double best_probability;
    int iterations_used;
    std::vector<double> restart_values;  // −∞ for failed restarts
    std::uint64_t seed;
    OptimizerMethod method;
    std::vector<double> best_trace;  // trace of the winning restart
};

/// Runs one restart from uniform random parameters in [0, 2π), seeded with seed + index.
RestartOutcome run_restart(const Objective& objective, int dim, const OptimizerConfig& cfg, int index);

/// Multi-start maximization. Deterministic for a given configuration
/// regardless of the thread count. Throws OptimizationFailed when every
/// restart failed.
OptimizationResult optimize(const Objective& objective, int dim, const OptimizerConfig& cfg);

}  // namespace qfilt
