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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qfilt/channels.hpp"
#include "qfilt/errors.hpp"
#include "qfilt/experiment.hpp"
#include "qfilt/metrics.hpp"
#include "qfilt/optimizer.hpp"

namespace qfilt {

/// Raised for malformed or out-of-range configuration files.
class ConfigError : public InvalidArgument {
   public:
    using InvalidArgument::InvalidArgument;
};

MetricKind parse_metric_kind(const std::string& s);

/// Evenly spaced values; a single point yields `lo`.
std::vector<double> linspace(double lo, double hi, int points);

/// Accepts a number, an array of numbers or {"min", "max", "points"}.
std::vector<double> parse_grid(const nlohmann::json& j, const std::string& what);

OptimizerConfig parse_optimizer_config(const nlohmann::json& j);
nlohmann::json to_json(const OptimizerConfig& cfg);

enum class RobustnessParam { None, AncillaNoise, Crosstalk };

struct SweepConfig {
    MetricKind task = MetricKind::Fidelity;
    NoiseKind kind = NoiseKind::Dephasing;
    /// Channel noise values. With a robustness grid this is normally a single point.
    std::vector<double> q_values;
    std::vector<int> n_values{0, 1, 2};
    RobustnessParam vary = RobustnessParam::None;
    std::vector<double> robustness_values;
    bool run_optimizer = true;
    OptimizerConfig optimizer;
    std::string output;
    int threads = 1;

    /// Missing grids default to 21 points over the kind's domain, or to
    /// q_a ∈ [1/3, 1], s ∈ [0.5, 1] with the channel at 0.7 for robustness sweeps.
    static SweepConfig from_json(const nlohmann::json& j);
    static SweepConfig load(const std::string& path);
    void validate() const;
};

enum class RowSource { Optimized, Ansatz, ClosedForm };

std::string to_string(RowSource source);

struct SweepRow {
    MetricKind task;
    NoiseKind kind;
    int n;
    double q;
    double q_a;
    double s;
    double value;
    double probability;
    RowSource source;
    int restarts;
    int iterations;
    std::uint64_t seed;
};

inline constexpr const char* kSweepCsvHeader = "task,kind,n,q,q_a,s,value,probability,source,restarts,iterations,seed";

/// Optimized, ansatz and closed-form rows sorted by (n, q, q_a, s, source).
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);

struct PointConfig {
    ExperimentSpec spec;
    OptimizerConfig optimizer;
    std::string output;

    static PointConfig from_json(const nlohmann::json& j);
    static PointConfig load(const std::string& path);
    nlohmann::json echo() const;
};

/// Optimization result, configuration echo and, where they exist, the
/// ansatz and closed-form values at the same point.
nlohmann::json run_point(const PointConfig& cfg);

/// Resolves a thread count: explicit value, else QFILT_THREADS, else 1. Zero means all cores.
int resolve_threads(std::optional<int> requested);

}  // namespace qfilt
