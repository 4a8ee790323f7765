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

#include <optional>
#include <span>

#include "qfilt/channels.hpp"
#include "qfilt/filtration.hpp"
#include "qfilt/metrics.hpp"
#include "qfilt/optimizer.hpp"

namespace qfilt {

/// One optimization target: a metric of the filtration pipeline at a fixed noise point.
struct ExperimentSpec {
    MetricKind metric = MetricKind::Fidelity;
    int n_ancillas = 0;
    NoiseSpec noise{NoiseKind::Dephasing, 1.0};
    std::optional<RobustnessSpec> robustness;
    /// Probe angle of the QFI input state.
    double theta = 0.0;

    void validate() const;
    PipelineConfig pipeline() const;
    /// Circuit parameters on n + 1 qubits, plus eight measurement angles for CHSHOpt.
    int parameter_count() const;
};

/// Metric for a fixed encoding unitary. CHSHOpt takes the maximum over all settings.
ObjectiveValue evaluate_encoding(const ExperimentSpec& spec, const ComplexMatrix& encoding);

/// Metric for circuit parameters (with trailing angles for CHSHOpt).
/// Failed post-selection scores −∞.
ObjectiveValue evaluate_params(const ExperimentSpec& spec, std::span<const double> params);

Objective make_objective(const ExperimentSpec& spec);

OptimizationResult optimize_experiment(const ExperimentSpec& spec, const OptimizerConfig& cfg);

}  // namespace qfilt
