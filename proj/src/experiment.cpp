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

#include "qfilt/experiment.hpp"

#include <limits>

#include "qfilt/errors.hpp"
#include "qfilt/gates.hpp"

namespace qfilt {

namespace {

Task task_for(MetricKind metric) {
    switch (metric) {
        case MetricKind::Fidelity:
            return Task::FidelityWithReference;
        case MetricKind::CHSHFixed:
        case MetricKind::CHSHOpt:
            return Task::CHSH;
        case MetricKind::QFI:
            return Task::QFI;
    }
    return Task::FidelityWithReference;
}

int circuit_params(const ExperimentSpec& spec) { return circuit_param_count(spec.n_ancillas + 1); }

ObjectiveValue evaluate(const ExperimentSpec& spec, const ComplexMatrix& u,
                        const std::optional<MeasurementSettings>& settings) {
    const PipelineConfig cfg = spec.pipeline();
    if (spec.metric == MetricKind::QFI) {
        const auto d = derivative_pipeline(cfg, u, spec.theta);
        return {qfi(d.rho, d.drho), 1.0};
    }
    const auto out = run_filtration(cfg, u, pipeline_input(cfg));
    switch (spec.metric) {
        case MetricKind::Fidelity:
            return {entanglement_fidelity(out).value, out.probability};
        case MetricKind::CHSHFixed:
            return {chsh_value(out.state, fixed_settings(spec.noise)), out.probability};
        case MetricKind::CHSHOpt:
            if (settings) {
                return {chsh_value(out.state, *settings), out.probability};
            }
            return {chsh_max_over_settings(out.state.mat()), out.probability};
        case MetricKind::QFI:
            break;
    }
    return {0.0, 0.0};
}

}  // namespace

void ExperimentSpec::validate() const { pipeline().validate(); }

PipelineConfig ExperimentSpec::pipeline() const {
    return PipelineConfig::for_task(task_for(metric), n_ancillas, noise, robustness);
}

int ExperimentSpec::parameter_count() const {
    return circuit_params(*this) + (metric == MetricKind::CHSHOpt ? 8 : 0);
}

ObjectiveValue evaluate_encoding(const ExperimentSpec& spec, const ComplexMatrix& encoding) {
    return evaluate(spec, encoding, std::nullopt);
}

ObjectiveValue evaluate_params(const ExperimentSpec& spec, std::span<const double> params) {
    if (static_cast<int>(params.size()) != spec.parameter_count()) {
        throw InvalidArgument("expected " + std::to_string(spec.parameter_count()) + " parameters, got " +
                              std::to_string(params.size()));
    }
    const auto nc = static_cast<size_t>(circuit_params(spec));
    const ComplexMatrix u = circuit_unitary(params.first(nc), spec.n_ancillas + 1);
    std::optional<MeasurementSettings> settings;
    if (spec.metric == MetricKind::CHSHOpt) {
        settings = MeasurementSettings::from_flat(params.subspan(nc));
    }
    try {
        return evaluate(spec, u, settings);
    } catch (const PostSelectionImpossible&) {
        return {-std::numeric_limits<double>::infinity(), 0.0};
    }
}

Objective make_objective(const ExperimentSpec& spec) {
    spec.validate();
    return [spec](std::span<const double> p) { return evaluate_params(spec, p); };
}

OptimizationResult optimize_experiment(const ExperimentSpec& spec, const OptimizerConfig& cfg) {
    return optimize(make_objective(spec), spec.parameter_count(), cfg);
}

}  // namespace qfilt
