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

#include "qfilt/filtration.hpp"

#include <cmath>
#include <string>

#include "qfilt/errors.hpp"

namespace qfilt {

namespace {

constexpr double kMinPostSelection = 1e-15;

PureState zeros(int n) {
    ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << n);
    v(0) = 1.0;
    return PureState(std::move(v));
}

void check_encoding(const PipelineConfig& cfg, const ComplexMatrix& encoding) {
    const Eigen::Index d = Eigen::Index{1} << (cfg.n_ancillas + 1);
    if (encoding.rows() != d || encoding.cols() != d) {
        throw InvalidArgument("encoding unitary must act on " + std::to_string(cfg.n_ancillas + 1) + " qubits");
    }
}

}  // namespace

PipelineConfig PipelineConfig::for_task(Task task, int n_ancillas, NoiseSpec noise,
                                        std::optional<RobustnessSpec> robustness) {
    PipelineConfig cfg;
    cfg.task = task;
    cfg.n_ancillas = n_ancillas;
    cfg.noise = noise;
    cfg.robustness = robustness;
    cfg.post_select = task != Task::QFI;
    cfg.validate();
    return cfg;
}

void PipelineConfig::validate() const {
    if (n_ancillas < 0 || n_ancillas > 3) {
        throw InvalidArgument("number of ancillas must be in 0..3");
    }
    noise.validate();
    if (robustness) {
        robustness->validate();
    }
    if (task == Task::QFI && post_select) {
        throw InvalidArgument("the QFI pipeline does not post-select");
    }
    if (task != Task::QFI && !post_select) {
        throw InvalidArgument("fidelity and CHSH pipelines post-select on the ancillas");
    }
}

QubitList PipelineConfig::ancillas() const {
    QubitList out;
    for (int a = 0; a < n_ancillas; ++a) {
        out.push_back(signal() + 1 + a);
    }
    return out;
}

QubitList PipelineConfig::encoded_qubits() const {
    QubitList out{signal()};
    for (int a : ancillas()) {
        out.push_back(a);
    }
    return out;
}

PureState pipeline_input(const PipelineConfig& cfg, double theta) {
    const PureState head = cfg.has_reference() ? phi_plus() : rotated_y_state(theta);
    return cfg.n_ancillas == 0 ? head : head.tensor(zeros(cfg.n_ancillas));
}

ComplexMatrix propagate(const PipelineConfig& cfg, const ComplexMatrix& encoding, const ComplexMatrix& input) {
    check_encoding(cfg, encoding);
    const Eigen::Index d = Eigen::Index{1} << cfg.num_qubits();
    if (input.rows() != d || input.cols() != d) {
        throw InvalidArgument("input operator does not match the pipeline register");
    }
    const QubitList ancillas = cfg.ancillas();
    const bool crosstalk = cfg.robustness && cfg.robustness->s && cfg.n_ancillas > 0;

    ComplexMatrix op = input;
    if (cfg.robustness && cfg.robustness->q_a && cfg.n_ancillas > 0) {
        op = apply_iid(op, kraus_set({NoiseKind::Depolarizing, *cfg.robustness->q_a}), ancillas);
    }
    if (crosstalk) {
        op = swap_mixture(op, *cfg.robustness->s, cfg.signal(), ancillas);
    }
    op = conjugate_trailing(op, encoding);
    op = apply_iid(op, kraus_set(cfg.noise), cfg.encoded_qubits());
    if (cfg.decodes()) {
        op = conjugate_trailing(op, encoding.adjoint());
    }
    if (crosstalk) {
        op = swap_mixture(op, *cfg.robustness->s, cfg.signal(), ancillas);
    }
    return hermitize(op);
}

FiltrationOutcome run_filtration(const PipelineConfig& cfg, const ComplexMatrix& encoding, const PureState& input) {
    cfg.validate();
    if (input.num_qubits() != cfg.num_qubits()) {
        throw InvalidArgument("input state has " + std::to_string(input.num_qubits()) + " qubits, pipeline expects " +
                              std::to_string(cfg.num_qubits()));
    }
    ComplexMatrix out = propagate(cfg, encoding, input.projector());
    if (!cfg.post_select) {
        const double t = out.trace().real();
        return {DensityMatrix::from_channel_output(std::move(out)), 1.0, t};
    }
    auto proj = cfg.n_ancillas == 0
                    ? Projection{DensityMatrix::from_channel_output(std::move(out), false), 0.0}
                    : project_ancillas_zero(DensityMatrix::from_channel_output(std::move(out), false), cfg.ancillas());
    const double raw = proj.block.trace();
    if (!(raw >= kMinPostSelection)) {
        throw PostSelectionImpossible(raw);
    }
    return {proj.block.normalize(), raw, raw};
}

FiltrationOutcome run_filtration(const PipelineConfig& cfg, const ParamCircuit& circuit, const PureState& input) {
    return run_filtration(cfg, circuit.unitary(), input);
}

DerivativeOutcome derivative_pipeline(const PipelineConfig& cfg, const ComplexMatrix& encoding, double theta) {
    cfg.validate();
    if (cfg.task != Task::QFI) {
        throw InvalidArgument("derivative_pipeline requires the QFI task");
    }
    const ComplexVector psi = pipeline_input(cfg, theta).vec();
    ComplexVector dhead(2);
    dhead << -0.5 * std::sin(theta / 2), 0.5 * std::cos(theta / 2);
    ComplexVector dpsi = dhead;
    if (cfg.n_ancillas > 0) {
        dpsi = tensor(dhead, zeros(cfg.n_ancillas).vec());
    }
    const ComplexMatrix dinput = dpsi * psi.adjoint() + psi * dpsi.adjoint();
    ComplexMatrix rho = propagate(cfg, encoding, psi * psi.adjoint());
    ComplexMatrix drho = propagate(cfg, encoding, dinput);
    return {DensityMatrix::from_channel_output(std::move(rho)), std::move(drho)};
}

DerivativeOutcome derivative_pipeline(const PipelineConfig& cfg, const ParamCircuit& circuit, double theta) {
    return derivative_pipeline(cfg, circuit.unitary(), theta);
}

}  // namespace qfilt
