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

#include "qfilt/channels.hpp"
#include "qfilt/gates.hpp"
#include "qfilt/qstate.hpp"

namespace qfilt {

enum class Task { FidelityWithReference, CHSH, QFI };

/// End-to-end filtration pipeline description.
///
/// Register layout: for the reference tasks, qubit 0 is the reference R,
/// qubit 1 the signal S and qubits 2.. the ancillas. For QFI there is no
/// reference, so the signal is qubit 0 and the ancillas follow.
struct PipelineConfig {
    int n_ancillas = 0;
    NoiseSpec noise{NoiseKind::Dephasing, 1.0};
    std::optional<RobustnessSpec> robustness;
    Task task = Task::FidelityWithReference;
    bool post_select = true;
    /// QFI only: apply U† after the channel. Off by default since the QFI is
    /// unchanged by θ-independent unitaries.
    bool decode_qfi = false;

    static PipelineConfig for_task(Task task, int n_ancillas, NoiseSpec noise,
                                   std::optional<RobustnessSpec> robustness = std::nullopt);

    void validate() const;

    bool has_reference() const noexcept { return task != Task::QFI; }
    int signal() const noexcept { return has_reference() ? 1 : 0; }
    int num_qubits() const noexcept { return n_ancillas + (has_reference() ? 2 : 1); }
    QubitList ancillas() const;
    /// Signal followed by the ancillas: the qubits U and the channel act on.
    QubitList encoded_qubits() const;
    bool decodes() const noexcept { return task != Task::QFI || decode_qfi; }
};

struct FiltrationOutcome {
    DensityMatrix state;  // normalized; R+S for post-selected tasks, S+ancillas for QFI
    double probability;   // P_n
    double raw_trace;
};

/// |Φ+⟩_RS ⊗ |0⟩^n for the reference tasks, |ψ_θ⟩ ⊗ |0⟩^n for QFI.
PureState pipeline_input(const PipelineConfig& cfg, double theta = 0.0);

/// Pushes an operator on the full register through every linear stage:
/// ancilla preparation noise, cross-talk, encoding, channel, decoding,
/// cross-talk. No projection or normalization.
ComplexMatrix propagate(const PipelineConfig& cfg, const ComplexMatrix& encoding, const ComplexMatrix& input);

/// Runs the pipeline and post-selects the ancillas on |0…0⟩ when configured.
/// Throws PostSelectionImpossible when the retained trace is below 1e-15.
FiltrationOutcome run_filtration(const PipelineConfig& cfg, const ComplexMatrix& encoding, const PureState& input);
FiltrationOutcome run_filtration(const PipelineConfig& cfg, const ParamCircuit& circuit, const PureState& input);

struct DerivativeOutcome {
    DensityMatrix rho;
    ComplexMatrix drho;
};

/// Output state for input |ψ_θ⟩ and its θ-derivative, obtained by pushing
/// ∂θ(|ψ_θ⟩⟨ψ_θ|) through the same linear pipeline. QFI task only.
DerivativeOutcome derivative_pipeline(const PipelineConfig& cfg, const ComplexMatrix& encoding, double theta);
DerivativeOutcome derivative_pipeline(const PipelineConfig& cfg, const ParamCircuit& circuit, double theta);

}  // namespace qfilt
