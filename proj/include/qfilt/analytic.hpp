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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qfilt/channels.hpp"
#include "qfilt/qstate.hpp"

namespace qfilt {

enum class AnsatzVariant { DephasingBell, TwoAncillaDephasing, TwoAncillaDepolarizing };

/// Encoding unitaries that reach the closed-form optima.
///
/// One ancilla: the computational-to-Bell-basis map |jk⟩ → |Φ_jk⟩ with
/// Φ00 = Φ+, Φ10 = Ψ+, Φ01 = Φ−, Φ11 = Ψ−, for both noise kinds.
/// Two ancillas: |0⟩|00⟩ and |1⟩|00⟩ go to equal-weight sums over the
/// even and odd parity sectors. Only those two columns influence any
/// post-selected output.
struct AnsatzUnitary {
    int n_ancillas;
    AnsatzVariant variant;
    /// Unit-modulus weights w1..w6 of the parity encoding; unset means the
    /// variant's default sign pattern.
    std::optional<std::array<Complex, 6>> phases;

    static AnsatzUnitary for_noise(int n_ancillas, NoiseKind kind);
    ComplexMatrix matrix() const;
};

/// Convenience for AnsatzUnitary::for_noise(n, kind).matrix(). n ∈ {1, 2}.
ComplexMatrix ansatz_unitary(int n_ancillas, NoiseKind kind);

/// The 8×8 two-ancilla matrix: a four-point Fourier transform on each parity sector.
ComplexMatrix two_ancilla_fourier_matrix();

/// |000⟩ → (|000⟩ + w1|011⟩ + w2|101⟩ + w3|110⟩)/2,
/// |100⟩ → (|001⟩ + w4|010⟩ + w5|100⟩ + w6|111⟩)/2,
/// completed to a unitary by Gram-Schmidt over the computational basis.
ComplexMatrix parity_encoding_unitary(const std::array<Complex, 6>& phases);

enum class ClosedFormMetric { P, F, BetaFix };

std::string to_string(ClosedFormMetric metric);

/// Closed-form post-selection probability, entanglement fidelity or
/// fixed-setting CHSH value at the ansatz optimum. Throws Unsupported
/// where no closed form exists (every n = 3 case, depolarizing BetaFix n = 2).
double closed_form(ClosedFormMetric metric, int n_ancillas, const NoiseSpec& noise);

/// QFI at the optimum for depolarizing noise: q_r² (n = 0), 2q_r²/(1+q_r²) (n = 1).
double closed_form_qfi(int n_ancillas, double q_r);

struct PauliAverage {
    double p1;
    double f1;
};

/// One-ancilla success probability and fidelity by enumerating all 16
/// Pauli error pairs on signal and ancilla, weighted by the channel's
/// Pauli probabilities, on pure-state trajectories.
PauliAverage pauli_average_oracle(const ComplexMatrix& encoding, const NoiseSpec& noise);

struct VerificationRow {
    std::string metric;
    int n_ancillas;
    NoiseKind kind;
    bool supported;
    double max_residual;  // NaN when unsupported
};

/// Closed form vs. ansatz simulation over `points`-point q grids for every
/// (metric, n, kind) combination, including the unsupported ones.
std::vector<VerificationRow> verification_table(int points = 50);

}  // namespace qfilt
