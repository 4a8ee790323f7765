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

#include "qfilt/qstate.hpp"

namespace qfilt {

enum class NoiseKind { Dephasing, Depolarizing };

std::string to_string(NoiseKind kind);
/// Accepts "dephasing" / "depolarizing"; throws InvalidArgument otherwise.
NoiseKind parse_noise_kind(const std::string& s);

/// Local noise channel with its effective parameter.
///
/// Dephasing uses q_φ ∈ [0, 1] with p_φ = (1 + q_φ)/2; depolarizing uses
/// q_r ∈ [1/3, 1] with p_r = (1 + 3 q_r)/4.
struct NoiseSpec {
    NoiseKind kind;
    double q;

    /// Throws InvalidArgument when q is outside the kind's range.
    void validate() const;
    /// Probability of the identity Kraus operator.
    double p() const;
    static double q_min(NoiseKind kind);
};

/// Imperfect-encoding noise: ancilla preparation depolarizing (q_a) and
/// signal/ancilla cross-talk as stochastic SWAPs (s = no-swap probability).
struct RobustnessSpec {
    std::optional<double> q_a;
    std::optional<double> s;

    void validate() const;
};

/// Single-qubit Kraus operators with weights folded in; Σ K†K = I.
struct KrausSet {
    std::vector<ComplexMatrix> ops;
};

KrausSet kraus_set(const NoiseSpec& spec);

/// Pauli-channel probabilities (σ0, σx, σy, σz) for the same spec.
std::array<double, 4> pauli_weights(const NoiseSpec& spec);

/// ρ → Σ_k (I⊗K_k⊗I) ρ (I⊗K_k⊗I)† on one qubit. Works on any operator
/// (the map is linear), not only on states.
ComplexMatrix apply_local(const ComplexMatrix& op, const KrausSet& kraus, int qubit);
DensityMatrix apply_local(const DensityMatrix& rho, const KrausSet& kraus, int qubit);

/// The same channel on each listed qubit.
ComplexMatrix apply_iid(const ComplexMatrix& op, const KrausSet& kraus, const QubitList& qubits);
DensityMatrix apply_iid(const DensityMatrix& rho, const KrausSet& kraus, const QubitList& qubits);

/// s·ρ + Σ_a (1-s)/n · SWAP(signal,a) ρ SWAP(signal,a).
ComplexMatrix swap_mixture(const ComplexMatrix& op, double s, int signal, const QubitList& ancillas);
DensityMatrix swap_mixture(const DensityMatrix& rho, double s, int signal, const QubitList& ancillas);

/// Conjugation U ρ U† by a unitary acting on the trailing qubits of the
/// register (the leading qubits are untouched). `u` may span the whole register.
ComplexMatrix conjugate_trailing(const ComplexMatrix& op, const ComplexMatrix& u);

}  // namespace qfilt
