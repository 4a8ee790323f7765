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

#include <span>
#include <vector>

#include "qfilt/qstate.hpp"

namespace qfilt {

enum class Axis { X, Y, Z };

/// exp(-i·angle·σ_axis/2).
ComplexMatrix rotation(Axis axis, double angle);

/// R_Z(alpha)·R_Y(beta)·R_Z(gamma).
ComplexMatrix one_qubit_unitary(double alpha, double beta, double gamma);

/// CNOT on a 2^num_qubits register.
ComplexMatrix cnot(int num_qubits, int control, int target);

/// Three-CNOT universal two-qubit circuit, 15 angles.
///
/// Time order: (U1 ⊗ U2), CNOT(1→0), (R_Z ⊗ R_Y), CNOT(0→1), (I ⊗ R_Y),
/// CNOT(1→0), (U3 ⊗ U4). Parameter layout: U1, U2 Euler triples [0, 6),
/// middle R_Z, R_Y, R_Y angles [6, 9), then U3, U4 Euler triples [9, 15).
ComplexMatrix minimal_two_qubit(std::span<const double> params);

/// Control-state-indexed rotation: angles[c] is applied on the target when the
/// controls (first control = most significant bit of c) read c.
struct MultiplexedRotation {
    Axis axis;
    std::vector<double> angles;
};

ComplexMatrix multiplexed_rotation_matrix(const MultiplexedRotation& mr, int total_qubits, int target,
                                          const QubitList& controls);

/// Recursive Shannon decomposition on N ∈ {3, 4} qubits:
/// V1, mux-R_Z, V2, mux-R_Y, V3, mux-R_Z, V4 in time order. Each V acts on
/// qubits [0, N-1) and is itself a Shannon (N-1 ≥ 3) or minimal (N-1 = 2)
/// circuit; the multiplexed rotations target qubit N-1 with qubits
/// [0, N-1) as controls. Parameters are consumed depth-first in that order.
ComplexMatrix qsd_unitary(std::span<const double> params, int num_qubits);

/// 15, 72, 312 for N = 2, 3, 4; 0 for N = 1 (identity encoding).
int circuit_param_count(int num_qubits);

enum class Recipe { Identity, Minimal2Q, QSD };

/// Parameter vector plus the synthesis recipe implied by the register size.
class ParamCircuit {
   public:
    /// N = 1 gives the fixed identity (no parameters); N = 2 the minimal circuit; N = 3, 4 QSD.
    ParamCircuit(int num_qubits, std::vector<double> params);

    int num_qubits() const noexcept { return num_qubits_; }
    Recipe recipe() const noexcept { return recipe_; }
    const std::vector<double>& params() const noexcept { return params_; }

    ComplexMatrix unitary() const;

   private:
    int num_qubits_;
    Recipe recipe_;
    std::vector<double> params_;
};

/// Unitary for any register size 1..4 from a flat parameter span.
ComplexMatrix circuit_unitary(std::span<const double> params, int num_qubits);

}  // namespace qfilt
