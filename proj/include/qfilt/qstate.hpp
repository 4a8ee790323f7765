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

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qfilt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Qubit indices into a register. Qubit 0 is the most significant bit of a basis index.
using QubitList = std::vector<int>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;
inline constexpr double kEigTol = 1e-10;

/// Number of qubits k with 2^k == dim; throws InvalidArgument if dim is not a power of two.
int qubits_for_dim(Eigen::Index dim);

/// Normalized state vector on k qubits.
class PureState {
   public:
    /// Validates ‖vec‖ = 1 within 1e-12 and a power-of-two length.
    explicit PureState(ComplexVector vec);

    /// Computational basis ket |bits⟩ given as a string such as "010".
    static PureState basis(std::string_view bits);

    const ComplexVector& vec() const noexcept { return vec_; }
    int num_qubits() const noexcept { return num_qubits_; }
    Eigen::Index dim() const noexcept { return vec_.size(); }

    PureState tensor(const PureState& other) const;
    ComplexMatrix projector() const { return vec_ * vec_.adjoint(); }

   private:
    ComplexVector vec_;
    int num_qubits_;
};

PureState phi_plus();
PureState psi_plus();
/// cos(θ/2)|0⟩ + sin(θ/2)|1⟩, i.e. e^{-iθσ_y/2}|0⟩.
PureState rotated_y_state(double theta);

/// Hermitian, positive semidefinite operator on 2^k dimensions.
///
/// Normalized states carry unit trace. Unnormalized intermediates (post-selected
/// blocks) are flagged and only required to be Hermitian and PSD.
class DensityMatrix {
   public:
    /// Validates Hermiticity, trace and positivity.
    static DensityMatrix from_matrix(ComplexMatrix m, bool normalized = true);
    static DensityMatrix from_pure(const PureState& psi);
    static DensityMatrix maximally_mixed(int num_qubits);

    /// Wraps an operator produced by a trace-preserving pipeline. Only the
    /// shape and trace are checked; the positivity eigen-solve is skipped.
    static DensityMatrix from_channel_output(ComplexMatrix m, bool normalized = true);

    const ComplexMatrix& mat() const noexcept { return mat_; }
    int num_qubits() const noexcept { return num_qubits_; }
    Eigen::Index dim() const noexcept { return mat_.rows(); }
    bool normalized() const noexcept { return normalized_; }
    double trace() const { return mat_.trace().real(); }

    /// Divides by the trace. Throws InvalidArgument on a zero-trace operator.
    DensityMatrix normalize() const;

   private:
    DensityMatrix(ComplexMatrix m, int num_qubits, bool normalized)
        : mat_(std::move(m)), num_qubits_(num_qubits), normalized_(normalized) {}

    ComplexMatrix mat_;
    int num_qubits_;
    bool normalized_;
};

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

/// Kronecker product; the left factor indexes the most significant qubits.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on `keep` (in ascending qubit order). Trace is preserved,
/// so unnormalized inputs give unnormalized outputs.
DensityMatrix partial_trace(const DensityMatrix& rho, const QubitList& keep);

struct Projection {
    DensityMatrix block;  // unnormalized, on the qubits not projected
    double probability;   // trace of block
};

/// Applies |0⟩⟨0| on each listed qubit and returns the block on the remaining qubits.
Projection project_ancillas_zero(const DensityMatrix& rho, const QubitList& ancillas);

struct HermitianEigen {
    RealVector values;     // descending
    ComplexMatrix vectors;  // orthonormal columns, matching `values`
};

/// Spectral decomposition of a Hermitian matrix. The input is symmetrized
/// as (M + M†)/2 first; deviations above 1e-10 raise NonHermitian.
HermitianEigen eig_hermitian(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol);
ComplexMatrix hermitize(const ComplexMatrix& m);
double max_abs(const ComplexMatrix& m);
bool is_unitary(const ComplexMatrix& u, double tol);

/// ⟨ψ|ρ|ψ⟩, real part.
double expectation(const ComplexMatrix& rho, const ComplexVector& psi);

}  // namespace qfilt
