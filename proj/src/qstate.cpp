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

#include "qfilt/qstate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "qfilt/errors.hpp"

namespace qfilt {

int qubits_for_dim(Eigen::Index dim) {
    if (dim < 1 || !std::has_single_bit(static_cast<unsigned long long>(dim))) {
        throw InvalidArgument("dimension " + std::to_string(dim) + " is not a power of two");
    }
    return std::countr_zero(static_cast<unsigned long long>(dim));
}

PureState::PureState(ComplexVector vec) : vec_(std::move(vec)), num_qubits_(qubits_for_dim(vec_.size())) {
    if (std::abs(vec_.norm() - 1.0) > 1e-12) {
        throw InvalidArgument("state vector is not normalized (norm " + std::to_string(vec_.norm()) + ")");
    }
}

PureState PureState::basis(std::string_view bits) {
    if (bits.empty()) {
        throw InvalidArgument("empty basis label");
    }
    Eigen::Index index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw InvalidArgument("basis label must contain only 0 and 1");
        }
        index = (index << 1) | (c == '1' ? 1 : 0);
    }
    ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << bits.size());
    v(index) = 1.0;
    return PureState(std::move(v));
}

PureState PureState::tensor(const PureState& other) const {
    return PureState(Eigen::kroneckerProduct(vec_, other.vec_).eval());
}

PureState phi_plus() {
    ComplexVector v = ComplexVector::Zero(4);
    v(0) = v(3) = M_SQRT1_2;
    return PureState(std::move(v));
}

PureState psi_plus() {
    ComplexVector v = ComplexVector::Zero(4);
    v(1) = v(2) = M_SQRT1_2;
    return PureState(std::move(v));
}

PureState rotated_y_state(double theta) {
    ComplexVector v(2);
    v << std::cos(theta / 2), std::sin(theta / 2);
    return PureState(std::move(v));
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, bool normalized) {
    if (m.rows() != m.cols()) {
        throw InvalidArgument("density matrix must be square");
    }
    const int k = qubits_for_dim(m.rows());
    if (!is_hermitian(m, kHermitianTol)) {
        throw NonHermitian("density matrix is not Hermitian within 1e-12");
    }
    if (normalized && std::abs(m.trace().real() - 1.0) > kTraceTol) {
        throw InvalidArgument("density matrix trace " + std::to_string(m.trace().real()) + " differs from 1");
    }
    const auto eig = eig_hermitian(m);
    if (eig.values.minCoeff() < -kPositivityTol) {
        throw InvalidArgument("density matrix has a negative eigenvalue " + std::to_string(eig.values.minCoeff()));
    }
    return DensityMatrix(hermitize(m), k, normalized);
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    return DensityMatrix(psi.projector(), psi.num_qubits(), true);
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
    const Eigen::Index d = Eigen::Index{1} << num_qubits;
    return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d), num_qubits, true);
}

DensityMatrix DensityMatrix::from_channel_output(ComplexMatrix m, bool normalized) {
    if (m.rows() != m.cols()) {
        throw InvalidArgument("density matrix must be square");
    }
    const int k = qubits_for_dim(m.rows());
    if (normalized && std::abs(m.trace().real() - 1.0) > 1e-9) {
        throw InvalidArgument("channel output trace " + std::to_string(m.trace().real()) + " differs from 1");
    }
    return DensityMatrix(std::move(m), k, normalized);
}

DensityMatrix DensityMatrix::normalize() const {
    const double t = trace();
    if (!(t > 0.0)) {
        throw InvalidArgument("cannot normalize an operator with non-positive trace");
    }
    return DensityMatrix(mat_ / t, num_qubits_, true);
}

namespace pauli {
ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }
ComplexMatrix x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}
ComplexMatrix y() {
    ComplexMatrix m(2, 2);
    m << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
    return m;
}
ComplexMatrix z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}
}  // namespace pauli

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix::from_channel_output(tensor(a.mat(), b.mat()), a.normalized() && b.normalized());
}

namespace {

void check_qubits(const QubitList& qubits, int num_qubits) {
    std::vector<bool> seen(static_cast<size_t>(num_qubits), false);
    for (int q : qubits) {
        if (q < 0 || q >= num_qubits) {
            throw InvalidArgument("qubit index " + std::to_string(q) + " out of range");
        }
        if (seen[static_cast<size_t>(q)]) {
            throw InvalidArgument("duplicate qubit index " + std::to_string(q));
        }
        seen[static_cast<size_t>(q)] = true;
    }
}

// Scatters the bits of `sub` (MSB first over `positions`) into a full basis index.
Eigen::Index scatter(Eigen::Index sub, const QubitList& positions, int num_qubits) {
    Eigen::Index out = 0;
    const int m = static_cast<int>(positions.size());
    for (int i = 0; i < m; ++i) {
        if ((sub >> (m - 1 - i)) & 1) {
            out |= Eigen::Index{1} << (num_qubits - 1 - positions[static_cast<size_t>(i)]);
        }
    }
    return out;
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, const QubitList& keep) {
    if (keep.empty()) {
        throw InvalidArgument("partial_trace needs at least one qubit to keep");
    }
    const int k = rho.num_qubits();
    check_qubits(keep, k);
    QubitList kept = keep;
    std::sort(kept.begin(), kept.end());
    QubitList traced;
    for (int q = 0; q < k; ++q) {
        if (!std::binary_search(kept.begin(), kept.end(), q)) {
            traced.push_back(q);
        }
    }
    const Eigen::Index dk = Eigen::Index{1} << kept.size();
    const Eigen::Index dt = Eigen::Index{1} << traced.size();
    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (Eigen::Index t = 0; t < dt; ++t) {
        const Eigen::Index toff = scatter(t, traced, k);
        for (Eigen::Index i = 0; i < dk; ++i) {
            const Eigen::Index row = scatter(i, kept, k) | toff;
            for (Eigen::Index j = 0; j < dk; ++j) {
                out(i, j) += rho.mat()(row, scatter(j, kept, k) | toff);
            }
        }
    }
    return DensityMatrix::from_channel_output(std::move(out), rho.normalized());
}

Projection project_ancillas_zero(const DensityMatrix& rho, const QubitList& ancillas) {
    const int k = rho.num_qubits();
    check_qubits(ancillas, k);
    QubitList rest;
    for (int q = 0; q < k; ++q) {
        if (std::find(ancillas.begin(), ancillas.end(), q) == ancillas.end()) {
            rest.push_back(q);
        }
    }
    if (rest.empty()) {
        throw InvalidArgument("projection must leave at least one qubit");
    }
    const Eigen::Index dr = Eigen::Index{1} << rest.size();
    std::vector<Eigen::Index> index(static_cast<size_t>(dr));
    for (Eigen::Index i = 0; i < dr; ++i) {
        index[static_cast<size_t>(i)] = scatter(i, rest, k);
    }
    ComplexMatrix block(dr, dr);
    for (Eigen::Index i = 0; i < dr; ++i) {
        for (Eigen::Index j = 0; j < dr; ++j) {
            block(i, j) = rho.mat()(index[static_cast<size_t>(i)], index[static_cast<size_t>(j)]);
        }
    }
    const double p = block.trace().real();
    return {DensityMatrix::from_channel_output(std::move(block), false), p};
}

HermitianEigen eig_hermitian(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw InvalidArgument("eig_hermitian needs a square matrix");
    }
    if (!is_hermitian(m, kEigTol)) {
        throw NonHermitian("matrix deviates from Hermitian by more than 1e-10");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(m));
    if (solver.info() != Eigen::Success) {
        throw Error("Hermitian eigen-solver did not converge");
    }
    // Eigen sorts ascending; flip to descending.
    return {solver.eigenvalues().reverse(), solver.eigenvectors().rowwise().reverse()};
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

ComplexMatrix hermitize(const ComplexMatrix& m) { return (m + m.adjoint()) * 0.5; }

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_unitary(const ComplexMatrix& u, double tol) {
    return u.rows() == u.cols() &&
           max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())) < tol;
}

double expectation(const ComplexMatrix& rho, const ComplexVector& psi) {
    return psi.dot(rho * psi).real();
}

}  // namespace qfilt
