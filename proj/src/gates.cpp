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

#include "qfilt/gates.hpp"

#include <cmath>
#include <string>

#include "qfilt/errors.hpp"

namespace qfilt {

namespace {

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

Mat2 rot2(Axis axis, double angle) {
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    Mat2 m;
    switch (axis) {
        case Axis::X:
            m << c, Complex(0, -s), Complex(0, -s), c;
            break;
        case Axis::Y:
            m << c, -s, s, c;
            break;
        case Axis::Z:
            m << Complex(c, -s), 0.0, 0.0, Complex(c, s);
            break;
    }
    return m;
}

Mat2 euler2(const double* a) { return rot2(Axis::Z, a[0]) * rot2(Axis::Y, a[1]) * rot2(Axis::Z, a[2]); }

Mat4 kron2(const Mat2& a, const Mat2& b) {
    Mat4 m;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return m;
}

// CNOT(1→0): control is the least significant qubit.
Mat4 cnot_10() {
    Mat4 m = Mat4::Zero();
    m(0, 0) = m(1, 3) = m(2, 2) = m(3, 1) = 1.0;
    return m;
}

Mat4 cnot_01() {
    Mat4 m = Mat4::Zero();
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return m;
}

// V ⊗ I_2 on the left of `acc`, exploiting the block structure.
void left_apply_upper(const ComplexMatrix& v, ComplexMatrix& acc) {
    const Eigen::Index d = v.rows();
    ComplexMatrix out = ComplexMatrix::Zero(acc.rows(), acc.cols());
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            const Complex vij = v(i, j);
            if (vij == Complex(0.0)) {
                continue;
            }
            out.row(2 * i) += vij * acc.row(2 * j);
            out.row(2 * i + 1) += vij * acc.row(2 * j + 1);
        }
    }
    acc.swap(out);
}

// Multiplexed rotation on the last qubit (block diagonal, 2x2 blocks) on the left of `acc`.
void left_apply_mux_last(Axis axis, const double* angles, ComplexMatrix& acc) {
    const Eigen::Index blocks = acc.rows() / 2;
    for (Eigen::Index c = 0; c < blocks; ++c) {
        const Mat2 r = rot2(axis, angles[c]);
        const Eigen::RowVectorXcd top = acc.row(2 * c);
        const Eigen::RowVectorXcd bottom = acc.row(2 * c + 1);
        acc.row(2 * c) = r(0, 0) * top + r(0, 1) * bottom;
        acc.row(2 * c + 1) = r(1, 0) * top + r(1, 1) * bottom;
    }
}

ComplexMatrix qsd_recursive(const double* p, int n) {
    if (n == 2) {
        return minimal_two_qubit(std::span<const double>(p, 15));
    }
    const int sub = circuit_param_count(n - 1);
    const int mux = 1 << (n - 1);
    ComplexMatrix acc = tensor(qsd_recursive(p, n - 1), ComplexMatrix::Identity(2, 2));
    p += sub;
    left_apply_mux_last(Axis::Z, p, acc);
    p += mux;
    left_apply_upper(qsd_recursive(p, n - 1), acc);
    p += sub;
    left_apply_mux_last(Axis::Y, p, acc);
    p += mux;
    left_apply_upper(qsd_recursive(p, n - 1), acc);
    p += sub;
    left_apply_mux_last(Axis::Z, p, acc);
    p += mux;
    left_apply_upper(qsd_recursive(p, n - 1), acc);
    return acc;
}

}  // namespace

ComplexMatrix rotation(Axis axis, double angle) { return rot2(axis, angle); }

ComplexMatrix one_qubit_unitary(double alpha, double beta, double gamma) {
    const double a[3] = {alpha, beta, gamma};
    return euler2(a);
}

ComplexMatrix cnot(int num_qubits, int control, int target) {
    if (num_qubits < 2 || control < 0 || target < 0 || control >= num_qubits || target >= num_qubits ||
        control == target) {
        throw InvalidArgument("invalid CNOT qubits");
    }
    const Eigen::Index d = Eigen::Index{1} << num_qubits;
    const Eigen::Index cmask = Eigen::Index{1} << (num_qubits - 1 - control);
    const Eigen::Index tmask = Eigen::Index{1} << (num_qubits - 1 - target);
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        m((i & cmask) ? (i ^ tmask) : i, i) = 1.0;
    }
    return m;
}

ComplexMatrix minimal_two_qubit(std::span<const double> params) {
    if (params.size() != 15) {
        throw InvalidArgument("minimal_two_qubit needs 15 parameters, got " + std::to_string(params.size()));
    }
    const double* p = params.data();
    static const Mat4 c10 = cnot_10();
    static const Mat4 c01 = cnot_01();
    Mat4 u = kron2(euler2(p), euler2(p + 3));
    u = c10 * u;
    u = kron2(rot2(Axis::Z, p[6]), rot2(Axis::Y, p[7])) * u;
    u = c01 * u;
    u = kron2(Mat2::Identity(), rot2(Axis::Y, p[8])) * u;
    u = c10 * u;
    u = kron2(euler2(p + 9), euler2(p + 12)) * u;
    return u;
}

ComplexMatrix multiplexed_rotation_matrix(const MultiplexedRotation& mr, int total_qubits, int target,
                                          const QubitList& controls) {
    if (mr.angles.size() != (size_t{1} << controls.size())) {
        throw InvalidArgument("multiplexed rotation with " + std::to_string(controls.size()) + " controls needs " +
                              std::to_string(size_t{1} << controls.size()) + " angles");
    }
    if (target < 0 || target >= total_qubits) {
        throw InvalidArgument("target qubit out of range");
    }
    std::vector<bool> used(static_cast<size_t>(total_qubits), false);
    used[static_cast<size_t>(target)] = true;
    for (int c : controls) {
        if (c < 0 || c >= total_qubits || used[static_cast<size_t>(c)]) {
            throw InvalidArgument("control qubits must be valid and disjoint from the target");
        }
        used[static_cast<size_t>(c)] = true;
    }
    const Eigen::Index d = Eigen::Index{1} << total_qubits;
    const Eigen::Index tmask = Eigen::Index{1} << (total_qubits - 1 - target);
    std::vector<Mat2> rots;
    rots.reserve(mr.angles.size());
    for (double a : mr.angles) {
        rots.push_back(rot2(mr.axis, a));
    }
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        if (i & tmask) {
            continue;
        }
        size_t c = 0;
        for (int q : controls) {
            c = (c << 1) | static_cast<size_t>((i >> (total_qubits - 1 - q)) & 1);
        }
        const Mat2& r = rots[c];
        const Eigen::Index j = i | tmask;
        m(i, i) = r(0, 0);
        m(i, j) = r(0, 1);
        m(j, i) = r(1, 0);
        m(j, j) = r(1, 1);
    }
    return m;
}

int circuit_param_count(int num_qubits) {
    switch (num_qubits) {
        case 1:
            return 0;
        case 2:
            return 15;
        default:
            if (num_qubits < 1 || num_qubits > 4) {
                throw InvalidArgument("circuits are defined for 1 to 4 qubits");
            }
            return 4 * circuit_param_count(num_qubits - 1) + 3 * (1 << (num_qubits - 1));
    }
}

ComplexMatrix qsd_unitary(std::span<const double> params, int num_qubits) {
    if (num_qubits != 3 && num_qubits != 4) {
        throw InvalidArgument("qsd_unitary supports 3 or 4 qubits");
    }
    const auto expected = static_cast<size_t>(circuit_param_count(num_qubits));
    if (params.size() != expected) {
        throw InvalidArgument("qsd_unitary on " + std::to_string(num_qubits) + " qubits needs " +
                              std::to_string(expected) + " parameters, got " + std::to_string(params.size()));
    }
    return qsd_recursive(params.data(), num_qubits);
}

ComplexMatrix circuit_unitary(std::span<const double> params, int num_qubits) {
    switch (num_qubits) {
        case 1:
            if (!params.empty()) {
                throw InvalidArgument("the one-qubit identity encoding takes no parameters");
            }
            return ComplexMatrix::Identity(2, 2);
        case 2:
            return minimal_two_qubit(params);
        case 3:
        case 4:
            return qsd_unitary(params, num_qubits);
        default:
            throw InvalidArgument("circuits are defined for 1 to 4 qubits");
    }
}

ParamCircuit::ParamCircuit(int num_qubits, std::vector<double> params)
    : num_qubits_(num_qubits), params_(std::move(params)) {
    if (static_cast<int>(params_.size()) != circuit_param_count(num_qubits)) {
        throw InvalidArgument("circuit on " + std::to_string(num_qubits) + " qubits needs " +
                              std::to_string(circuit_param_count(num_qubits)) + " parameters");
    }
    recipe_ = num_qubits == 1 ? Recipe::Identity : (num_qubits == 2 ? Recipe::Minimal2Q : Recipe::QSD);
}

ComplexMatrix ParamCircuit::unitary() const { return circuit_unitary(params_, num_qubits_); }

}  // namespace qfilt
