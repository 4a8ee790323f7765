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

#include "qfilt/channels.hpp"

#include <algorithm>
#include <cmath>

#include "qfilt/errors.hpp"

namespace qfilt {

namespace {

constexpr double kRangeSlack = 1e-12;

void check_qubit(int qubit, int num_qubits) {
    if (qubit < 0 || qubit >= num_qubits) {
        throw InvalidArgument("qubit index " + std::to_string(qubit) + " out of range");
    }
}

// K·M on `qubit`.
void left_apply(ComplexMatrix& m, const ComplexMatrix& k, int qubit, int num_qubits) {
    const Eigen::Index mask = Eigen::Index{1} << (num_qubits - 1 - qubit);
    const Complex k00 = k(0, 0), k01 = k(0, 1), k10 = k(1, 0), k11 = k(1, 1);
    const Eigen::Index d = m.rows();
    for (Eigen::Index i = 0; i < d; ++i) {
        if (i & mask) {
            continue;
        }
        const Eigen::Index j = i | mask;
        for (Eigen::Index c = 0; c < d; ++c) {
            const Complex a = m(i, c);
            const Complex b = m(j, c);
            m(i, c) = k00 * a + k01 * b;
            m(j, c) = k10 * a + k11 * b;
        }
    }
}

// M·K† on `qubit`.
void right_apply_adjoint(ComplexMatrix& m, const ComplexMatrix& k, int qubit, int num_qubits) {
    const Eigen::Index mask = Eigen::Index{1} << (num_qubits - 1 - qubit);
    const Complex k00 = std::conj(k(0, 0)), k01 = std::conj(k(0, 1)), k10 = std::conj(k(1, 0)),
                  k11 = std::conj(k(1, 1));
    const Eigen::Index d = m.rows();
    for (Eigen::Index i = 0; i < d; ++i) {
        if (i & mask) {
            continue;
        }
        const Eigen::Index j = i | mask;
        for (Eigen::Index r = 0; r < d; ++r) {
            const Complex a = m(r, i);
            const Complex b = m(r, j);
            m(r, i) = a * k00 + b * k01;
            m(r, j) = a * k10 + b * k11;
        }
    }
}

Eigen::Index swap_bits(Eigen::Index i, Eigen::Index ma, Eigen::Index mb) {
    const bool a = (i & ma) != 0;
    const bool b = (i & mb) != 0;
    return a == b ? i : (i ^ ma ^ mb);
}

}  // namespace

std::string to_string(NoiseKind kind) { return kind == NoiseKind::Dephasing ? "dephasing" : "depolarizing"; }

NoiseKind parse_noise_kind(const std::string& s) {
    if (s == "dephasing") {
        return NoiseKind::Dephasing;
    }
    if (s == "depolarizing") {
        return NoiseKind::Depolarizing;
    }
    throw InvalidArgument("unknown noise kind '" + s + "'");
}

double NoiseSpec::q_min(NoiseKind kind) { return kind == NoiseKind::Dephasing ? 0.0 : 1.0 / 3.0; }

void NoiseSpec::validate() const {
    const double lo = q_min(kind);
    if (!(q >= lo - kRangeSlack && q <= 1.0 + kRangeSlack)) {
        throw InvalidArgument(to_string(kind) + " parameter q=" + std::to_string(q) + " outside [" +
                              std::to_string(lo) + ", 1]");
    }
}

double NoiseSpec::p() const { return kind == NoiseKind::Dephasing ? (1.0 + q) / 2.0 : (1.0 + 3.0 * q) / 4.0; }

void RobustnessSpec::validate() const {
    if (q_a && !(*q_a >= 1.0 / 3.0 - kRangeSlack && *q_a <= 1.0 + kRangeSlack)) {
        throw InvalidArgument("ancilla preparation parameter q_a=" + std::to_string(*q_a) + " outside [1/3, 1]");
    }
    if (s && !(*s >= 0.0 && *s <= 1.0)) {
        throw InvalidArgument("no-swap probability s=" + std::to_string(*s) + " outside [0, 1]");
    }
}

std::array<double, 4> pauli_weights(const NoiseSpec& spec) {
    spec.validate();
    const double p = std::clamp(spec.p(), 0.0, 1.0);
    if (spec.kind == NoiseKind::Dephasing) {
        return {p, 0.0, 0.0, 1.0 - p};
    }
    const double e = (1.0 - p) / 3.0;
    return {p, e, e, e};
}

KrausSet kraus_set(const NoiseSpec& spec) {
    const auto w = pauli_weights(spec);
    const ComplexMatrix paulis[4] = {pauli::identity(), pauli::x(), pauli::y(), pauli::z()};
    KrausSet set;
    for (int i = 0; i < 4; ++i) {
        if (w[static_cast<size_t>(i)] > 0.0) {
            set.ops.push_back(std::sqrt(w[static_cast<size_t>(i)]) * paulis[i]);
        }
    }
    return set;
}

ComplexMatrix apply_local(const ComplexMatrix& op, const KrausSet& kraus, int qubit) {
    const int k = qubits_for_dim(op.rows());
    check_qubit(qubit, k);
    ComplexMatrix out = ComplexMatrix::Zero(op.rows(), op.cols());
    ComplexMatrix tmp;
    for (const auto& kop : kraus.ops) {
        tmp = op;
        left_apply(tmp, kop, qubit, k);
        right_apply_adjoint(tmp, kop, qubit, k);
        out += tmp;
    }
    return out;
}

DensityMatrix apply_local(const DensityMatrix& rho, const KrausSet& kraus, int qubit) {
    return DensityMatrix::from_channel_output(hermitize(apply_local(rho.mat(), kraus, qubit)), rho.normalized());
}

ComplexMatrix apply_iid(const ComplexMatrix& op, const KrausSet& kraus, const QubitList& qubits) {
    ComplexMatrix out = op;
    for (int q : qubits) {
        out = apply_local(out, kraus, q);
    }
    return out;
}

DensityMatrix apply_iid(const DensityMatrix& rho, const KrausSet& kraus, const QubitList& qubits) {
    return DensityMatrix::from_channel_output(hermitize(apply_iid(rho.mat(), kraus, qubits)), rho.normalized());
}

ComplexMatrix swap_mixture(const ComplexMatrix& op, double s, int signal, const QubitList& ancillas) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw InvalidArgument("no-swap probability must lie in [0, 1]");
    }
    if (ancillas.empty()) {
        if (s < 1.0) {
            throw InvalidArgument("swap mixture with s < 1 needs at least one ancilla");
        }
        return op;
    }
    const int k = qubits_for_dim(op.rows());
    check_qubit(signal, k);
    const Eigen::Index d = op.rows();
    const Eigen::Index ms = Eigen::Index{1} << (k - 1 - signal);
    const double w = (1.0 - s) / static_cast<double>(ancillas.size());
    ComplexMatrix out = s * op;
    if (w == 0.0) {
        return out;
    }
    std::vector<Eigen::Index> perm(static_cast<size_t>(d));
    for (int a : ancillas) {
        check_qubit(a, k);
        if (a == signal) {
            throw InvalidArgument("ancilla coincides with the signal qubit");
        }
        const Eigen::Index ma = Eigen::Index{1} << (k - 1 - a);
        for (Eigen::Index i = 0; i < d; ++i) {
            perm[static_cast<size_t>(i)] = swap_bits(i, ms, ma);
        }
        for (Eigen::Index j = 0; j < d; ++j) {
            const Eigen::Index pj = perm[static_cast<size_t>(j)];
            for (Eigen::Index i = 0; i < d; ++i) {
                out(i, j) += w * op(perm[static_cast<size_t>(i)], pj);
            }
        }
    }
    return out;
}

DensityMatrix swap_mixture(const DensityMatrix& rho, double s, int signal, const QubitList& ancillas) {
    return DensityMatrix::from_channel_output(hermitize(swap_mixture(rho.mat(), s, signal, ancillas)),
                                              rho.normalized());
}

ComplexMatrix conjugate_trailing(const ComplexMatrix& op, const ComplexMatrix& u) {
    const Eigen::Index d = op.rows();
    const Eigen::Index du = u.rows();
    if (du > d || d % du != 0) {
        throw InvalidArgument("unitary does not fit the register");
    }
    if (du == d) {
        return u * op * u.adjoint();
    }
    // I ⊗ U is block diagonal: each du×du block maps to U·block·U†.
    const Eigen::Index nb = d / du;
    ComplexMatrix out(d, d);
    for (Eigen::Index bi = 0; bi < nb; ++bi) {
        for (Eigen::Index bj = 0; bj < nb; ++bj) {
            out.block(bi * du, bj * du, du, du).noalias() =
                u * op.block(bi * du, bj * du, du, du) * u.adjoint();
        }
    }
    return out;
}

}  // namespace qfilt
