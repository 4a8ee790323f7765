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

#include "qfilt/analytic.hpp"

#include <cmath>
#include <limits>

#include "qfilt/errors.hpp"
#include "qfilt/filtration.hpp"
#include "qfilt/metrics.hpp"

namespace qfilt {

namespace {

ComplexMatrix bell_basis_map() {
    const double h = M_SQRT1_2;
    ComplexMatrix u = ComplexMatrix::Zero(4, 4);
    // Columns |00⟩, |01⟩, |10⟩, |11⟩ → Φ+, Φ−, Ψ+, Ψ−.
    u(0, 0) = h;
    u(3, 0) = h;
    u(0, 1) = h;
    u(3, 1) = -h;
    u(1, 2) = h;
    u(2, 2) = h;
    u(1, 3) = h;
    u(2, 3) = -h;
    return u;
}

constexpr std::array<Complex, 6> kAllPlus = {1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
constexpr std::array<Complex, 6> kDepolarizingSigns = {1.0, 1.0, 1.0, -1.0, 1.0, -1.0};

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

[[noreturn]] void unsupported(ClosedFormMetric metric, int n, NoiseKind kind) {
    throw Unsupported("no closed form for " + to_string(metric) + " with n=" + std::to_string(n) + " under " +
                      to_string(kind) + " noise");
}

}  // namespace

AnsatzUnitary AnsatzUnitary::for_noise(int n_ancillas, NoiseKind kind) {
    if (n_ancillas == 1) {
        return {1, AnsatzVariant::DephasingBell, std::nullopt};
    }
    if (n_ancillas == 2) {
        return {2, kind == NoiseKind::Dephasing ? AnsatzVariant::TwoAncillaDephasing
                                                : AnsatzVariant::TwoAncillaDepolarizing,
                std::nullopt};
    }
    throw Unsupported("ansatz unitaries exist for one or two ancillas only");
}

ComplexMatrix AnsatzUnitary::matrix() const {
    if (n_ancillas == 1) {
        return bell_basis_map();
    }
    if (n_ancillas != 2) {
        throw Unsupported("ansatz unitaries exist for one or two ancillas only");
    }
    if (phases) {
        return parity_encoding_unitary(*phases);
    }
    return variant == AnsatzVariant::TwoAncillaDepolarizing ? parity_encoding_unitary(kDepolarizingSigns)
                                                             : two_ancilla_fourier_matrix();
}

ComplexMatrix ansatz_unitary(int n_ancillas, NoiseKind kind) {
    return AnsatzUnitary::for_noise(n_ancillas, kind).matrix();
}

ComplexMatrix two_ancilla_fourier_matrix() {
    const Complex i(0, 1);
    ComplexMatrix u(8, 8);
    // clang-format off
    u << 1, 0,  0,  1,  0,  1,  1,  0,
         0, 1, -1,  0,  1,  0,  0, -1,
         0, 1, -i,  0, -1,  0,  0,  i,
         1, 0,  0,  i,  0, -1, -i,  0,
         0, 1,  1,  0,  1,  0,  0,  1,
         1, 0,  0, -1,  0,  1, -1,  0,
         1, 0,  0, -i,  0, -1,  i,  0,
         0, 1,  i,  0, -1,  0,  0, -i;
    // clang-format on
    return u / 2.0;
}

ComplexMatrix parity_encoding_unitary(const std::array<Complex, 6>& w) {
    for (const Complex& z : w) {
        if (std::abs(std::abs(z) - 1.0) > 1e-12) {
            throw InvalidArgument("parity encoding weights must have unit modulus");
        }
    }
    ComplexVector even = ComplexVector::Zero(8);
    even(0b000) = 0.5;
    even(0b011) = 0.5 * w[0];
    even(0b101) = 0.5 * w[1];
    even(0b110) = 0.5 * w[2];
    ComplexVector odd = ComplexVector::Zero(8);
    odd(0b001) = 0.5;
    odd(0b010) = 0.5 * w[3];
    odd(0b100) = 0.5 * w[4];
    odd(0b111) = 0.5 * w[5];

    std::vector<ComplexVector> basis{even, odd};
    for (Eigen::Index e = 0; e < 8 && basis.size() < 8; ++e) {
        ComplexVector v = ComplexVector::Unit(8, e);
        for (const auto& b : basis) {
            v -= b.dot(v) * b;
        }
        if (v.norm() > 1e-8) {
            basis.push_back(v.normalized());
        }
    }
    ComplexMatrix u(8, 8);
    // Fixed columns at |000⟩ (index 0) and |100⟩ (index 4); completion fills the rest in order.
    u.col(0) = basis[0];
    u.col(4) = basis[1];
    size_t next = 2;
    for (Eigen::Index c = 0; c < 8; ++c) {
        if (c != 0 && c != 4) {
            u.col(c) = basis[next++];
        }
    }
    return u;
}

std::string to_string(ClosedFormMetric metric) {
    switch (metric) {
        case ClosedFormMetric::P:
            return "P";
        case ClosedFormMetric::F:
            return "F";
        case ClosedFormMetric::BetaFix:
            return "BetaFix";
    }
    return "?";
}

double closed_form(ClosedFormMetric metric, int n, const NoiseSpec& noise) {
    noise.validate();
    const double q = noise.q;
    const double q2 = q * q;
    const bool deph = noise.kind == NoiseKind::Dephasing;
    if (n < 0 || n > 3) {
        throw InvalidArgument("number of ancillas must be in 0..3");
    }
    switch (metric) {
        case ClosedFormMetric::P:
            switch (n) {
                case 0:
                    return 1.0;
                case 1:
                    return (1.0 + q2) / 2.0;
                case 2:
                    return deph ? (1.0 + 3.0 * q2) / 4.0 : (1.0 + q2 + 2.0 * q2 * q) / 4.0;
                default:
                    break;
            }
            break;
        case ClosedFormMetric::F:
            switch (n) {
                case 0:
                    return deph ? (1.0 + q) / 2.0 : (1.0 + 3.0 * q) / 4.0;
                case 1:
                    return deph ? 0.5 + q / (1.0 + q2) : (1.0 + 2.0 * q + 5.0 * q2) / (4.0 * (1.0 + q2));
                case 2:
                    return deph ? std::pow(1.0 + q, 3) / (6.0 * q2 + 2.0)
                                : (1.0 + 7.0 * q2) / (4.0 * (1.0 - q + 2.0 * q2));
                default:
                    break;
            }
            break;
        case ClosedFormMetric::BetaFix:
            switch (n) {
                case 0:
                    return deph ? 2.0 * std::sqrt(1.0 + q2) : 2.0 * M_SQRT2 * q;
                case 1:
                    return deph ? (6.0 * q2 + 2.0) / std::pow(q2 + 1.0, 1.5)
                                : 2.0 * M_SQRT2 * q * (1.0 + q) / (1.0 + q2);
                case 2:
                    if (deph) {
                        return 2.0 * (1.0 + 6.0 * q2 + q2 * q2) / ((1.0 + 3.0 * q2) * std::sqrt(1.0 + q2));
                    }
                    break;
                default:
                    break;
            }
            break;
    }
    unsupported(metric, n, noise.kind);
}

double closed_form_qfi(int n, double q_r) {
    NoiseSpec{NoiseKind::Depolarizing, q_r}.validate();
    if (n == 0) {
        return q_r * q_r;
    }
    if (n == 1) {
        return 2.0 * q_r * q_r / (q_r * q_r + 1.0);
    }
    throw Unsupported("no closed-form QFI for n=" + std::to_string(n));
}

PauliAverage pauli_average_oracle(const ComplexMatrix& encoding, const NoiseSpec& noise) {
    if (encoding.rows() != 4 || encoding.cols() != 4) {
        throw InvalidArgument("the Pauli-averaging oracle needs a two-qubit encoding");
    }
    const auto pi = pauli_weights(noise);
    const ComplexMatrix paulis[4] = {pauli::identity(), pauli::x(), pauli::y(), pauli::z()};
    const ComplexVector target = phi_plus().vec();
    double p1 = 0.0;
    double fnum = 0.0;
    for (size_t a = 0; a < 4; ++a) {
        for (size_t b = 0; b < 4; ++b) {
            const double weight = pi[a] * pi[b];
            if (weight == 0.0) {
                continue;
            }
            const ComplexMatrix w = encoding.adjoint() * tensor(paulis[a], paulis[b]) * encoding;
            // Keep the ancilla-0 rows ⟨j0|: amplitude on |R⟩|j⟩ from inputs |00⟩ (R=0) and |10⟩ (R=1).
            ComplexVector psi(4);
            for (Eigen::Index j = 0; j < 2; ++j) {
                psi(j) = M_SQRT1_2 * w(2 * j, 0);
                psi(2 + j) = M_SQRT1_2 * w(2 * j, 2);
            }
            p1 += weight * psi.squaredNorm();
            fnum += weight * std::norm(target.dot(psi));
        }
    }
    return {p1, fnum / p1};
}

std::vector<VerificationRow> verification_table(int points) {
    if (points < 2) {
        throw InvalidArgument("verification grid needs at least two points");
    }
    std::vector<VerificationRow> rows;
    const NoiseKind kinds[2] = {NoiseKind::Dephasing, NoiseKind::Depolarizing};
    auto grid = [points](NoiseKind kind) {
        std::vector<double> qs;
        const double lo = NoiseSpec::q_min(kind);
        for (int i = 0; i < points; ++i) {
            qs.push_back(lo + (1.0 - lo) * i / (points - 1));
        }
        return qs;
    };
    auto encoding = [](int n, NoiseKind kind) {
        return n == 0 ? ComplexMatrix(ComplexMatrix::Identity(2, 2)) : ansatz_unitary(n, kind);
    };

    for (ClosedFormMetric metric : {ClosedFormMetric::P, ClosedFormMetric::F, ClosedFormMetric::BetaFix}) {
        for (int n = 0; n <= 3; ++n) {
            for (NoiseKind kind : kinds) {
                VerificationRow row{to_string(metric), n, kind, true, 0.0};
                try {
                    closed_form(metric, n, {kind, 1.0});
                } catch (const Unsupported&) {
                    row.supported = false;
                    row.max_residual = nan();
                    rows.push_back(row);
                    continue;
                }
                const Task task = metric == ClosedFormMetric::BetaFix ? Task::CHSH : Task::FidelityWithReference;
                for (double q : grid(kind)) {
                    const NoiseSpec noise{kind, q};
                    const auto cfg = PipelineConfig::for_task(task, n, noise);
                    const auto out = run_filtration(cfg, encoding(n, kind), pipeline_input(cfg));
                    double simulated = 0.0;
                    switch (metric) {
                        case ClosedFormMetric::P:
                            simulated = out.probability;
                            break;
                        case ClosedFormMetric::F:
                            simulated = entanglement_fidelity(out).value;
                            break;
                        case ClosedFormMetric::BetaFix:
                            simulated = chsh_value(out.state, fixed_settings(noise));
                            break;
                    }
                    row.max_residual = std::max(row.max_residual, std::abs(simulated - closed_form(metric, n, noise)));
                }
                rows.push_back(row);
            }
        }
    }

    for (int n = 0; n <= 3; ++n) {
        VerificationRow row{"Q", n, NoiseKind::Depolarizing, n <= 1, n <= 1 ? 0.0 : nan()};
        if (row.supported) {
            for (double q : grid(NoiseKind::Depolarizing)) {
                const auto cfg = PipelineConfig::for_task(Task::QFI, n, {NoiseKind::Depolarizing, q});
                const auto d = derivative_pipeline(cfg, encoding(n, NoiseKind::Depolarizing), 0.0);
                row.max_residual = std::max(row.max_residual, std::abs(qfi(d.rho, d.drho) - closed_form_qfi(n, q)));
            }
        }
        rows.push_back(row);
    }

    for (NoiseKind kind : kinds) {
        VerificationRow row{"PauliAverage", 1, kind, true, 0.0};
        for (double q : grid(kind)) {
            const NoiseSpec noise{kind, q};
            const auto oracle = pauli_average_oracle(ansatz_unitary(1, kind), noise);
            row.max_residual = std::max({row.max_residual, std::abs(oracle.p1 - closed_form(ClosedFormMetric::P, 1, noise)),
                                         std::abs(oracle.f1 - closed_form(ClosedFormMetric::F, 1, noise))});
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace qfilt
