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

#include "gtest/gtest.h"

#include "qfilt/errors.hpp"
#include "test_util.hpp"

using namespace qfilt;
using qfilt::testing::make_rng;
using qfilt::testing::random_density;
using qfilt::testing::random_unitary;

namespace {

ComplexMatrix kraus_completeness(const KrausSet& k) {
    ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
    for (const auto& op : k.ops) sum += op.adjoint() * op;
    return sum;
}

double min_eigenvalue(const ComplexMatrix& m) { return eig_hermitian(hermitize(m)).values.minCoeff(); }

std::vector<NoiseSpec> sample_specs() {
    return {{NoiseKind::Dephasing, 0.0},     {NoiseKind::Dephasing, 0.37}, {NoiseKind::Dephasing, 1.0},
            {NoiseKind::Depolarizing, 1.0 / 3.0}, {NoiseKind::Depolarizing, 0.6}, {NoiseKind::Depolarizing, 1.0}};
}

}  // namespace

TEST(NoiseSpec, ranges_and_probabilities) {
    EXPECT_NO_THROW((NoiseSpec{NoiseKind::Dephasing, 0.0}.validate()));
    EXPECT_THROW((NoiseSpec{NoiseKind::Dephasing, -0.1}.validate()), InvalidArgument);
    EXPECT_THROW((NoiseSpec{NoiseKind::Depolarizing, 0.3}.validate()), InvalidArgument);
    EXPECT_THROW((NoiseSpec{NoiseKind::Depolarizing, 1.01}.validate()), InvalidArgument);
    EXPECT_DOUBLE_EQ((NoiseSpec{NoiseKind::Dephasing, 0.4}.p()), 0.7);
    EXPECT_DOUBLE_EQ((NoiseSpec{NoiseKind::Depolarizing, 1.0 / 3.0}.p()), 0.5);
    EXPECT_EQ(parse_noise_kind("depolarizing"), NoiseKind::Depolarizing);
    EXPECT_THROW(parse_noise_kind("amplitude"), InvalidArgument);
}

TEST(RobustnessSpec, ranges) {
    EXPECT_NO_THROW((RobustnessSpec{1.0 / 3.0, 0.0}.validate()));
    EXPECT_THROW((RobustnessSpec{0.2, std::nullopt}.validate()), InvalidArgument);
    EXPECT_THROW((RobustnessSpec{std::nullopt, 1.2}.validate()), InvalidArgument);
}

TEST(KrausSet, completeness) {
    for (const auto& spec : sample_specs()) {
        EXPECT_LT(max_abs(kraus_completeness(kraus_set(spec)) - pauli::identity()), 1e-14);
    }
    EXPECT_THROW(kraus_set({NoiseKind::Dephasing, 2.0}), InvalidArgument);
}

TEST(KrausSet, dephasing_full_strength_is_identity) {
    const auto k = kraus_set({NoiseKind::Dephasing, 1.0});
    ASSERT_EQ(k.ops.size(), 1u);
    EXPECT_LT(max_abs(k.ops[0] - pauli::identity()), 1e-15);
}

TEST(KrausSet, depolarizing_minimum_shrinks_bloch_vector_by_third) {
    auto rng = make_rng(20);
    const auto k = kraus_set({NoiseKind::Depolarizing, 1.0 / 3.0});
    const auto rho = DensityMatrix::from_matrix(random_density(1, rng));
    const auto out = apply_local(rho, k, 0);
    for (const ComplexMatrix& s : {pauli::x(), pauli::y(), pauli::z()}) {
        EXPECT_NEAR((s * out.mat()).trace().real(), (s * rho.mat()).trace().real() / 3.0, 1e-14);
    }
}

TEST(KrausSet, full_dephasing_kills_coherences) {
    auto rng = make_rng(21);
    const auto out = apply_local(DensityMatrix::from_matrix(random_density(1, rng)),
                                 kraus_set({NoiseKind::Dephasing, 0.0}), 0);
    EXPECT_LT(std::abs(out.mat()(0, 1)), 1e-15);
    EXPECT_LT(std::abs(out.mat()(1, 0)), 1e-15);
}

TEST(ApplyLocal, identity_channel) {
    auto rng = make_rng(22);
    const auto rho = DensityMatrix::from_matrix(random_density(3, rng));
    const KrausSet id{{pauli::identity()}};
    for (int q = 0; q < 3; ++q) {
        EXPECT_LT(max_abs(apply_local(rho, id, q).mat() - rho.mat()), 1e-14);
    }
}

TEST(ApplyLocal, dephased_bell_state) {
    const double q = 0.42;
    const auto bell = DensityMatrix::from_pure(phi_plus());
    const auto out = apply_local(bell, kraus_set({NoiseKind::Dephasing, q}), 1);
    ComplexMatrix tau = ComplexMatrix::Zero(4, 4);
    tau(0, 0) = tau(3, 3) = 0.5;
    EXPECT_LT(max_abs(out.mat() - (q * bell.mat() + (1 - q) * tau)), 1e-15);
}

TEST(ApplyLocal, depolarized_pure_state) {
    auto rng = make_rng(23);
    const double q = 0.55;
    const ComplexVector psi = qfilt::testing::random_ket(1, rng);
    const auto rho = DensityMatrix::from_pure(PureState(psi));
    const auto out = apply_local(rho, kraus_set({NoiseKind::Depolarizing, q}), 0);
    EXPECT_LT(max_abs(out.mat() - (q * rho.mat() + (1 - q) * pauli::identity() / 2.0)), 1e-15);
}

TEST(ApplyLocal, rejects_bad_qubit) {
    const auto rho = DensityMatrix::maximally_mixed(2);
    EXPECT_THROW(apply_local(rho, kraus_set({NoiseKind::Dephasing, 0.5}), 2), InvalidArgument);
}

TEST(ApplyIid, order_independent) {
    auto rng = make_rng(24);
    const auto rho = DensityMatrix::from_matrix(random_density(3, rng));
    const auto k = kraus_set({NoiseKind::Depolarizing, 0.5});
    EXPECT_LT(max_abs(apply_iid(rho, k, {0, 1, 2}).mat() - apply_iid(rho, k, {2, 0, 1}).mat()), 1e-13);
}

TEST(ApplyIid, two_qubit_dephasing_coherence) {
    const double q = 0.6;
    const auto out = apply_iid(DensityMatrix::from_pure(phi_plus()), kraus_set({NoiseKind::Dephasing, q}), {0, 1});
    EXPECT_NEAR(out.mat()(0, 3).real(), q * q / 2.0, 1e-15);
    EXPECT_NEAR(out.mat()(0, 0).real(), 0.5, 1e-15);
}

TEST(ApplyIid, noiseless_is_identity) {
    auto rng = make_rng(25);
    const auto rho = DensityMatrix::from_matrix(random_density(3, rng));
    for (auto kind : {NoiseKind::Dephasing, NoiseKind::Depolarizing}) {
        EXPECT_LT(max_abs(apply_iid(rho, kraus_set({kind, 1.0}), {0, 1, 2}).mat() - rho.mat()), 1e-15);
    }
}

TEST(SwapMixture, endpoints) {
    auto rng = make_rng(26);
    const ComplexMatrix a = random_density(1, rng);
    const ComplexMatrix b = random_density(1, rng);
    const auto ab = DensityMatrix::from_matrix(tensor(a, b));
    EXPECT_LT(max_abs(swap_mixture(ab, 1.0, 0, {1}).mat() - ab.mat()), 1e-15);
    EXPECT_LT(max_abs(swap_mixture(ab, 0.0, 0, {1}).mat() - tensor(b, a)), 1e-15);
}

TEST(SwapMixture, individual_swap_probability) {
    // Signal |1⟩ with three |0⟩ ancillas: each ancilla receives the excitation with probability (1 − s)/3.
    const auto rho = DensityMatrix::from_pure(PureState::basis("1000"));
    const auto out = swap_mixture(rho, 0.7, 0, {1, 2, 3});
    EXPECT_NEAR(out.mat()(0b1000, 0b1000).real(), 0.7, 1e-15);
    EXPECT_NEAR(out.mat()(0b0100, 0b0100).real(), 0.1, 1e-15);
    EXPECT_NEAR(out.mat()(0b0010, 0b0010).real(), 0.1, 1e-15);
    EXPECT_NEAR(out.mat()(0b0001, 0b0001).real(), 0.1, 1e-15);
}

TEST(SwapMixture, errors) {
    const auto rho = DensityMatrix::maximally_mixed(2);
    EXPECT_THROW(swap_mixture(rho, 0.5, 0, {}), InvalidArgument);
    EXPECT_NO_THROW(swap_mixture(rho, 1.0, 0, {}));
    EXPECT_THROW(swap_mixture(rho, 1.5, 0, {1}), InvalidArgument);
    EXPECT_THROW(swap_mixture(rho, 0.5, 0, {0}), InvalidArgument);
}

TEST(Channels, trace_and_positivity_preserving) {
    auto rng = make_rng(27);
    const auto specs = sample_specs();
    for (int trial = 0; trial < 500; ++trial) {
        const ComplexMatrix rho = random_density(3, rng, 1 + trial % 8);
        const auto& spec = specs[static_cast<size_t>(trial) % specs.size()];
        const ComplexMatrix outs[3] = {apply_local(rho, kraus_set(spec), trial % 3),
                                       apply_iid(rho, kraus_set(spec), {0, 1, 2}),
                                       swap_mixture(rho, (trial % 11) / 10.0, 0, {1, 2})};
        for (const auto& out : outs) {
            ASSERT_LT(std::abs(out.trace().real() - 1.0), 1e-13);
            ASSERT_GT(min_eigenvalue(out), -1e-10);
        }
    }
}

TEST(Channels, dephasing_fixes_diagonal_states) {
    auto rng = make_rng(28);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexMatrix diag = ComplexMatrix::Zero(4, 4);
        double total = 0;
        for (int i = 0; i < 4; ++i) total += (diag(i, i) = qfilt::testing::uniform(rng)).real();
        diag /= total;
        const auto out = apply_iid(diag, kraus_set({NoiseKind::Dephasing, 0.3}), {0, 1});
        EXPECT_LT(max_abs(out - diag), 1e-14);
    }
}

TEST(Channels, depolarizing_is_unitarily_covariant) {
    auto rng = make_rng(29);
    const auto k = kraus_set({NoiseKind::Depolarizing, 0.45});
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix u = random_unitary(2, rng);
        const ComplexMatrix rho = random_density(1, rng);
        EXPECT_LT(max_abs(apply_local(u * rho * u.adjoint(), k, 0) - u * apply_local(rho, k, 0) * u.adjoint()), 1e-12);
    }
}

TEST(Channels, kraus_equals_pauli_average) {
    auto rng = make_rng(30);
    const NoiseSpec spec{NoiseKind::Depolarizing, 0.52};
    const double p = spec.p();
    const double pi[4] = {p, (1 - p) / 3, (1 - p) / 3, (1 - p) / 3};
    const ComplexMatrix v[4] = {pauli::identity(), pauli::x(), pauli::y(), pauli::z()};
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix rho = random_density(1, rng);
        ComplexMatrix avg = ComplexMatrix::Zero(2, 2);
        for (int i = 0; i < 4; ++i) avg += pi[i] * v[i] * rho * v[i].adjoint();
        EXPECT_LT(max_abs(apply_local(rho, kraus_set(spec), 0) - avg), 1e-14);
    }
}

TEST(ConjugateTrailing, matches_explicit_identity_tensor) {
    auto rng = make_rng(31);
    const ComplexMatrix op = random_density(3, rng);
    const ComplexMatrix u = random_unitary(4, rng);
    const ComplexMatrix full = tensor(pauli::identity(), u);
    EXPECT_LT(max_abs(conjugate_trailing(op, u) - full * op * full.adjoint()), 1e-14);
}
