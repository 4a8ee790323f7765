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

#include "qfilt/filtration.hpp"

#include "gtest/gtest.h"

#include "qfilt/analytic.hpp"
#include "qfilt/errors.hpp"
#include "qfilt/metrics.hpp"
#include "test_util.hpp"

using namespace qfilt;
using qfilt::testing::make_rng;
using qfilt::testing::random_params;
using qfilt::testing::random_unitary;

namespace {

PipelineConfig fidelity_cfg(int n, NoiseSpec noise, std::optional<RobustnessSpec> r = std::nullopt) {
    return PipelineConfig::for_task(Task::FidelityWithReference, n, noise, r);
}

double fidelity(const FiltrationOutcome& o) { return entanglement_fidelity(o).value; }

}  // namespace

TEST(PipelineConfig, invariants) {
    PipelineConfig cfg = fidelity_cfg(2, {NoiseKind::Dephasing, 0.5});
    EXPECT_EQ(cfg.num_qubits(), 4);
    EXPECT_EQ(cfg.ancillas(), (QubitList{2, 3}));
    EXPECT_EQ(cfg.encoded_qubits(), (QubitList{1, 2, 3}));
    cfg.post_select = false;
    EXPECT_THROW(cfg.validate(), InvalidArgument);

    PipelineConfig qfi = PipelineConfig::for_task(Task::QFI, 1, {NoiseKind::Depolarizing, 0.5});
    EXPECT_FALSE(qfi.post_select);
    EXPECT_FALSE(qfi.has_reference());
    EXPECT_EQ(qfi.num_qubits(), 2);
    qfi.post_select = true;
    EXPECT_THROW(qfi.validate(), InvalidArgument);

    EXPECT_THROW(fidelity_cfg(4, {NoiseKind::Dephasing, 0.5}), InvalidArgument);
    EXPECT_THROW(fidelity_cfg(1, {NoiseKind::Depolarizing, 0.2}), InvalidArgument);
}

TEST(RunFiltration, no_ancilla_baseline) {
    for (double q : {0.0, 0.3, 0.9}) {
        const auto cfg = fidelity_cfg(0, {NoiseKind::Dephasing, q});
        const auto out = run_filtration(cfg, ParamCircuit(1, {}), pipeline_input(cfg));
        EXPECT_NEAR(out.probability, 1.0, 1e-15);
        EXPECT_NEAR(fidelity(out), (1 + q) / 2, 1e-15);
    }
}

TEST(RunFiltration, one_ancilla_ansatz_dephasing) {
    const auto cfg = fidelity_cfg(1, {NoiseKind::Dephasing, 0.8});
    const auto out = run_filtration(cfg, ansatz_unitary(1, NoiseKind::Dephasing), pipeline_input(cfg));
    EXPECT_NEAR(out.probability, 0.82, 1e-14);
    EXPECT_NEAR(fidelity(out), 0.5 + 0.8 / 1.64, 1e-14);
    EXPECT_NEAR(fidelity(out), 0.987805, 1e-6);
    EXPECT_EQ(out.probability, out.raw_trace);
    EXPECT_NEAR(out.state.trace(), 1.0, 1e-14);
}

TEST(RunFiltration, noiseless_channel_returns_input) {
    auto rng = make_rng(40);
    const auto target = phi_plus().projector();
    for (int n = 0; n <= 3; ++n) {
        for (auto kind : {NoiseKind::Dephasing, NoiseKind::Depolarizing}) {
            const auto cfg = fidelity_cfg(n, {kind, 1.0});
            const ParamCircuit circuit(n + 1, random_params(circuit_param_count(n + 1), rng));
            const auto out = run_filtration(cfg, circuit, pipeline_input(cfg));
            EXPECT_NEAR(out.probability, 1.0, 1e-12);
            EXPECT_LT(max_abs(out.state.mat() - target), 1e-12);
        }
    }
}

TEST(RunFiltration, raw_trace_two_ways) {
    auto rng = make_rng(41);
    for (int n = 1; n <= 3; ++n) {
        const auto cfg = fidelity_cfg(n, {NoiseKind::Depolarizing, 0.6});
        const ComplexMatrix u = random_unitary(Eigen::Index{2} << n, rng);
        const auto out = run_filtration(cfg, u, pipeline_input(cfg));
        const ComplexMatrix full = propagate(cfg, u, pipeline_input(cfg).projector());
        // Projector I_RS ⊗ |0…0⟩⟨0…0| picks every 2^n-th diagonal entry.
        double projected = 0.0;
        const Eigen::Index stride = Eigen::Index{1} << n;
        for (Eigen::Index i = 0; i < full.rows(); i += stride) projected += full(i, i).real();
        EXPECT_NEAR(out.raw_trace, projected, 1e-13);
    }
}

TEST(RunFiltration, linear_in_input) {
    auto rng = make_rng(42);
    const auto cfg = fidelity_cfg(2, {NoiseKind::Dephasing, 0.4}, RobustnessSpec{0.8, 0.9});
    const ComplexMatrix u = random_unitary(8, rng);
    const ComplexMatrix r1 = qfilt::testing::random_density(4, rng);
    const ComplexMatrix r2 = qfilt::testing::random_density(4, rng);
    const double a = 0.3;
    const ComplexMatrix mixed = propagate(cfg, u, a * r1 + (1 - a) * r2);
    const ComplexMatrix combo = a * propagate(cfg, u, r1) + (1 - a) * propagate(cfg, u, r2);
    EXPECT_LT(max_abs(mixed - combo), 1e-12);
}

TEST(RunFiltration, fidelity_monotone_in_noise) {
    auto rng = make_rng(43);
    for (auto kind : {NoiseKind::Dephasing, NoiseKind::Depolarizing}) {
        std::vector<ComplexMatrix> encodings{ansatz_unitary(1, kind), random_unitary(4, rng)};
        for (const auto& u : encodings) {
            double previous = 2.0;
            for (int i = 0; i < 10; ++i) {
                const double lo = NoiseSpec::q_min(kind);
                const double q = 1.0 - (1.0 - lo) * i / 9.0;
                const auto cfg = fidelity_cfg(1, {kind, q});
                const double f = fidelity(run_filtration(cfg, u, pipeline_input(cfg)));
                EXPECT_LE(f, previous + 1e-9) << to_string(kind) << " q=" << q;
                previous = f;
            }
        }
    }
}

TEST(RunFiltration, post_selection_impossible) {
    const auto cfg = fidelity_cfg(1, {NoiseKind::Dephasing, 1.0});
    const PureState excited = phi_plus().tensor(PureState::basis("1"));
    try {
        run_filtration(cfg, ComplexMatrix::Identity(4, 4), excited);
        FAIL() << "expected PostSelectionImpossible";
    } catch (const PostSelectionImpossible& e) {
        EXPECT_LT(e.raw_trace(), 1e-15);
    }
}

TEST(RunFiltration, argument_errors) {
    const auto cfg = fidelity_cfg(1, {NoiseKind::Dephasing, 0.5});
    EXPECT_THROW(run_filtration(cfg, ComplexMatrix::Identity(8, 8), pipeline_input(cfg)), InvalidArgument);
    EXPECT_THROW(run_filtration(cfg, ComplexMatrix::Identity(4, 4), phi_plus()), InvalidArgument);
}

TEST(RunFiltration, robustness_endpoints_match_ideal) {
    for (auto kind : {NoiseKind::Dephasing, NoiseKind::Depolarizing}) {
        const NoiseSpec noise{kind, 0.7};
        for (int n = 1; n <= 2; ++n) {
            const ComplexMatrix u = ansatz_unitary(n, kind);
            const auto ideal = run_filtration(fidelity_cfg(n, noise), u, pipeline_input(fidelity_cfg(n, noise)));
            const auto noisy = run_filtration(fidelity_cfg(n, noise, RobustnessSpec{1.0, 1.0}), u,
                                              pipeline_input(fidelity_cfg(n, noise)));
            EXPECT_LT(max_abs(ideal.state.mat() - noisy.state.mat()), 1e-14);
            EXPECT_NEAR(ideal.probability, noisy.probability, 1e-14);
        }
    }
}

TEST(RunFiltration, full_crosstalk_single_ancilla) {
    // s = 0 swaps signal and ancilla before encoding and after decoding; with a
    // noiseless channel the swaps cancel.
    const auto cfg = fidelity_cfg(1, {NoiseKind::Depolarizing, 1.0}, RobustnessSpec{std::nullopt, 0.0});
    auto rng = make_rng(44);
    const auto out = run_filtration(cfg, random_unitary(4, rng), pipeline_input(cfg));
    EXPECT_NEAR(out.probability, 1.0, 1e-13);
    EXPECT_NEAR(fidelity(out), 1.0, 1e-13);
}

TEST(DerivativePipeline, noiseless_single_qubit) {
    const auto cfg = PipelineConfig::for_task(Task::QFI, 0, {NoiseKind::Depolarizing, 1.0});
    const auto d = derivative_pipeline(cfg, ParamCircuit(1, {}), 0.4);
    EXPECT_NEAR(qfi(d.rho, d.drho), 1.0, 1e-12);
    EXPECT_NEAR(d.drho.trace().real(), 0.0, 1e-15);
}

TEST(DerivativePipeline, matches_finite_differences) {
    auto rng = make_rng(45);
    const double h = 1e-6;
    for (int n = 0; n <= 2; ++n) {
        for (auto kind : {NoiseKind::Dephasing, NoiseKind::Depolarizing}) {
            const auto cfg = PipelineConfig::for_task(Task::QFI, n, {kind, 0.65}, RobustnessSpec{0.9, 0.8});
            const ComplexMatrix u = random_unitary(Eigen::Index{2} << n, rng);
            const double theta = qfilt::testing::uniform(rng, 0.0, 3.0);
            const auto d = derivative_pipeline(cfg, u, theta);
            const ComplexMatrix fd =
                (derivative_pipeline(cfg, u, theta + h).rho.mat() - derivative_pipeline(cfg, u, theta - h).rho.mat()) /
                (2 * h);
            EXPECT_LT(max_abs(d.drho - fd), 1e-8) << "n=" << n;
        }
    }
}

TEST(DerivativePipeline, depolarized_off_diagonal) {
    const double q = 0.55;
    const auto cfg = PipelineConfig::for_task(Task::QFI, 0, {NoiseKind::Depolarizing, q});
    const auto d = derivative_pipeline(cfg, ParamCircuit(1, {}), 0.0);
    EXPECT_NEAR(std::abs(d.drho(0, 1)), q / 2, 1e-15);
    EXPECT_NEAR(std::abs(d.drho(1, 0)), q / 2, 1e-15);
}

TEST(DerivativePipeline, requires_qfi_task) {
    const auto cfg = fidelity_cfg(0, {NoiseKind::Dephasing, 0.5});
    EXPECT_THROW(derivative_pipeline(cfg, ParamCircuit(1, {}), 0.0), InvalidArgument);
}
