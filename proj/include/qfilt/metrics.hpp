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
#include <span>
#include <string>

#include "qfilt/channels.hpp"
#include "qfilt/filtration.hpp"
#include "qfilt/qstate.hpp"

namespace qfilt {

/// CHSH measurement angles, indexed [party][setting]: party 0 is Alice
/// (the reference), party 1 is Bob (the signal).
struct MeasurementSettings {
    std::array<std::array<double, 2>, 2> theta{};
    std::array<std::array<double, 2>, 2> phi{};

    /// Flat layout: θ00, θ01, θ10, θ11, φ00, φ01, φ10, φ11.
    static MeasurementSettings from_flat(std::span<const double> angles);
    std::array<double, 8> flat() const;
};

enum class MetricKind { Fidelity, CHSHFixed, CHSHOpt, QFI };

std::string to_string(MetricKind kind);

struct MetricValue {
    double value;
    double probability;
    MetricKind kind;
};

/// ⟨Φ+|ρ|Φ+⟩ of the post-selected reference+signal state.
MetricValue entanglement_fidelity(const FiltrationOutcome& outcome);

/// [[cosθ, e^{-iφ} sinθ], [e^{iφ} sinθ, -cosθ]].
ComplexMatrix chsh_observable(double theta, double phi);

/// |Σ_{x,y} (-1)^{xy} Tr(M_{0,x} ⊗ M_{1,y} ρ)|.
double chsh_value(const ComplexMatrix& rho_ab, const MeasurementSettings& settings);
double chsh_value(const DensityMatrix& rho_ab, const MeasurementSettings& settings);

/// Settings that are optimal without filtration: the Tsirelson settings for
/// depolarizing noise, Bob's polar angle arctan q_φ for dephasing noise.
MeasurementSettings fixed_settings(const NoiseSpec& noise);

/// Largest CHSH value over all settings, 2·sqrt(t1² + t2²) from the two
/// largest singular values of the correlation matrix T_ij = Tr(σ_i⊗σ_j ρ).
double chsh_max_over_settings(const ComplexMatrix& rho_ab);

inline constexpr double kSldCutoff = 1e-12;

/// Symmetric logarithmic derivative, restricted to eigenvalue pairs with
/// λ_l + λ_m > 1e-12.
ComplexMatrix symmetric_log_derivative(const ComplexMatrix& rho, const ComplexMatrix& drho);

/// Tr(L² ρ). Throws NonHermitian on non-Hermitian inputs.
double qfi(const ComplexMatrix& rho, const ComplexMatrix& drho);
double qfi(const DensityMatrix& rho, const ComplexMatrix& drho);

}  // namespace qfilt
