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

#include "qfilt/metrics.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "qfilt/errors.hpp"

namespace qfilt {

MeasurementSettings MeasurementSettings::from_flat(std::span<const double> angles) {
    if (angles.size() != 8) {
        throw InvalidArgument("CHSH settings need 8 angles");
    }
    MeasurementSettings s;
    for (size_t i = 0; i < 2; ++i) {
        for (size_t j = 0; j < 2; ++j) {
            s.theta[i][j] = angles[2 * i + j];
            s.phi[i][j] = angles[4 + 2 * i + j];
        }
    }
    return s;
}

std::array<double, 8> MeasurementSettings::flat() const {
    return {theta[0][0], theta[0][1], theta[1][0], theta[1][1], phi[0][0], phi[0][1], phi[1][0], phi[1][1]};
}

std::string to_string(MetricKind kind) {
    switch (kind) {
        case MetricKind::Fidelity:
            return "fidelity";
        case MetricKind::CHSHFixed:
            return "chsh-fixed";
        case MetricKind::CHSHOpt:
            return "chsh-opt";
        case MetricKind::QFI:
            return "qfi";
    }
    return "?";
}

MetricValue entanglement_fidelity(const FiltrationOutcome& outcome) {
    if (outcome.state.num_qubits() != 2) {
        throw InvalidArgument("entanglement fidelity needs a two-qubit state");
    }
    const double f = expectation(outcome.state.mat(), phi_plus().vec());
    return {f, outcome.probability, MetricKind::Fidelity};
}

ComplexMatrix chsh_observable(double theta, double phi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    ComplexMatrix m(2, 2);
    m << c, std::polar(s, -phi), std::polar(s, phi), -c;
    return m;
}

double chsh_value(const ComplexMatrix& rho_ab, const MeasurementSettings& settings) {
    if (rho_ab.rows() != 4 || rho_ab.cols() != 4) {
        throw InvalidArgument("CHSH value needs a two-qubit state");
    }
    Complex total = 0.0;
    for (size_t x = 0; x < 2; ++x) {
        const ComplexMatrix a = chsh_observable(settings.theta[0][x], settings.phi[0][x]);
        for (size_t y = 0; y < 2; ++y) {
            const ComplexMatrix b = chsh_observable(settings.theta[1][y], settings.phi[1][y]);
            const double sign = (x * y) % 2 == 0 ? 1.0 : -1.0;
            total += sign * (tensor(a, b) * rho_ab).trace();
        }
    }
    return std::abs(total.real());
}

double chsh_value(const DensityMatrix& rho_ab, const MeasurementSettings& settings) {
    return chsh_value(rho_ab.mat(), settings);
}

MeasurementSettings fixed_settings(const NoiseSpec& noise) {
    noise.validate();
    const double bob = noise.kind == NoiseKind::Depolarizing ? M_PI / 4 : std::atan(noise.q);
    MeasurementSettings s;
    s.theta = {{{0.0, M_PI / 2}, {bob, bob}}};
    s.phi = {{{0.0, 0.0}, {0.0, M_PI}}};
    return s;
}

double chsh_max_over_settings(const ComplexMatrix& rho_ab) {
    if (rho_ab.rows() != 4 || rho_ab.cols() != 4) {
        throw InvalidArgument("CHSH value needs a two-qubit state");
    }
    const ComplexMatrix p[3] = {pauli::x(), pauli::y(), pauli::z()};
    Eigen::Matrix3d t;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            t(i, j) = (tensor(p[i], p[j]) * rho_ab).trace().real();
        }
    }
    const Eigen::Vector3d sv = Eigen::JacobiSVD<Eigen::Matrix3d>(t).singularValues();
    return 2.0 * std::sqrt(sv(0) * sv(0) + sv(1) * sv(1));
}

ComplexMatrix symmetric_log_derivative(const ComplexMatrix& rho, const ComplexMatrix& drho) {
    if (rho.rows() != drho.rows() || rho.cols() != drho.cols()) {
        throw InvalidArgument("state and derivative shapes differ");
    }
    if (!is_hermitian(drho, kEigTol)) {
        throw NonHermitian("state derivative is not Hermitian");
    }
    const auto eig = eig_hermitian(rho);
    const ComplexMatrix& v = eig.vectors;
    const ComplexMatrix d = v.adjoint() * hermitize(drho) * v;
    const Eigen::Index n = rho.rows();
    ComplexMatrix l = ComplexMatrix::Zero(n, n);
    for (Eigen::Index m = 0; m < n; ++m) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const double denom = eig.values(m) + eig.values(k);
            if (denom > kSldCutoff) {
                l(m, k) = 2.0 * d(m, k) / denom;
            }
        }
    }
    return v * l * v.adjoint();
}

double qfi(const ComplexMatrix& rho, const ComplexMatrix& drho) {
    const ComplexMatrix l = symmetric_log_derivative(rho, drho);
    return (l * l * rho).trace().real();
}

double qfi(const DensityMatrix& rho, const ComplexMatrix& drho) { return qfi(rho.mat(), drho); }

}  // namespace qfilt
