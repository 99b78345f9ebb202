// Copyright 2026 The telefid Authors
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

// Reference computations used only by the tests. Nothing here calls the closed
// forms it is used to check.

#ifndef TELEFID_TESTS_ORACLES_H
#define TELEFID_TESTS_ORACLES_H

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "telefid/qubit_algebra.h"

namespace telefid::oracle {

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
inline std::vector<std::pair<double, double>> gauss_legendre(int n) {
    std::vector<std::pair<double, double>> out;
    for (int i = 1; i <= n; ++i) {
        double x = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        out.emplace_back(x, 2.0 / ((1.0 - x * x) * dp * dp));
    }
    return out;
}

/// Normalized surface average over the unit sphere, Gauss-Legendre in z times
/// the trapezoid rule in azimuth. Exact for polynomials of total degree < 2 * n_z
/// when n_azimuth exceeds the degree.
inline double sphere_average(const std::function<double(const Eigen::Vector3d &)> &fn, int n_z = 12,
                             int n_azimuth = 24) {
    double total = 0.0;
    for (const auto &[z, w] : gauss_legendre(n_z)) {
        const double r = std::sqrt(1.0 - z * z);
        for (int k = 0; k < n_azimuth; ++k) {
            const double az = 2.0 * std::numbers::pi * k / n_azimuth;
            total += w * fn(Eigen::Vector3d(r * std::cos(az), r * std::sin(az), z));
        }
    }
    return total / (2.0 * n_azimuth);
}

/// Rodrigues formula for an active rotation by `angle` about a unit axis.
inline Eigen::Matrix3d rotation_matrix(const Eigen::Vector3d &axis, double angle) {
    const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
    const double x = axis.x(), y = axis.y(), z = axis.z();
    Eigen::Matrix3d m;
    m << t * x * x + c, t * x * y - s * z, t * x * z + s * y,  //
        t * x * y + s * z, t * y * y + c, t * y * z - s * x,   //
        t * x * z - s * y, t * y * z + s * x, t * z * z + c;
    return m;
}

/// (cos(theta/2), e^{i azimuth} sin(theta/2)) from spherical coordinates.
inline Eigen::Vector2cd ket(const Eigen::Vector3d &v) {
    const double theta = std::acos(std::clamp(v.z(), -1.0, 1.0));
    const double azimuth = std::atan2(v.y(), v.x());
    return {std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), azimuth)};
}

/// Per-input fidelity straight from the composite operators: (p/4) sum |<phi|X|phi>|^2 + (1 - p)/2.
inline double fidelity(const Eigen::Vector3d &v, const UnitaryQuad &x, double p) {
    const Eigen::Vector2cd phi = ket(v);
    double sum = 0.0;
    for (const Mat2 &xa : x) {
        sum += std::norm(phi.dot(xa * phi));
    }
    return p / 4.0 * sum + (1.0 - p) / 2.0;
}

/// Haar mean and population standard deviation of the per-input fidelity by quadrature.
inline std::pair<double, double> fidelity_moments(const UnitaryQuad &x, double p) {
    const double m1 = sphere_average([&](const Eigen::Vector3d &v) { return fidelity(v, x, p); });
    const double m2 = sphere_average([&](const Eigen::Vector3d &v) {
        const double f = fidelity(v, x, p);
        return f * f;
    });
    return {m1, std::sqrt(std::max(m2 - m1 * m1, 0.0))};
}

/// Three-qubit teleportation written as 8x8 projector sandwiches followed by a
/// partial trace over qubits 1 and 2.
inline Mat2 teleport_by_projectors(const Eigen::Vector3d &input, const UnitaryQuad &u, const UnitaryQuad &v,
                                   double p) {
    using Mat8c = Eigen::Matrix<std::complex<double>, 8, 8>;
    const Eigen::Vector2cd phi = ket(input);
    Eigen::Vector4cd psi0 = Eigen::Vector4cd::Zero();
    psi0[0] = psi0[3] = 1.0 / std::sqrt(2.0);
    const Eigen::Matrix4cd werner = p * psi0 * psi0.adjoint() + (1.0 - p) / 4.0 * Eigen::Matrix4cd::Identity();

    Mat8c rho = Mat8c::Zero();
    const Eigen::Matrix2cd in = phi * phi.adjoint();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) rho(4 * i + k, 4 * j + l) = in(i, j) * werner(k, l);

    Mat2 out = Mat2::Zero();
    for (int a = 0; a < 4; ++a) {
        // (U (x) 1)|Psi_0> with the first qubit most significant.
        Eigen::Vector4cd bell = Eigen::Vector4cd::Zero();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) bell[2 * i + k] += u[a](i, j) * psi0[2 * j + k];
        const Eigen::Matrix4cd proj4 = bell * bell.adjoint();
        Mat8c proj = Mat8c::Zero(), corr = Mat8c::Zero();
        for (int r = 0; r < 4; ++r)
            for (int s = 0; s < 4; ++s)
                for (int b = 0; b < 2; ++b) {
                    proj(2 * r + b, 2 * s + b) = proj4(r, s);
                    if (r == s)
                        for (int c = 0; c < 2; ++c) corr(2 * r + b, 2 * s + c) = v[a](b, c);
                }
        const Mat8c branch = corr * proj * rho * proj * corr.adjoint();
        for (int r = 0; r < 4; ++r)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) out(b, c) += branch(2 * r + b, 2 * r + c);
    }
    return out;
}

}  // namespace telefid::oracle

#endif  // TELEFID_TESTS_ORACLES_H
