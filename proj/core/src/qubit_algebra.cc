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

#include "telefid/qubit_algebra.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace telefid {

namespace {

constexpr Complex kI(0.0, 1.0);

template <typename A, typename B, typename Out>
Out kron_impl(const A &a, const B &b) {
    Out out;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace

Mat4 kron(const Mat2 &a, const Mat2 &b) { return kron_impl<Mat2, Mat2, Mat4>(a, b); }
Mat8 kron(const Mat2 &a, const Mat4 &b) { return kron_impl<Mat2, Mat4, Mat8>(a, b); }
Mat8 kron(const Mat4 &a, const Mat2 &b) { return kron_impl<Mat4, Mat2, Mat8>(a, b); }

Mat2 pauli(int index) {
    Mat2 m;
    switch (index) {
        case 0:
            m << 1, 0, 0, 1;
            break;
        case 1:
            m << 0, 1, 1, 0;
            break;
        case 2:
            m << 0, -kI, kI, 0;
            break;
        case 3:
            m << 1, 0, 0, -1;
            break;
        default:
            throw std::invalid_argument("pauli index must be in 0..3, got " + std::to_string(index));
    }
    return m;
}

UnitaryQuad pauli_quad() { return {pauli(0), pauli(1), pauli(2), pauli(3)}; }

BlochVector::BlochVector(double x, double y, double z) : BlochVector(Vec3(x, y, z)) {}

BlochVector::BlochVector(const Vec3 &v) : v_(v) {
    if (!std::isfinite(v.norm()) || std::abs(v.norm() - 1.0) > tol::kExact) {
        throw std::invalid_argument("Bloch vector of a pure state must have unit norm");
    }
}

BlochVector BlochVector::normalized(const Vec3 &v) {
    double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw std::invalid_argument("cannot normalize a zero or non-finite Bloch vector");
    }
    return BlochVector(v / n);
}

Mat2 bloch_to_density(const BlochVector &v) {
    Mat2 rho = pauli(0);
    for (int j = 0; j < 3; ++j) {
        rho += v.vec()[j] * pauli(j + 1);
    }
    return rho / 2.0;
}

Vec3 density_to_bloch(const Mat2 &rho) {
    Vec3 v;
    for (int j = 0; j < 3; ++j) {
        v[j] = (rho * pauli(j + 1)).trace().real();
    }
    return v;
}

Ket2 bloch_to_ket(const BlochVector &v) {
    const double x = v.x(), y = v.y(), z = v.z();
    Ket2 ket;
    if (z >= 0.0) {
        ket << std::sqrt((1.0 + z) / 2.0), Complex(x, y) / std::sqrt(2.0 * (1.0 + z));
    } else {
        ket << Complex(x, -y) / std::sqrt(2.0 * (1.0 - z)), std::sqrt((1.0 - z) / 2.0);
    }
    return ket;
}

Mat2 unitary_from_axis_angle(const Vec3 &axis, double angle) {
    if (!std::isfinite(angle) || std::abs(axis.norm() - 1.0) > tol::kStructural) {
        throw std::invalid_argument("rotation axis must be a unit vector and the angle finite");
    }
    Mat2 n_sigma = axis.x() * pauli(1) + axis.y() * pauli(2) + axis.z() * pauli(3);
    return std::cos(angle / 2.0) * pauli(0) - kI * std::sin(angle / 2.0) * n_sigma;
}

Mat2 unitary_from_axis_angle(const AxisAngle &aa) { return unitary_from_axis_angle(aa.axis, aa.angle); }

AxisAngle axis_angle_from_unitary(const Mat2 &u) {
    if (!is_unitary(u)) {
        throw std::invalid_argument("axis_angle_from_unitary requires a unitary matrix");
    }
    const double phase = std::arg(u.determinant()) / 2.0;
    const Mat2 special = u * std::polar(1.0, -phase);
    const double a = special.trace().real() / 2.0;
    Vec3 b;
    for (int j = 0; j < 3; ++j) {
        b[j] = (kI * (special * pauli(j + 1)).trace()).real() / 2.0;
    }
    const double s = b.norm();
    if (s == 0.0) {
        return {Vec3::UnitZ(), a >= 0.0 ? 0.0 : 2.0 * M_PI};
    }
    return {b / s, 2.0 * std::atan2(s, a)};
}

Rotation3::Rotation3(const Eigen::Matrix3d &m) : m_(m) {
    if (max_abs(m.transpose() * m - Eigen::Matrix3d::Identity()) > tol::kStructural ||
        std::abs(m.determinant() - 1.0) > tol::kStructural) {
        throw std::invalid_argument("matrix is not a proper rotation");
    }
}

Rotation3 Rotation3::from_axis_angle(const Vec3 &axis, double angle) {
    if (std::abs(axis.norm() - 1.0) > tol::kStructural) {
        throw std::invalid_argument("rotation axis must be a unit vector");
    }
    Eigen::Matrix3d k;
    k << 0, -axis.z(), axis.y(), axis.z(), 0, -axis.x(), -axis.y(), axis.x(), 0;
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * k * k;
    return Rotation3(m);
}

double Rotation3::angle() const {
    return std::acos(std::clamp((trace() - 1.0) / 2.0, -1.0, 1.0));
}

std::optional<Vec3> Rotation3::axis() const {
    const double s = std::sin(angle());
    if (std::abs(s) < 1e-6) {
        return std::nullopt;
    }
    Vec3 n(m_(2, 1) - m_(1, 2), m_(0, 2) - m_(2, 0), m_(1, 0) - m_(0, 1));
    return Vec3(n / n.norm());
}

Rotation3 su2_to_so3(const Mat2 &x) {
    if (!is_unitary(x)) {
        throw std::invalid_argument("su2_to_so3 requires a unitary matrix");
    }
    const Mat2 x_dag = x.adjoint();
    Eigen::Matrix3d r;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            r(j, k) = (pauli(j + 1) * x * pauli(k + 1) * x_dag).trace().real() / 2.0;
        }
    }
    return Rotation3(r);
}

std::array<Ket4, 4> bell_basis(const UnitaryQuad &u) {
    Ket4 psi0(1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0));
    std::array<Ket4, 4> basis;
    for (std::size_t a = 0; a < 4; ++a) {
        if (!is_unitary(u[a])) {
            throw std::invalid_argument("bell_basis requires unitary measurement operators");
        }
        basis[a] = kron(u[a], pauli(0)) * psi0;
    }
    return basis;
}

bool validate_measurement(const UnitaryQuad &u) {
    for (std::size_t a = 0; a < 4; ++a) {
        if (!is_unitary(u[a])) {
            return false;
        }
        for (std::size_t b = 0; b < 4; ++b) {
            const Complex overlap = (u[a].adjoint() * u[b]).trace() / 2.0;
            const double expected = a == b ? 1.0 : 0.0;
            if (std::abs(overlap - expected) > tol::kStructural) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace telefid
