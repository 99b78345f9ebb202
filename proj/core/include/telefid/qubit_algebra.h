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

#ifndef TELEFID_QUBIT_ALGEBRA_H
#define TELEFID_QUBIT_ALGEBRA_H

#include <array>
#include <complex>
#include <optional>

#include <Eigen/Dense>

namespace telefid {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Mat8 = Eigen::Matrix<Complex, 8, 8>;
using Ket2 = Eigen::Vector2cd;
using Ket4 = Eigen::Vector4cd;
using Vec3 = Eigen::Vector3d;

/// One unitary per Bell-measurement outcome (or per correction).
using UnitaryQuad = std::array<Mat2, 4>;

namespace tol {
/// Structural checks: unitarity, density matrices, rotations.
inline constexpr double kStructural = 1e-10;
/// Identities that hold exactly up to rounding.
inline constexpr double kExact = 1e-12;
/// Comparisons between two numerically derived quantities.
inline constexpr double kDerived = 1e-9;
}  // namespace tol

/// Largest absolute entry, the norm every tolerance in the library refers to.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived> &m) {
    return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived> &m, double tolerance = tol::kStructural) {
    using Plain = typename Derived::PlainObject;
    return max_abs(m.adjoint() * m - Plain::Identity(m.rows(), m.cols())) <= tolerance;
}

/// Unit trace, Hermitian, and positive semidefinite (eigenvalues >= -tolerance).
template <typename Derived>
bool is_density(const Eigen::MatrixBase<Derived> &m, double tolerance = tol::kStructural) {
    using Plain = typename Derived::PlainObject;
    if (std::abs(m.trace() - Complex(1.0, 0.0)) > tolerance) {
        return false;
    }
    if (max_abs(m - m.adjoint()) > tolerance) {
        return false;
    }
    Plain hermitian = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Plain> solver(hermitian, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -tolerance;
}

Mat4 kron(const Mat2 &a, const Mat2 &b);
Mat8 kron(const Mat2 &a, const Mat4 &b);
Mat8 kron(const Mat4 &a, const Mat2 &b);

/// Pauli operator by index: 0 -> identity, 1 -> sigma_x, 2 -> sigma_y, 3 -> sigma_z.
/// Throws std::invalid_argument for any other index.
Mat2 pauli(int index);

/// The Pauli set (1, sigma_x, sigma_y, sigma_z), the textbook Bell measurement.
UnitaryQuad pauli_quad();

/// Unit vector in R^3 labelling a pure qubit state.
class BlochVector {
  public:
    /// Throws std::invalid_argument unless the norm is 1 within 1e-12.
    BlochVector(double x, double y, double z);
    explicit BlochVector(const Vec3 &v);

    /// Rescales a nonzero vector onto the sphere.
    static BlochVector normalized(const Vec3 &v);

    const Vec3 &vec() const { return v_; }
    double x() const { return v_.x(); }
    double y() const { return v_.y(); }
    double z() const { return v_.z(); }

  private:
    Vec3 v_;
};

/// (1 + v.sigma) / 2, a rank-one projector.
Mat2 bloch_to_density(const BlochVector &v);

/// Bloch vector of a qubit density matrix, Tr(rho sigma_j). Not normalized.
Vec3 density_to_bloch(const Mat2 &rho);

/// A state vector whose projector is bloch_to_density(v). The phase convention
/// switches hemispheres at the equator to stay well conditioned.
Ket2 bloch_to_ket(const BlochVector &v);

/// Axis-angle description of an SU(2) element, exp(-i angle/2 axis.sigma).
struct AxisAngle {
    Vec3 axis;
    double angle;
};

/// cos(angle/2) 1 - i sin(angle/2) axis.sigma.
/// Throws std::invalid_argument unless the axis has unit norm within 1e-10.
Mat2 unitary_from_axis_angle(const Vec3 &axis, double angle);
Mat2 unitary_from_axis_angle(const AxisAngle &aa);

/// Inverse of unitary_from_axis_angle up to a global phase. Angle is in
/// [0, 2*pi]; the axis is (0, 0, 1) when the input is proportional to identity.
/// Throws std::invalid_argument for non-unitary input.
AxisAngle axis_angle_from_unitary(const Mat2 &u);

/// Proper rotation of R^3.
class Rotation3 {
  public:
    /// Throws std::invalid_argument unless orthogonal with unit determinant within 1e-10.
    explicit Rotation3(const Eigen::Matrix3d &m);

    static Rotation3 identity() { return Rotation3(Eigen::Matrix3d::Identity()); }

    /// Rodrigues construction, independent of the SU(2) route.
    static Rotation3 from_axis_angle(const Vec3 &axis, double angle);

    const Eigen::Matrix3d &matrix() const { return m_; }
    double trace() const { return m_.trace(); }

    /// Angle in [0, pi] from the trace, clamped before arccos.
    double angle() const;

    /// Unit axis, or nullopt when |sin angle| < 1e-6 and the axis is ill-conditioned.
    std::optional<Vec3> axis() const;

    Rotation3 operator*(const Rotation3 &other) const { return Rotation3(m_ * other.m_, Unchecked{}); }
    Rotation3 transpose() const { return Rotation3(m_.transpose(), Unchecked{}); }

  private:
    struct Unchecked {};
    Rotation3(const Eigen::Matrix3d &m, Unchecked) : m_(m) {}

    Eigen::Matrix3d m_;
};

/// SO(3) image of a qubit unitary: X (v.sigma) X^dag = (R v).sigma.
///
/// Entrywise [R]_jk = Tr(sigma_j X sigma_k X^dag) / 2, which makes the map a
/// homomorphism, R(XY) = R(X) R(Y). Writing the trace with the X's swapped
/// (Tr(X sigma_j X^dag sigma_k) / 2) gives the transpose, which has the same
/// trace and the same quadratic form v^T R v. Global phase of X cancels.
/// Throws std::invalid_argument for non-unitary input.
Rotation3 su2_to_so3(const Mat2 &x);

/// (U_alpha (x) 1)|Psi_0> for |Psi_0> = (|00> + |11>)/sqrt(2).
/// The first tensor factor is the most significant bit of the index.
std::array<Ket4, 4> bell_basis(const UnitaryQuad &u);

/// True iff Tr(U_a^dag U_b)/2 = delta_ab within 1e-10, i.e. the Bell basis built
/// from u is orthonormal (and hence complete).
bool validate_measurement(const UnitaryQuad &u);

}  // namespace telefid

#endif  // TELEFID_QUBIT_ALGEBRA_H
