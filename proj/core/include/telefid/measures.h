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

#ifndef TELEFID_MEASURES_H
#define TELEFID_MEASURES_H

#include <array>
#include <numbers>
#include <string_view>

#include "telefid/qubit_algebra.h"
#include "telefid/teleportation.h"

namespace telefid {

/// A strategy's location in the (average fidelity, fidelity deviation) plane.
struct PerformancePoint {
    double fidelity;
    double deviation;
};

struct FidelityBounds {
    double min;
    double max;
};

struct DeviationBounds {
    double lower;
    double upper;
};

/// Triangle of attainable (F, D) points for one noise level. Vertices are
/// ordered (F_max, 0), (F_min, 0), (F_min, D_max).
struct RegionTriangle {
    double p;
    std::array<PerformancePoint, 3> vertices;

    double f_max() const { return vertices[0].fidelity; }
    double f_min() const { return vertices[1].fidelity; }
    double d_max() const { return vertices[2].deviation; }
};

namespace thresholds {
/// Werner states with p <= 1/3 are separable.
inline constexpr double kSeparability = 1.0 / 3.0;
/// CHSH violation requires p > 1/sqrt(2).
inline constexpr double kChsh = std::numbers::sqrt2 / 2.0;
/// Known bracket for the local-hidden-variable threshold 1/K_G(3).
inline constexpr double kLhvLower = 0.6829;
inline constexpr double kLhvUpper = 0.6964;
/// Best average fidelity of any measure-and-prepare scheme.
inline constexpr double kClassicalFidelity = 2.0 / 3.0;

static_assert(kSeparability < kLhvLower && kLhvLower < kLhvUpper && kLhvUpper < kChsh);
}  // namespace thresholds

enum class ChannelClass {
    separable,
    entangled_lhv_band_below,
    lhv_unknown_band,
    chsh_violating,
};

std::string_view to_string(ChannelClass c);

/// F = 1/2 + (p/24) sum_alpha Tr(R_alpha).
double average_fidelity(const ProtocolConfig &config, const WernerChannel &channel);

/// ((1 - p/3)/2, (1 + p)/2).
FidelityBounds f_bounds(const WernerChannel &channel);

/// Standard deviation of xi over Haar inputs for a composite rotation R,
/// (3 - Tr R) / (6 sqrt 5).
double delta(const Rotation3 &r);

/// Haar average of (v^T A v)(v^T B v) over the unit sphere in R^3:
/// [Tr A Tr B + Tr(A B^T) + Tr(A B)] / 15.
double fourth_moment(const Rotation3 &a, const Rotation3 &b);

/// Covariance of xi_a and xi_b over Haar inputs,
/// (1/4) [fourth_moment(a, b) - Tr A Tr B / 9], evaluated in a form that stays
/// accurate when both rotations are close to the identity.
double covariance_element(const Rotation3 &a, const Rotation3 &b);

using CovarianceFn = double (*)(const Rotation3 &, const Rotation3 &);

/// The 4x4 covariance matrix c_ab of the xi_alpha.
Eigen::Matrix4d covariance_matrix(const ProtocolConfig &config, CovarianceFn covariance = covariance_element);

/// D = (p/4) sqrt(sum_ab c_ab). Radicands in [-1e-12, 0) are clamped to zero;
/// anything more negative throws std::logic_error since it cannot come from a
/// genuine covariance matrix.
double fidelity_deviation(const ProtocolConfig &config, const WernerChannel &channel,
                          CovarianceFn covariance = covariance_element);

/// Bounds on D from the pairwise covariance bracket -d_a d_b / 2 <= c_ab <= d_a d_b.
/// The upper bound equals (F_max - F) / sqrt 5.
DeviationBounds d_bounds(const ProtocolConfig &config, const WernerChannel &channel);

PerformancePoint performance(const ProtocolConfig &config, const WernerChannel &channel);

RegionTriangle region_triangle(const WernerChannel &channel);

/// sqrt(F (1 - F)), the ceiling on D for any random variable in [0, 1] with mean F.
/// Throws std::invalid_argument for F outside [0, 1].
double half_circle_bound(double fidelity);

/// Ties follow strict inequalities: p = 1/3 is separable, p = 1/sqrt 2 does not violate CHSH.
ChannelClass classify_channel(const WernerChannel &channel);

/// Coefficients of the twirl over SO(r) acting on R^r (x) R^r,
///   int dO (O^T (x) O^T) X (O (x) O) = a 1 + b D + c P,
/// with D the projector-like dyad (sum_i e_i (x) e_i)(sum_j e_j (x) e_j)^T and P the swap.
struct SchurPairCoefficients {
    double a;
    double b;
    double c;
};

/// Dyad and swap operators on R^3 (x) R^3, index 3 * i + j for e_i (x) e_j.
Eigen::Matrix<double, 9, 9> dyad_operator();
Eigen::Matrix<double, 9, 9> swap_operator();

SchurPairCoefficients schur_pair_coefficients(const Eigen::Matrix<double, 9, 9> &x);

/// fourth_moment evaluated through the twirl: X = A (x) B, contracted with a
/// fixed unit vector e (x) e, which gives a + b + c.
double fourth_moment_via_twirl(const Rotation3 &a, const Rotation3 &b);

}  // namespace telefid

#endif  // TELEFID_MEASURES_H
