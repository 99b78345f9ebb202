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

#include "telefid/measures.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace telefid {

namespace {

const double kSqrt5 = std::sqrt(5.0);

constexpr double kRadicandSlack = 1e-12;

}  // namespace

std::string_view to_string(ChannelClass c) {
    switch (c) {
        case ChannelClass::separable:
            return "separable";
        case ChannelClass::entangled_lhv_band_below:
            return "entangled_LHV_band_below";
        case ChannelClass::lhv_unknown_band:
            return "LHV_unknown_band";
        case ChannelClass::chsh_violating:
            return "CHSH_violating";
    }
    return "unknown";
}

double average_fidelity(const ProtocolConfig &config, const WernerChannel &channel) {
    double trace_sum = 0.0;
    for (const Rotation3 &r : config.rotations()) {
        trace_sum += r.trace();
    }
    return 0.5 + channel.p() / 24.0 * trace_sum;
}

FidelityBounds f_bounds(const WernerChannel &channel) {
    const double p = channel.p();
    return {(1.0 - p / 3.0) / 2.0, (1.0 + p) / 2.0};
}

double delta(const Rotation3 &r) { return (3.0 - r.trace()) / (6.0 * kSqrt5); }

double fourth_moment(const Rotation3 &a, const Rotation3 &b) {
    const Eigen::Matrix3d &ma = a.matrix();
    const Eigen::Matrix3d &mb = b.matrix();
    return (ma.trace() * mb.trace() + (ma * mb.transpose()).trace() + (ma * mb).trace()) / 15.0;
}

double covariance_element(const Rotation3 &a, const Rotation3 &b) {
    // Same value as (fourth_moment - Tr A Tr B / 9) / 4, rewritten in terms of
    // 3 - Tr A = |A - 1|^2 / 2 and friends so that nothing cancels near A = B = 1.
    const Eigen::Matrix3d &ma = a.matrix();
    const Eigen::Matrix3d &mb = b.matrix();
    const Eigen::Matrix3d id = Eigen::Matrix3d::Identity();
    const double da = (ma - id).squaredNorm() / 2.0;
    const double db = (mb - id).squaredNorm() / 2.0;
    const double dab = (ma - mb).squaredNorm() / 2.0;
    // Both orders, so that c(a, b) == c(b, a) bit for bit.
    const double dab_t = ((ma.transpose() - mb).squaredNorm() + (mb.transpose() - ma).squaredNorm()) / 4.0;
    return (6.0 * (da + db) - 2.0 * da * db - 3.0 * (dab + dab_t)) / 180.0;
}

Eigen::Matrix4d covariance_matrix(const ProtocolConfig &config, CovarianceFn covariance) {
    const auto &r = config.rotations();
    Eigen::Matrix4d c;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            c(a, b) = covariance(r[a], r[b]);
        }
    }
    return c;
}

double fidelity_deviation(const ProtocolConfig &config, const WernerChannel &channel, CovarianceFn covariance) {
    double radicand = covariance_matrix(config, covariance).sum();
    if (radicand < -kRadicandSlack) {
        throw std::logic_error("covariance sum is negative beyond rounding; the covariance formula is inconsistent");
    }
    radicand = std::max(radicand, 0.0);
    return channel.p() / 4.0 * std::sqrt(radicand);
}

DeviationBounds d_bounds(const ProtocolConfig &config, const WernerChannel &channel) {
    std::array<double, 4> d;
    for (std::size_t a = 0; a < 4; ++a) {
        d[a] = delta(config.rotations()[a]);
    }
    double squares = 0.0, cross = 0.0, sum = 0.0;
    for (std::size_t a = 0; a < 4; ++a) {
        squares += d[a] * d[a];
        sum += d[a];
        for (std::size_t b = 0; b < 4; ++b) {
            if (a != b) {
                cross += d[a] * d[b];
            }
        }
    }
    const double q = channel.p() / 4.0;
    return {q * std::sqrt(std::max(squares - cross / 2.0, 0.0)), q * sum};
}

PerformancePoint performance(const ProtocolConfig &config, const WernerChannel &channel) {
    return {average_fidelity(config, channel), fidelity_deviation(config, channel)};
}

RegionTriangle region_triangle(const WernerChannel &channel) {
    const FidelityBounds f = f_bounds(channel);
    const double d_max = 2.0 * channel.p() / (3.0 * kSqrt5);
    return {channel.p(), {{{f.max, 0.0}, {f.min, 0.0}, {f.min, d_max}}}};
}

double half_circle_bound(double fidelity) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
        throw std::invalid_argument("average fidelity must lie in [0, 1]");
    }
    return std::sqrt(fidelity * (1.0 - fidelity));
}

ChannelClass classify_channel(const WernerChannel &channel) {
    const double p = channel.p();
    if (p <= thresholds::kSeparability) {
        return ChannelClass::separable;
    }
    if (p > thresholds::kChsh) {
        return ChannelClass::chsh_violating;
    }
    if (p >= thresholds::kLhvLower && p <= thresholds::kLhvUpper) {
        return ChannelClass::lhv_unknown_band;
    }
    return ChannelClass::entangled_lhv_band_below;
}

Eigen::Matrix<double, 9, 9> dyad_operator() {
    Eigen::Matrix<double, 9, 1> phi = Eigen::Matrix<double, 9, 1>::Zero();
    for (int i = 0; i < 3; ++i) {
        phi[3 * i + i] = 1.0;
    }
    return phi * phi.transpose();
}

Eigen::Matrix<double, 9, 9> swap_operator() {
    Eigen::Matrix<double, 9, 9> p = Eigen::Matrix<double, 9, 9>::Zero();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            p(3 * j + i, 3 * i + j) = 1.0;
        }
    }
    return p;
}

SchurPairCoefficients schur_pair_coefficients(const Eigen::Matrix<double, 9, 9> &x) {
    constexpr double r = 3.0;
    const double t = x.trace();
    const double td = (x * dyad_operator()).trace();
    const double tp = (x * swap_operator()).trace();
    const double norm = r * (r - 1.0) * (r + 2.0);
    return {
        ((r + 1.0) * t - td - tp) / norm,
        (-t + (r + 1.0) * td - tp) / norm,
        (-t - td + (r + 1.0) * tp) / norm,
    };
}

double fourth_moment_via_twirl(const Rotation3 &a, const Rotation3 &b) {
    Eigen::Matrix<double, 9, 9> x;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            x.block<3, 3>(3 * i, 3 * j) = a.matrix()(i, j) * b.matrix();
        }
    }
    const SchurPairCoefficients s = schur_pair_coefficients(x);
    // (e (x) e)^T D (e (x) e) = (e . e)^2 = 1 and P (e (x) e) = e (x) e.
    return s.a + s.b + s.c;
}

}  // namespace telefid
