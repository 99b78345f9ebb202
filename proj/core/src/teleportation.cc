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

#include "telefid/teleportation.h"

#include <cmath>

namespace telefid {

namespace {

std::array<Rotation3, 4> rotations_of(const UnitaryQuad &x) {
    return {su2_to_so3(x[0]), su2_to_so3(x[1]), su2_to_so3(x[2]), su2_to_so3(x[3])};
}

UnitaryQuad composite_of(const UnitaryQuad &u, const UnitaryQuad &v) {
    UnitaryQuad x;
    for (std::size_t a = 0; a < 4; ++a) {
        x[a] = v[a] * u[a].adjoint();
    }
    return x;
}

const UnitaryQuad &checked(const UnitaryQuad &u, const UnitaryQuad &v) {
    if (!validate_measurement(u)) {
        throw ConfigError("measurement unitaries do not form an orthonormal Bell basis");
    }
    for (const Mat2 &va : v) {
        if (!is_unitary(va)) {
            throw ConfigError("correction operators must be unitary");
        }
    }
    return u;
}

}  // namespace

WernerChannel::WernerChannel(double p) : p_(p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("Werner noise parameter must lie in [0, 1]");
    }
}

ProtocolConfig::ProtocolConfig(const UnitaryQuad &measurement, const UnitaryQuad &correction)
    : u_(checked(measurement, correction)),
      v_(correction),
      x_(composite_of(u_, v_)),
      r_(rotations_of(x_)) {}

ProtocolConfig ProtocolConfig::optimal_pauli() { return ProtocolConfig(pauli_quad(), pauli_quad()); }

Mat4 werner_state(const WernerChannel &channel) {
    const Ket4 psi0(1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0));
    const double p = channel.p();
    return p * psi0 * psi0.adjoint() + (1.0 - p) / 4.0 * Mat4::Identity();
}

Mat2 teleport_dense(const BlochVector &input, const ProtocolConfig &config, const WernerChannel &channel) {
    const Mat8 rho = kron(bloch_to_density(input), werner_state(channel));
    const auto basis = bell_basis(config.measurement());
    Mat2 out = Mat2::Zero();
    for (std::size_t a = 0; a < 4; ++a) {
        // <Psi_a| rho |Psi_a> over the (1,2) register; index = 2 * reg + bob.
        Mat2 branch = Mat2::Zero();
        for (int b = 0; b < 2; ++b) {
            for (int bp = 0; bp < 2; ++bp) {
                Complex acc = 0.0;
                for (int r = 0; r < 4; ++r) {
                    for (int rp = 0; rp < 4; ++rp) {
                        acc += std::conj(basis[a][r]) * rho(2 * r + b, 2 * rp + bp) * basis[a][rp];
                    }
                }
                branch(b, bp) = acc;
            }
        }
        const Mat2 &v = config.correction()[a];
        out += v * branch * v.adjoint();
    }
    return out;
}

Mat2 teleport_closed(const BlochVector &input, const ProtocolConfig &config, const WernerChannel &channel) {
    const double p = channel.p();
    const Mat2 rho = bloch_to_density(input);
    Mat2 out = Mat2::Zero();
    for (const Mat2 &x : config.composite()) {
        out += x * rho * x.adjoint();
    }
    return p / 4.0 * out + (1.0 - p) / 2.0 * Mat2::Identity();
}

double xi(const BlochVector &input, const Mat2 &x) {
    const Ket2 phi = bloch_to_ket(input);
    return std::norm(phi.dot(x * phi));
}

double state_fidelity(const BlochVector &input, const ProtocolConfig &config, const WernerChannel &channel) {
    const double p = channel.p();
    double sum = 0.0;
    for (const Mat2 &x : config.composite()) {
        sum += xi(input, x);
    }
    return p / 4.0 * sum + (1.0 - p) / 2.0;
}

}  // namespace telefid
