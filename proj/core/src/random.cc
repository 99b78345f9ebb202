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

#include "telefid/random.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace telefid {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + (stream + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng stream_rng(std::uint64_t seed, std::uint64_t stream) { return Rng(mix_seed(seed, stream)); }

double uniform01(Rng &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

BlochVector random_bloch(Rng &rng) {
    const double z = 2.0 * uniform01(rng) - 1.0;
    const double azimuth = 2.0 * std::numbers::pi * uniform01(rng);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return BlochVector(r * std::cos(azimuth), r * std::sin(azimuth), z);
}

Mat2 haar_unitary(Rng &rng) {
    std::normal_distribution<double> normal;
    Eigen::Vector4d q;
    do {
        for (int i = 0; i < 4; ++i) {
            q[i] = normal(rng);
        }
    } while (q.norm() < 1e-12);
    q.normalize();
    const Complex i(0.0, 1.0);
    return q[0] * pauli(0) - i * (q[1] * pauli(1) + q[2] * pauli(2) + q[3] * pauli(3));
}

Rotation3 random_rotation(Rng &rng) { return su2_to_so3(haar_unitary(rng)); }

UnitaryQuad random_measurement(Rng &rng) {
    const Mat2 left = haar_unitary(rng);
    const Mat2 right = haar_unitary(rng);
    UnitaryQuad u;
    for (int a = 0; a < 4; ++a) {
        u[a] = left * pauli(a) * right;
    }
    return u;
}

ProtocolConfig random_protocol(Rng &rng) {
    const UnitaryQuad u = random_measurement(rng);
    UnitaryQuad v;
    for (Mat2 &va : v) {
        va = haar_unitary(rng);
    }
    return ProtocolConfig(u, v);
}

}  // namespace telefid
