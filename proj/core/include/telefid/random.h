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

#ifndef TELEFID_RANDOM_H
#define TELEFID_RANDOM_H

#include <cstdint>
#include <random>

#include "telefid/qubit_algebra.h"
#include "telefid/teleportation.h"

namespace telefid {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; turns (seed, stream index) pairs into well-mixed seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Engine for an independent stream derived from a root seed.
Rng stream_rng(std::uint64_t seed, std::uint64_t stream);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(Rng &rng);

/// Uniform point on the unit sphere: z uniform on [-1, 1), azimuth uniform on [0, 2 pi).
BlochVector random_bloch(Rng &rng);

/// Haar-random element of SU(2), from a uniformly random unit quaternion.
Mat2 haar_unitary(Rng &rng);

Rotation3 random_rotation(Rng &rng);

/// Pauli set sandwiched between two Haar unitaries, W1 sigma_alpha W2. Always a
/// valid measurement.
UnitaryQuad random_measurement(Rng &rng);

/// random_measurement paired with four independent Haar corrections.
ProtocolConfig random_protocol(Rng &rng);

}  // namespace telefid

#endif  // TELEFID_RANDOM_H
