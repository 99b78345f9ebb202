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

#ifndef TELEFID_TELEPORTATION_H
#define TELEFID_TELEPORTATION_H

#include <array>
#include <stdexcept>

#include "telefid/qubit_algebra.h"

namespace telefid {

/// Raised when a protocol configuration cannot describe a teleportation
/// strategy, e.g. the measurement operators do not form a complete basis.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Werner channel p |Psi_0><Psi_0| + (1 - p) 1/4 with 0 <= p <= 1.
class WernerChannel {
  public:
    /// Throws std::invalid_argument for p outside [0, 1].
    explicit WernerChannel(double p);
    double p() const { return p_; }

  private:
    double p_;
};

/// Measurement unitaries U_alpha and correction unitaries V_alpha. Outcome
/// alpha of Alice's measurement triggers V_alpha on Bob's qubit. The composite
/// operators X_alpha = V_alpha U_alpha^dag and their rotations are cached.
class ProtocolConfig {
  public:
    /// Throws ConfigError if U is not an orthonormal measurement set or any
    /// V_alpha is not unitary.
    ProtocolConfig(const UnitaryQuad &measurement, const UnitaryQuad &correction);

    /// U_alpha = V_alpha = Pauli set: X_alpha = 1 for every outcome.
    static ProtocolConfig optimal_pauli();

    const UnitaryQuad &measurement() const { return u_; }
    const UnitaryQuad &correction() const { return v_; }
    const UnitaryQuad &composite() const { return x_; }
    const std::array<Rotation3, 4> &rotations() const { return r_; }

  private:
    UnitaryQuad u_;
    UnitaryQuad v_;
    UnitaryQuad x_;
    std::array<Rotation3, 4> r_;
};

Mat4 werner_state(const WernerChannel &channel);

/// Full three-qubit simulation of the outcome-averaged protocol.
///
/// Qubit 1 carries the input, qubits 2 and 3 the Werner pair; tensor factors
/// are ordered 1 (x) 2 (x) 3. For each outcome the (1,2) register is contracted
/// against <Psi_alpha| on both sides, V_alpha is applied to qubit 3, and the
/// unnormalized branches are summed.
Mat2 teleport_dense(const BlochVector &input, const ProtocolConfig &config, const WernerChannel &channel);

/// (p/4) sum_alpha X_alpha |phi><phi| X_alpha^dag + (1 - p)/2 1.
Mat2 teleport_closed(const BlochVector &input, const ProtocolConfig &config, const WernerChannel &channel);

/// |<phi|X|phi>|^2 for a unitary X.
double xi(const BlochVector &input, const Mat2 &x);

/// Squared-overlap fidelity <phi|rho_phi|phi> = (p/4) sum_alpha xi_alpha + (1 - p)/2.
double state_fidelity(const BlochVector &input, const ProtocolConfig &config, const WernerChannel &channel);

}  // namespace telefid

#endif  // TELEFID_TELEPORTATION_H
