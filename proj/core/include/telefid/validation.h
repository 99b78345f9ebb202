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

#ifndef TELEFID_VALIDATION_H
#define TELEFID_VALIDATION_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "telefid/measures.h"
#include "telefid/montecarlo.h"

namespace telefid {

inline constexpr std::size_t kMinValidationSamples = 10000;

/// Statistical comparisons pass when |estimate - expected| <= 3 standard errors.
inline constexpr double kSigmaPolicy = 3.0;

/// At most 2 misses per 100 comparisons, rounded up.
std::size_t allowed_misses(std::size_t comparisons);

/// True when |estimate.mean - expected| <= kSigmaPolicy * estimate.std_error, or
/// within `floor` for estimates whose standard error vanishes.
bool within_sigma(const Estimate &estimate, double expected, double floor = 1e-12);

struct ValidationOptions {
    std::size_t samples = 1000000;
    std::uint64_t seed = 7;
    unsigned workers = 0;
    /// Swappable so a corrupted formula can be fed in as a negative control.
    CovarianceFn covariance = covariance_element;
};

struct CheckResult {
    std::string name;
    std::size_t comparisons = 0;
    std::size_t misses = 0;
    std::size_t allowed = 0;
    /// Largest deviation seen, in standard errors for statistical checks and in
    /// absolute units otherwise.
    double worst = 0.0;

    bool passed() const { return misses <= allowed; }
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    bool passed() const;
};

/// Every closed form against an independent route:
///   dense_vs_closed      teleport_dense vs teleport_closed, 100 triples, 1e-10
///   xi_bloch_form        |<phi|X|phi>|^2 vs (1 + phi^T R phi)/2, 1e-12
///   moment2_schur        mc_moment2 vs Tr R / 3, 20 rotations, 3 sigma
///   moment4_schur        mc_moment4 vs fourth_moment, 20 pairs, 3 sigma
///   covariance_oracle    covariance vs (mc_moment4 - Tr Tr / 9)/4, 20 pairs, 3 sigma
///   covariance_diagonal  covariance(R, R) vs delta(R)^2, 1e-12
///   fidelity_oracle      average_fidelity vs mc_average_fidelity, 50 configs, 3 sigma
///   deviation_oracle     fidelity_deviation vs mc_fidelity_deviation, 50 configs, 3 sigma
///   bound_sandwich       F range, D_lower <= D <= D_upper, D <= sqrt(F(1-F)), 1000 configs
/// Throws std::invalid_argument when samples < kMinValidationSamples.
ValidationReport run_validation(const ValidationOptions &options);

}  // namespace telefid

#endif  // TELEFID_VALIDATION_H
