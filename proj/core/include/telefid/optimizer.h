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

#ifndef TELEFID_OPTIMIZER_H
#define TELEFID_OPTIMIZER_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "telefid/qubit_algebra.h"
#include "telefid/teleportation.h"

namespace telefid {

/// Raised when the objective carries no information, e.g. p = 0 makes F
/// independent of the corrections.
class FlatObjectiveError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct NelderMeadOptions {
    std::size_t max_iters = 2000;
    /// Stop once the spread of function values across the simplex drops below this.
    double f_tol = 1e-15;
    /// ... and the simplex diameter below this.
    double x_tol = 1e-10;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value;
    std::size_t iterations;
    /// Best value after each iteration, starting with the initial simplex.
    std::vector<double> history;
    bool terminated;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimizes `objective` with the dimension-adaptive Nelder-Mead simplex
/// (reflection 1, expansion 1 + 2/n, contraction 3/4 - 1/(2n), shrink 1 - 1/n).
/// The initial simplex is x0 plus step[i] along each coordinate.
NelderMeadResult nelder_mead(const Objective &objective, std::vector<double> x0, const std::vector<double> &step,
                             const NelderMeadOptions &options);

struct OptimizerConfig {
    std::size_t restarts = 8;
    std::size_t max_iters = 2000;
    double tol = 1e-8;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument unless restarts, max_iters > 0 and tol > 0.
    void validate() const;
};

struct OptimizationResult {
    std::array<AxisAngle, 4> best_v;
    double f_best;
    double d_at_best;
    /// (cumulative iteration, incumbent F), recorded whenever the incumbent improves.
    std::vector<std::pair<std::size_t, double>> trajectory;
    bool converged;
};

/// Each correction V_alpha = exp(-i theta/2 n.sigma) with n given by polar and
/// azimuthal angles: params (polar, azimuth, theta) per outcome, 12 in total.
std::array<AxisAngle, 4> corrections_from_params(std::span<const double> params);

/// Maximizes the average fidelity over the four corrections for fixed
/// measurement unitaries. Restarts are seeded from cfg.seed and may run
/// concurrently; the best F wins, ties going to the lowest restart index.
/// converged iff F_max(p) - F_best <= cfg.tol.
///
/// Throws FlatObjectiveError for p = 0 and ConfigError for an invalid measurement.
OptimizationResult optimize_corrections(const UnitaryQuad &measurement, const WernerChannel &channel,
                                        const OptimizerConfig &cfg, unsigned workers = 0);

}  // namespace telefid

#endif  // TELEFID_OPTIMIZER_H
