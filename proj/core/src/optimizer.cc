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

#include "telefid/optimizer.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <thread>

#include "telefid/measures.h"
#include "telefid/montecarlo.h"
#include "telefid/random.h"

namespace telefid {

namespace {

using Point = std::vector<double>;

Point affine(const Point &from, const Point &to, double t) {
    Point out(from.size());
    for (std::size_t i = 0; i < from.size(); ++i) {
        out[i] = from[i] + t * (to[i] - from[i]);
    }
    return out;
}

double simplex_diameter(const std::vector<Point> &simplex) {
    double d = 0.0;
    for (std::size_t k = 1; k < simplex.size(); ++k) {
        for (std::size_t i = 0; i < simplex[0].size(); ++i) {
            d = std::max(d, std::abs(simplex[k][i] - simplex[0][i]));
        }
    }
    return d;
}

}  // namespace

NelderMeadResult nelder_mead(const Objective &objective, Point x0, const std::vector<double> &step,
                             const NelderMeadOptions &options) {
    const std::size_t n = x0.size();
    if (n == 0 || step.size() != n) {
        throw std::invalid_argument("nelder_mead needs a non-empty start point and one step per coordinate");
    }
    const double dim = static_cast<double>(n);
    const double reflect = 1.0;
    const double expand = 1.0 + 2.0 / dim;
    const double contract = 0.75 - 1.0 / (2.0 * dim);
    const double shrink = n > 1 ? 1.0 - 1.0 / dim : 0.5;

    std::vector<Point> simplex(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += step[i];
    }
    std::vector<double> values(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        values[k] = objective(simplex[k]);
    }

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        std::vector<Point> s(n + 1);
        std::vector<double> v(n + 1);
        for (std::size_t k = 0; k <= n; ++k) {
            s[k] = std::move(simplex[order[k]]);
            v[k] = values[order[k]];
        }
        simplex = std::move(s);
        values = std::move(v);
    };

    sort_simplex();
    NelderMeadResult result{simplex[0], values[0], 0, {values[0]}, false};

    while (result.iterations < options.max_iters) {
        if (values[n] - values[0] <= options.f_tol && simplex_diameter(simplex) <= options.x_tol) {
            result.terminated = true;
            break;
        }
        ++result.iterations;

        Point centroid(n, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                centroid[i] += simplex[k][i] / dim;
            }
        }

        const Point reflected = affine(centroid, simplex[n], -reflect);
        const double f_reflected = objective(reflected);
        if (f_reflected < values[0]) {
            const Point expanded = affine(centroid, simplex[n], -expand);
            const double f_expanded = objective(expanded);
            if (f_expanded < f_reflected) {
                simplex[n] = expanded;
                values[n] = f_expanded;
            } else {
                simplex[n] = reflected;
                values[n] = f_reflected;
            }
        } else if (f_reflected < values[n - 1]) {
            simplex[n] = reflected;
            values[n] = f_reflected;
        } else {
            const bool outside = f_reflected < values[n];
            const Point contracted = outside ? affine(centroid, simplex[n], -contract * reflect)
                                             : affine(centroid, simplex[n], contract);
            const double f_contracted = objective(contracted);
            if (f_contracted < std::min(f_reflected, values[n])) {
                simplex[n] = contracted;
                values[n] = f_contracted;
            } else {
                for (std::size_t k = 1; k <= n; ++k) {
                    simplex[k] = affine(simplex[0], simplex[k], shrink);
                    values[k] = objective(simplex[k]);
                }
            }
        }

        sort_simplex();
        if (values[0] < result.value) {
            result.value = values[0];
            result.x = simplex[0];
        }
        result.history.push_back(result.value);
    }
    return result;
}

void OptimizerConfig::validate() const {
    if (restarts == 0 || max_iters == 0 || !(tol > 0.0)) {
        throw std::invalid_argument("optimizer needs restarts > 0, max_iters > 0 and tol > 0");
    }
}

std::array<AxisAngle, 4> corrections_from_params(std::span<const double> params) {
    if (params.size() != 12) {
        throw std::invalid_argument("corrections are parameterized by exactly 12 reals");
    }
    std::array<AxisAngle, 4> out;
    for (std::size_t a = 0; a < 4; ++a) {
        const double polar = params[3 * a];
        const double azimuth = params[3 * a + 1];
        out[a].axis = Vec3(std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth), std::cos(polar));
        out[a].angle = params[3 * a + 2];
    }
    return out;
}

namespace {

ProtocolConfig config_from_params(const UnitaryQuad &measurement, std::span<const double> params) {
    const auto aa = corrections_from_params(params);
    UnitaryQuad v;
    for (std::size_t a = 0; a < 4; ++a) {
        v[a] = unitary_from_axis_angle(aa[a]);
    }
    return ProtocolConfig(measurement, v);
}

struct RestartOutcome {
    Point x;
    double f;
    std::vector<double> history;
};

/// Nelder-Mead from a random start, re-seeding the simplex around the
/// incumbent whenever it collapses, until the iteration budget is spent or a
/// rebuilt simplex stops improving.
RestartOutcome run_restart(const UnitaryQuad &measurement, const WernerChannel &channel, const OptimizerConfig &cfg,
                           std::size_t index) {
    Rng rng = stream_rng(cfg.seed, index);
    Point x(12);
    for (std::size_t a = 0; a < 4; ++a) {
        x[3 * a] = std::numbers::pi * uniform01(rng);
        x[3 * a + 1] = 2.0 * std::numbers::pi * uniform01(rng);
        x[3 * a + 2] = 2.0 * std::numbers::pi * uniform01(rng);
    }
    const Objective negative_f = [&](std::span<const double> params) {
        return -average_fidelity(config_from_params(measurement, params), channel);
    };

    RestartOutcome out{x, -negative_f(x), {}};
    out.history.push_back(out.f);
    std::size_t budget = cfg.max_iters;
    double step = 0.5;
    while (budget > 0) {
        NelderMeadOptions options;
        options.max_iters = budget;
        const NelderMeadResult nm = nelder_mead(negative_f, out.x, std::vector<double>(12, step), options);
        budget -= nm.iterations;
        const double improvement = -nm.value - out.f;
        for (std::size_t k = 1; k < nm.history.size(); ++k) {
            out.history.push_back(std::max(out.f, -nm.history[k]));
        }
        if (improvement > 0.0) {
            out.f = -nm.value;
            out.x = nm.x;
        }
        if (!nm.terminated || improvement <= 1e-15 || nm.iterations == 0) {
            break;
        }
        step = std::max(step / 4.0, 1e-4);
    }
    return out;
}

}  // namespace

OptimizationResult optimize_corrections(const UnitaryQuad &measurement, const WernerChannel &channel,
                                        const OptimizerConfig &cfg, unsigned workers) {
    cfg.validate();
    if (!validate_measurement(measurement)) {
        throw ConfigError("measurement unitaries do not form an orthonormal Bell basis");
    }
    if (channel.p() == 0.0) {
        throw FlatObjectiveError("at p = 0 the average fidelity does not depend on the corrections");
    }

    std::vector<RestartOutcome> outcomes(cfg.restarts);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t r = next++; r < cfg.restarts; r = next++) {
            outcomes[r] = run_restart(measurement, channel, cfg, r);
        }
    };
    const unsigned requested = workers == 0 ? default_worker_count() : workers;
    const std::size_t threads = std::min<std::size_t>(requested, cfg.restarts);
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(work);
        }
    }

    OptimizationResult result;
    std::size_t best = 0;
    std::size_t offset = 0;
    double incumbent = -1.0;
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
        if (outcomes[r].f > outcomes[best].f) {
            best = r;
        }
        for (std::size_t k = 0; k < outcomes[r].history.size(); ++k) {
            if (outcomes[r].history[k] > incumbent) {
                incumbent = outcomes[r].history[k];
                result.trajectory.emplace_back(offset + k, incumbent);
            }
        }
        offset += outcomes[r].history.size();
    }

    const ProtocolConfig config = config_from_params(measurement, outcomes[best].x);
    result.best_v = corrections_from_params(outcomes[best].x);
    result.f_best = outcomes[best].f;
    result.d_at_best = fidelity_deviation(config, channel);
    result.converged = f_bounds(channel).max - result.f_best <= cfg.tol;
    return result;
}

}  // namespace telefid
