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

#include "telefid/validation.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "telefid/random.h"
#include "telefid/teleportation.h"

namespace telefid {

namespace {

// Independent streams for each check so adding a check does not shift the others.
enum Stream : std::uint64_t {
    kDenseStream = 1000,
    kXiStream,
    kMoment2Stream,
    kMoment4Stream,
    kCovarianceStream,
    kDiagonalStream,
    kFidelityStream,
    kDeviationStream,
    kBoundStream,
};

class Tally {
  public:
    Tally(std::string name, std::size_t allowed) { result_.name = std::move(name), result_.allowed = allowed; }

    void exact(double got, double expected, double tolerance) {
        const double err = std::abs(got - expected);
        record(err <= tolerance, err);
    }

    void statistical(const Estimate &estimate, double expected) {
        const double err = std::abs(estimate.mean - expected);
        const double score = estimate.std_error > 0.0 ? err / estimate.std_error : (err <= 1e-12 ? 0.0 : INFINITY);
        record(within_sigma(estimate, expected), score);
    }

    void condition(bool ok, double violation) { record(ok, violation); }

    CheckResult finish() const { return result_; }

  private:
    void record(bool ok, double score) {
        ++result_.comparisons;
        result_.misses += ok ? 0 : 1;
        result_.worst = std::max(result_.worst, score);
    }

    CheckResult result_;
};

double uniform_p(Rng &rng) { return uniform01(rng); }

}  // namespace

std::size_t allowed_misses(std::size_t comparisons) { return (2 * comparisons + 99) / 100; }

bool within_sigma(const Estimate &estimate, double expected, double floor) {
    return std::abs(estimate.mean - expected) <= std::max(kSigmaPolicy * estimate.std_error, floor);
}

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed(); });
}

ValidationReport run_validation(const ValidationOptions &options) {
    if (options.samples < kMinValidationSamples) {
        throw std::invalid_argument("validation needs at least " + std::to_string(kMinValidationSamples) +
                                    " samples per estimate");
    }
    ValidationReport report;
    auto sampler_for = [&](std::uint64_t stream, std::size_t k) {
        return SamplerConfig::with_samples(mix_seed(options.seed, stream * 1000 + k), options.samples);
    };

    {
        Tally t("dense_vs_closed", 0);
        Rng rng = stream_rng(options.seed, kDenseStream);
        for (int k = 0; k < 100; ++k) {
            const BlochVector input = random_bloch(rng);
            const ProtocolConfig config = random_protocol(rng);
            const WernerChannel channel(uniform_p(rng));
            const Mat2 diff = teleport_dense(input, config, channel) - teleport_closed(input, config, channel);
            t.exact(max_abs(diff), 0.0, tol::kStructural);
        }
        report.checks.push_back(t.finish());
    }
    {
        Tally t("xi_bloch_form", 0);
        Rng rng = stream_rng(options.seed, kXiStream);
        for (int k = 0; k < 100; ++k) {
            const BlochVector input = random_bloch(rng);
            const Mat2 x = haar_unitary(rng);
            const Vec3 &v = input.vec();
            t.exact(xi(input, x), 0.5 * (1.0 + v.dot(su2_to_so3(x).matrix() * v)), tol::kExact);
        }
        report.checks.push_back(t.finish());
    }
    {
        Tally t("moment2_schur", allowed_misses(20));
        Rng rng = stream_rng(options.seed, kMoment2Stream);
        for (std::size_t k = 0; k < 20; ++k) {
            const Rotation3 r = random_rotation(rng);
            t.statistical(mc_moment2(r, sampler_for(kMoment2Stream, k), options.workers), r.trace() / 3.0);
        }
        report.checks.push_back(t.finish());
    }
    {
        Tally t("moment4_schur", allowed_misses(20));
        Rng rng = stream_rng(options.seed, kMoment4Stream);
        for (std::size_t k = 0; k < 20; ++k) {
            const Rotation3 a = random_rotation(rng);
            const Rotation3 b = random_rotation(rng);
            t.statistical(mc_moment4(a, b, sampler_for(kMoment4Stream, k), options.workers), fourth_moment(a, b));
        }
        report.checks.push_back(t.finish());
    }
    {
        Tally t("covariance_oracle", allowed_misses(20));
        Rng rng = stream_rng(options.seed, kCovarianceStream);
        for (std::size_t k = 0; k < 20; ++k) {
            const Rotation3 a = random_rotation(rng);
            const Rotation3 b = random_rotation(rng);
            const Estimate m4 = mc_moment4(a, b, sampler_for(kCovarianceStream, k), options.workers);
            const Estimate c{(m4.mean - a.trace() * b.trace() / 9.0) / 4.0, m4.std_error / 4.0, m4.n};
            t.statistical(c, options.covariance(a, b));
        }
        report.checks.push_back(t.finish());
    }
    {
        Tally t("covariance_diagonal", 0);
        Rng rng = stream_rng(options.seed, kDiagonalStream);
        for (int k = 0; k < 100; ++k) {
            const Rotation3 r = random_rotation(rng);
            t.exact(options.covariance(r, r), delta(r) * delta(r), tol::kExact);
        }
        report.checks.push_back(t.finish());
    }
    {
        Tally t("fidelity_oracle", allowed_misses(50));
        Rng rng = stream_rng(options.seed, kFidelityStream);
        for (std::size_t k = 0; k < 50; ++k) {
            const ProtocolConfig config = random_protocol(rng);
            const WernerChannel channel(uniform_p(rng));
            t.statistical(mc_average_fidelity(config, channel, sampler_for(kFidelityStream, k), options.workers),
                          average_fidelity(config, channel));
        }
        report.checks.push_back(t.finish());
    }
    {
        Tally t("deviation_oracle", allowed_misses(50));
        Rng rng = stream_rng(options.seed, kDeviationStream);
        for (std::size_t k = 0; k < 50; ++k) {
            const ProtocolConfig config = random_protocol(rng);
            const WernerChannel channel(uniform_p(rng));
            double expected;
            try {
                expected = fidelity_deviation(config, channel, options.covariance);
            } catch (const std::logic_error &) {
                t.condition(false, INFINITY);
                continue;
            }
            t.statistical(mc_fidelity_deviation(config, channel, sampler_for(kDeviationStream, k), options.workers),
                          expected);
        }
        report.checks.push_back(t.finish());
    }
    {
        Tally t("bound_sandwich", 0);
        Rng rng = stream_rng(options.seed, kBoundStream);
        constexpr double slack = tol::kDerived;
        for (int k = 0; k < 1000; ++k) {
            const ProtocolConfig config = random_protocol(rng);
            const WernerChannel channel(uniform_p(rng));
            const double f = average_fidelity(config, channel);
            double d;
            try {
                d = fidelity_deviation(config, channel, options.covariance);
            } catch (const std::logic_error &) {
                t.condition(false, INFINITY);
                continue;
            }
            const FidelityBounds fb = f_bounds(channel);
            const DeviationBounds db = d_bounds(config, channel);
            const double violation = std::max({
                fb.min - f - slack,
                f - fb.max - slack,
                d - (fb.max - f) / std::sqrt(5.0) - slack,
                d - half_circle_bound(std::clamp(f, 0.0, 1.0)) - slack,
                db.lower - d - slack,
                d - db.upper - slack,
                std::abs(db.upper - (fb.max - f) / std::sqrt(5.0)) - tol::kExact,
            });
            t.condition(violation <= 0.0, std::max(violation, 0.0));
        }
        report.checks.push_back(t.finish());
    }
    return report;
}

}  // namespace telefid
