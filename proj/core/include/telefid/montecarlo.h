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

#ifndef TELEFID_MONTECARLO_H
#define TELEFID_MONTECARLO_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "telefid/qubit_algebra.h"
#include "telefid/teleportation.h"

namespace telefid {

inline constexpr std::size_t kDefaultChunkSize = 65536;
inline constexpr std::size_t kMinSamples = 100;

/// Haar sampling plan. Chunk k draws from its own stream mix_seed(seed, k), so
/// the sample sequence does not depend on how chunks are scheduled.
struct SamplerConfig {
    std::uint64_t seed = 0;
    std::size_t n_samples = 0;
    std::size_t chunk_size = kDefaultChunkSize;

    /// chunk_size = min(kDefaultChunkSize, n).
    static SamplerConfig with_samples(std::uint64_t seed, std::size_t n);

    /// Throws std::invalid_argument unless n_samples >= 100 and 1 <= chunk_size <= n_samples.
    void validate() const;

    std::size_t chunk_count() const { return (n_samples + chunk_size - 1) / chunk_size; }
};

struct Estimate {
    double mean;
    double std_error;
    std::size_t n;
};

/// Streaming central moments up to fourth order. merge() is the pairwise
/// update, so chunk summaries can be combined in a fixed order.
class MomentAccumulator {
  public:
    void add(double x);
    void merge(const MomentAccumulator &other);

    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    /// Population variance (divisor n).
    double variance() const { return n_ == 0 ? 0.0 : m2_ / static_cast<double>(n_); }
    /// Divisor n - 1.
    double sample_variance() const { return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1); }
    double fourth_central_moment() const { return n_ == 0 ? 0.0 : m4_ / static_cast<double>(n_); }
    /// Mean of x^2, reconstructed as variance + mean^2.
    double raw_second_moment() const { return variance() + mean_ * mean_; }

    Estimate mean_estimate() const;
    /// Population standard deviation with a delta-method standard error,
    /// sqrt((mu4 - sigma^4) / n) / (2 sigma).
    Estimate deviation_estimate() const;

  private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    double m3_ = 0.0;
    double m4_ = 0.0;
};

/// Worker count from TELEFID_THREADS, else std::thread::hardware_concurrency().
unsigned default_worker_count();

/// Haar-uniform inputs, deterministic in sampler.seed.
std::vector<BlochVector> sample_bloch(const SamplerConfig &sampler);

using SphereIntegrand = std::function<double(const BlochVector &)>;

/// Evaluates the integrand on every sample of the plan. Chunks run on up to
/// `workers` threads (0 = default_worker_count()) and are merged in chunk order.
MomentAccumulator accumulate(const SamplerConfig &sampler, const SphereIntegrand &integrand, unsigned workers = 0);

/// Mean of state_fidelity over Haar inputs.
Estimate mc_average_fidelity(const ProtocolConfig &config, const WernerChannel &channel, const SamplerConfig &sampler,
                             unsigned workers = 0);

/// Population standard deviation of state_fidelity over Haar inputs.
Estimate mc_fidelity_deviation(const ProtocolConfig &config, const WernerChannel &channel,
                               const SamplerConfig &sampler, unsigned workers = 0);

/// Haar average of v^T R v.
Estimate mc_moment2(const Rotation3 &r, const SamplerConfig &sampler, unsigned workers = 0);

/// Haar average of (v^T A v)(v^T B v).
Estimate mc_moment4(const Rotation3 &a, const Rotation3 &b, const SamplerConfig &sampler, unsigned workers = 0);

}  // namespace telefid

#endif  // TELEFID_MONTECARLO_H
