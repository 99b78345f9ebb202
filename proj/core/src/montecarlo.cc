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

#include "telefid/montecarlo.h"

#include <atomic>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "telefid/random.h"

namespace telefid {

SamplerConfig SamplerConfig::with_samples(std::uint64_t seed, std::size_t n) {
    return {seed, n, std::min(kDefaultChunkSize, n)};
}

void SamplerConfig::validate() const {
    if (n_samples < kMinSamples) {
        throw std::invalid_argument("sampler needs at least " + std::to_string(kMinSamples) + " samples");
    }
    if (chunk_size == 0 || chunk_size > n_samples) {
        throw std::invalid_argument("chunk_size must lie in [1, n_samples]");
    }
}

void MomentAccumulator::add(double x) {
    MomentAccumulator single;
    single.n_ = 1;
    single.mean_ = x;
    merge(single);
}

void MomentAccumulator::merge(const MomentAccumulator &other) {
    if (other.n_ == 0) {
        return;
    }
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double n = na + nb;
    const double d = other.mean_ - mean_;
    const double d2 = d * d;
    const double m2 = m2_ + other.m2_ + d2 * na * nb / n;
    const double m3 = m3_ + other.m3_ + d2 * d * na * nb * (na - nb) / (n * n) +
                      3.0 * d * (na * other.m2_ - nb * m2_) / n;
    const double m4 = m4_ + other.m4_ + d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                      6.0 * d2 * (na * na * other.m2_ + nb * nb * m2_) / (n * n) +
                      4.0 * d * (na * other.m3_ - nb * m3_) / n;
    mean_ += d * nb / n;
    m2_ = m2;
    m3_ = m3;
    m4_ = m4;
    n_ += other.n_;
}

Estimate MomentAccumulator::mean_estimate() const {
    const double se = n_ == 0 ? 0.0 : std::sqrt(sample_variance() / static_cast<double>(n_));
    return {mean_, se, n_};
}

Estimate MomentAccumulator::deviation_estimate() const {
    const double var = variance();
    const double sigma = std::sqrt(var);
    double se = 0.0;
    if (sigma > 0.0) {
        const double spread = std::max(fourth_central_moment() - var * var, 0.0);
        se = std::sqrt(spread / static_cast<double>(n_)) / (2.0 * sigma);
    }
    return {sigma, se, n_};
}

unsigned default_worker_count() {
    if (const char *env = std::getenv("TELEFID_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

template <typename Fn>
void for_each_sample_in_chunk(const SamplerConfig &sampler, std::size_t chunk, Fn &&fn) {
    Rng rng = stream_rng(sampler.seed, chunk);
    const std::size_t begin = chunk * sampler.chunk_size;
    const std::size_t end = std::min(sampler.n_samples, begin + sampler.chunk_size);
    for (std::size_t i = begin; i < end; ++i) {
        fn(random_bloch(rng));
    }
}

}  // namespace

std::vector<BlochVector> sample_bloch(const SamplerConfig &sampler) {
    sampler.validate();
    std::vector<BlochVector> out;
    out.reserve(sampler.n_samples);
    for (std::size_t c = 0; c < sampler.chunk_count(); ++c) {
        for_each_sample_in_chunk(sampler, c, [&](const BlochVector &v) { out.push_back(v); });
    }
    return out;
}

MomentAccumulator accumulate(const SamplerConfig &sampler, const SphereIntegrand &integrand, unsigned workers) {
    sampler.validate();
    const std::size_t chunks = sampler.chunk_count();
    std::vector<MomentAccumulator> partial(chunks);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t c = next++; c < chunks; c = next++) {
            MomentAccumulator acc;
            for_each_sample_in_chunk(sampler, c, [&](const BlochVector &v) { acc.add(integrand(v)); });
            partial[c] = acc;
        }
    };

    const unsigned requested = workers == 0 ? default_worker_count() : workers;
    const std::size_t threads = std::min<std::size_t>(requested, chunks);
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(work);
        }
    }

    MomentAccumulator total;
    for (const MomentAccumulator &acc : partial) {
        total.merge(acc);
    }
    return total;
}

Estimate mc_average_fidelity(const ProtocolConfig &config, const WernerChannel &channel, const SamplerConfig &sampler,
                             unsigned workers) {
    return accumulate(
               sampler, [&](const BlochVector &v) { return state_fidelity(v, config, channel); }, workers)
        .mean_estimate();
}

Estimate mc_fidelity_deviation(const ProtocolConfig &config, const WernerChannel &channel,
                               const SamplerConfig &sampler, unsigned workers) {
    return accumulate(
               sampler, [&](const BlochVector &v) { return state_fidelity(v, config, channel); }, workers)
        .deviation_estimate();
}

Estimate mc_moment2(const Rotation3 &r, const SamplerConfig &sampler, unsigned workers) {
    const Eigen::Matrix3d m = r.matrix();
    return accumulate(
               sampler, [&](const BlochVector &v) { return v.vec().dot(m * v.vec()); }, workers)
        .mean_estimate();
}

Estimate mc_moment4(const Rotation3 &a, const Rotation3 &b, const SamplerConfig &sampler, unsigned workers) {
    const Eigen::Matrix3d ma = a.matrix();
    const Eigen::Matrix3d mb = b.matrix();
    return accumulate(
               sampler,
               [&](const BlochVector &v) { return v.vec().dot(ma * v.vec()) * v.vec().dot(mb * v.vec()); }, workers)
        .mean_estimate();
}

}  // namespace telefid
