// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef NAKASIM_RANDOM_H
#define NAKASIM_RANDOM_H

#include <cstdint>
#include <random>

namespace nakasim {

/**
 * Seeded generator with hand-written variates. std:: distributions are
 * implementation-defined, so they are avoided to keep runs reproducible
 * across standard libraries.
 */
class Rng
{
public:
    explicit Rng(uint64_t seed) : m_engine(seed) {}

    /** Independent stream for (seed, stream) pairs via SplitMix64. */
    static Rng Derive(uint64_t seed, uint64_t stream);

    uint64_t NextU64() { return m_engine(); }
    /** Uniform in [0, 1) with 53 random bits. */
    double Uniform();
    /** Uniform in (0, 1]. */
    double UniformOpenLow() { return 1.0 - Uniform(); }
    double Exponential(double mean);
    /** Inversion sampler; intended for small means. */
    int64_t Poisson(double mean);
    double Normal(double mean, double stddev);
    bool Bernoulli(double p) { return Uniform() < p; }

private:
    std::mt19937_64 m_engine;
};

uint64_t SplitMix64(uint64_t& state);

} // namespace nakasim

#endif // NAKASIM_RANDOM_H
