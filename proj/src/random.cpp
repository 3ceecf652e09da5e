// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <nakasim/random.h>

#include <cmath>
#include <numbers>

namespace nakasim {

uint64_t SplitMix64(uint64_t& state)
{
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng Rng::Derive(uint64_t seed, uint64_t stream)
{
    uint64_t state = seed ^ (stream * 0xd1b54a32d192ed03ULL);
    SplitMix64(state);
    return Rng(SplitMix64(state));
}

double Rng::Uniform()
{
    return static_cast<double>(m_engine() >> 11) * 0x1.0p-53;
}

double Rng::Exponential(double mean)
{
    return -mean * std::log(UniformOpenLow());
}

int64_t Rng::Poisson(double mean)
{
    if (!(mean > 0.0)) return 0;
    // exp(-mean) underflows past ~745; split large means into summed chunks.
    constexpr double kChunk = 500.0;
    int64_t total = 0;
    while (mean > kChunk) {
        total += Poisson(kChunk);
        mean -= kChunk;
    }
    const double u = Uniform();
    double pmf = std::exp(-mean);
    double cdf = pmf;
    int64_t k = 0;
    while (u >= cdf && pmf > 0.0) {
        ++k;
        pmf *= mean / static_cast<double>(k);
        cdf += pmf;
    }
    return total + k;
}

double Rng::Normal(double mean, double stddev)
{
    // Box-Muller; the second variate is discarded to keep the stream simple.
    const double u1 = UniformOpenLow();
    const double u2 = Uniform();
    return mean + stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace nakasim
