// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <nakasim/consensus.h>
#include <nakasim/random.h>

#include <cmath>
#include <stdexcept>

namespace nakasim {

void AttackQuery::Validate() const
{
    if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("q must be in [0, 1)");
    if (z < 0) throw std::invalid_argument("z must be >= 0");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
}

AttackEstimate AttackerCatchupProbability(const AttackQuery& query)
{
    query.Validate();
    const double q = query.q;
    const double p = 1.0 - q;
    const double lambda = static_cast<double>(query.z) * q / p;

    // Attacker wins a step iff a raw 64-bit draw falls below q * 2^64.
    const auto threshold = static_cast<uint64_t>(std::ldexp(q, 64));

    Rng rng(query.seed);
    AttackEstimate est;
    est.trials = query.trials;
    for (int64_t t = 0; t < query.trials; ++t) {
        int64_t deficit = query.z - rng.Poisson(lambda);
        int64_t steps = 0;
        // A deficit larger than the remaining budget can no longer reach zero,
        // so the walk is already a truncation.
        while (deficit > 0 && deficit <= MAX_WALK_STEPS - steps) {
            deficit += rng.NextU64() < threshold ? -1 : 1;
            ++steps;
        }
        if (deficit <= 0) {
            ++est.successes;
        } else {
            ++est.truncated;
        }
    }
    const double n = static_cast<double>(est.trials);
    est.probability = static_cast<double>(est.successes) / n;
    est.standard_error = std::sqrt(est.probability * (1.0 - est.probability) / n);
    return est;
}

double CatchupProbabilityClosedForm(double q, int64_t z)
{
    if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("q must be in [0, 1)");
    if (z < 0) throw std::invalid_argument("z must be >= 0");
    const long double ql = q;
    const long double p = 1.0L - ql;
    const long double lambda = static_cast<long double>(z) * ql / p;
    long double sum = 1.0L;
    long double pois = std::exp(-lambda);
    for (int64_t k = 0; k <= z; ++k) {
        if (k > 0) pois *= lambda / static_cast<long double>(k);
        sum -= pois * (1.0L - std::pow(ql / p, static_cast<long double>(z - k)));
    }
    return static_cast<double>(sum < 0.0L ? 0.0L : sum);
}

} // namespace nakasim
