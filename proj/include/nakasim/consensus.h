// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef NAKASIM_CONSENSUS_H
#define NAKASIM_CONSENSUS_H

#include <nakasim/chain.h>

#include <cstdint>
#include <optional>

namespace nakasim {

/** True iff the header hash, read as a little-endian integer, is <= the target. */
bool CheckPow(const BlockHeader& header, const BigUint& target);
/** Same, with the target decoded from header.bits. Throws InvalidCompactEncoding. */
bool CheckPow(const BlockHeader& header);

/**
 * Scan nonces in [start_nonce, start_nonce + max_iters) in order and return
 * the first one whose header passes CheckPow. std::nullopt means the range is
 * exhausted and the caller must vary other header fields. The scan does not
 * wrap past 2^32 - 1.
 */
std::optional<uint32_t> MineToy(BlockHeader header, const BigUint& target, uint32_t start_nonce, uint64_t max_iters);
std::optional<uint32_t> MineToy(const BlockHeader& header, uint32_t start_nonce, uint64_t max_iters);

/**
 * Difficulty scale: difficulty 1 corresponds to `diff1_bits`, and no target
 * may exceed `pow_limit_bits`.
 */
struct PowParams {
    uint32_t diff1_bits{0x1d00ffff};
    uint32_t pow_limit_bits{0x207fffff};

    /** Bitcoin's difficulty scale with a permissive limit for small simulated networks. */
    static PowParams Simulation() { return {0x1d00ffff, 0x207fffff}; }
    /** Roughly 256 hashes per unit difficulty, so real nonce search stays cheap. */
    static PowParams Toy() { return {0x2000ffff, 0x207fffff}; }
};

double DifficultyFromBits(uint32_t bits, const PowParams& pow);
/** Compact target for a difficulty, clamped to the pow limit. */
uint32_t BitsForDifficulty(double difficulty, const PowParams& pow);
/** Expected hashes per block at difficulty 1. */
double HashesPerUnitDifficulty(const PowParams& pow);

enum class RetargetRule {
    /** new = old * target / actual: fast windows raise difficulty. */
    TargetOverActual,
    /** new = old * actual / target, as the formula is sometimes written. */
    ActualOverTarget,
};

struct RetargetParams {
    int64_t window_blocks{2016};
    double target_window_minutes{20160.0};
    double clamp_factor{4.0};
    bool clamp_enabled{true};
    RetargetRule rule{RetargetRule::TargetOverActual};

    /** Throws std::invalid_argument naming the offending field. */
    void Validate() const;
};

double Retarget(double old_difficulty, double actual_window_minutes, const RetargetParams& params);

/**
 * Bits required for a child of `parent`. Difficulty changes on the block
 * after every `window_blocks` boundary, using the timestamps of the boundary
 * block and the block one window earlier (exactly window_blocks intervals).
 */
uint32_t NextBits(const BlockTree& tree, const Hash256& parent, const RetargetParams& retarget, const PowParams& pow);

/** True if `a` should be preferred over `b`: more work, then earlier arrival. */
bool IsBetterTip(const BlockTree::Entry& a, const BlockTree::Entry& b);

/** Tip with most cumulative work; ties go to the first-seen tip. Tree must be non-empty. */
Hash256 ForkChoice(const BlockTree& tree);

/** 1 + depth below the best tip, or 0 if the block is off the best chain. Throws UnknownBlock. */
int64_t Confirmations(const BlockTree& tree, const Hash256& block_hash);

struct AttackQuery {
    /** Attacker share of hashrate, in [0, 1). */
    double q{0.0};
    /** Confirmations the merchant waits for. */
    int64_t z{0};
    int64_t trials{1};
    uint64_t seed{0};

    void Validate() const;
};

struct AttackEstimate {
    double probability{0.0};
    double standard_error{0.0};
    int64_t trials{0};
    int64_t successes{0};
    /** Walks that cannot catch up within MAX_WALK_STEPS, scored as failures. */
    int64_t truncated{0};
};

static constexpr int64_t MAX_WALK_STEPS = 4096;

/**
 * Monte Carlo double-spend model. While the honest network mines z blocks the
 * attacker mines a Poisson(z q / p) number of private blocks; from the
 * remaining deficit the race is a +/-1 random walk that the attacker wins on
 * reaching zero deficit. Deterministic for a fixed query.
 */
AttackEstimate AttackerCatchupProbability(const AttackQuery& query);

/** The classical closed form 1 - sum_k Pois(k; zq/p) (1 - (q/p)^(z-k)). */
double CatchupProbabilityClosedForm(double q, int64_t z);

} // namespace nakasim

#endif // NAKASIM_CONSENSUS_H
