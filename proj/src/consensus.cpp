// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <nakasim/consensus.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nakasim {

bool CheckPow(const BlockHeader& header, const BigUint& target)
{
    return HashToInteger(BlockHash(header)) <= target;
}

bool CheckPow(const BlockHeader& header)
{
    return CheckPow(header, DecodeCompact(header.bits));
}

std::optional<uint32_t> MineToy(BlockHeader header, const BigUint& target, uint32_t start_nonce, uint64_t max_iters)
{
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    const uint64_t last = std::min<uint64_t>(uint64_t{start_nonce} + max_iters - 1, std::numeric_limits<uint32_t>::max());
    for (uint64_t nonce = start_nonce; nonce <= last; ++nonce) {
        header.nonce = static_cast<uint32_t>(nonce);
        if (CheckPow(header, target)) return header.nonce;
    }
    return std::nullopt;
}

std::optional<uint32_t> MineToy(const BlockHeader& header, uint32_t start_nonce, uint64_t max_iters)
{
    return MineToy(header, DecodeCompact(header.bits), start_nonce, max_iters);
}

double DifficultyFromBits(uint32_t bits, const PowParams& pow)
{
    const BigUint target = DecodeCompact(bits);
    if (target == 0) throw InvalidCompactEncoding("zero target has no difficulty");
    return DecodeCompact(pow.diff1_bits).convert_to<double>() / target.convert_to<double>();
}

uint32_t BitsForDifficulty(double difficulty, const PowParams& pow)
{
    if (!(difficulty > 0.0) || !std::isfinite(difficulty)) {
        throw std::invalid_argument("difficulty must be a positive finite number");
    }
    // difficulty = mantissa * 2^(exp - 53) exactly, so the division below is
    // carried out in integers.
    int exp = 0;
    const double frac = std::frexp(difficulty, &exp);
    const auto mantissa = static_cast<uint64_t>(std::ldexp(frac, 53));
    BigUint target = (DecodeCompact(pow.diff1_bits) << 53) / mantissa;
    if (exp > 0) {
        target >>= exp;
    } else {
        target <<= -exp;
    }
    const BigUint limit = DecodeCompact(pow.pow_limit_bits);
    if (target > limit) target = limit;
    if (target == 0) target = 1;
    return EncodeCompact(target);
}

double HashesPerUnitDifficulty(const PowParams& pow)
{
    return WorkOf(pow.diff1_bits).convert_to<double>();
}

void RetargetParams::Validate() const
{
    if (window_blocks < 1) throw std::invalid_argument("retarget.window_blocks must be >= 1");
    if (!(target_window_minutes > 0.0)) throw std::invalid_argument("retarget.target_window_minutes must be > 0");
    if (target_window_minutes != static_cast<double>(window_blocks) * 10.0) {
        throw std::invalid_argument("retarget.target_window_minutes must equal window_blocks * 10");
    }
    if (!(clamp_factor > 1.0)) throw std::invalid_argument("retarget.clamp_factor must be > 1");
}

double Retarget(double old_difficulty, double actual_window_minutes, const RetargetParams& params)
{
    if (!(old_difficulty > 0.0)) throw std::invalid_argument("old difficulty must be > 0");
    if (!(actual_window_minutes > 0.0)) throw std::invalid_argument("actual window must be > 0 minutes");

    double ratio = params.rule == RetargetRule::TargetOverActual
                       ? params.target_window_minutes / actual_window_minutes
                       : actual_window_minutes / params.target_window_minutes;
    if (params.clamp_enabled) {
        ratio = std::clamp(ratio, 1.0 / params.clamp_factor, params.clamp_factor);
    }
    return old_difficulty * ratio;
}

uint32_t NextBits(const BlockTree& tree, const Hash256& parent, const RetargetParams& retarget, const PowParams& pow)
{
    const Block& last = *tree.Get(parent).block;
    if (last.height == 0 || last.height % retarget.window_blocks != 0) return last.header.bits;

    const Block& first = *tree.Get(tree.AncestorAt(parent, last.height - retarget.window_blocks)).block;
    // Timestamps are whole seconds; a window that short is degenerate anyway.
    const int64_t span_s = std::max<int64_t>(int64_t{last.header.timestamp} - int64_t{first.header.timestamp}, 1);
    const double next = Retarget(DifficultyFromBits(last.header.bits, pow), static_cast<double>(span_s) / 60.0, retarget);
    return BitsForDifficulty(next, pow);
}

bool IsBetterTip(const BlockTree::Entry& a, const BlockTree::Entry& b)
{
    if (a.cumulative_work != b.cumulative_work) return a.cumulative_work > b.cumulative_work;
    return a.arrival_index < b.arrival_index;
}

Hash256 ForkChoice(const BlockTree& tree)
{
    if (tree.Empty()) throw UnknownBlock("fork choice on an empty tree");
    const BlockTree::Entry* best = nullptr;
    Hash256 best_hash;
    for (const Hash256& tip : tree.Tips()) {
        const BlockTree::Entry& entry = tree.Get(tip);
        if (!best || IsBetterTip(entry, *best)) {
            best = &entry;
            best_hash = tip;
        }
    }
    return best_hash;
}

int64_t Confirmations(const BlockTree& tree, const Hash256& block_hash)
{
    const BlockTree::Entry& entry = tree.Get(block_hash);
    const Hash256 tip = ForkChoice(tree);
    if (!tree.IsAncestorOrSelf(block_hash, tip)) return 0;
    return 1 + tree.Get(tip).block->height - entry.block->height;
}

} // namespace nakasim
