// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef NAKASIM_CHAIN_H
#define NAKASIM_CHAIN_H

#include <nakasim/hash.h>
#include <nakasim/params.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace nakasim {

/** Arbitrary-precision unsigned arithmetic for targets and accumulated work. */
using BigUint = boost::multiprecision::cpp_int;

class ChainError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class InvalidCompactEncoding : public ChainError
{
public:
    using ChainError::ChainError;
};

/** Parent not in the tree yet; callers may buffer the block and retry. */
class UnknownParent : public ChainError
{
public:
    using ChainError::ChainError;
};

class InvalidPow : public ChainError
{
public:
    using ChainError::ChainError;
};

class InvalidBlock : public ChainError
{
public:
    using ChainError::ChainError;
};

class UnknownBlock : public ChainError
{
public:
    using ChainError::ChainError;
};

struct BlockHeader {
    static constexpr std::size_t kSerializedSize = 80;

    int32_t version{0};
    Hash256 prev_hash;
    Hash256 merkle_root;
    uint32_t timestamp{0};
    uint32_t bits{0};
    uint32_t nonce{0};

    bool operator==(const BlockHeader&) const = default;
};

using SerializedHeader = std::array<uint8_t, BlockHeader::kSerializedSize>;

/** Bitcoin wire layout: integers little-endian, hashes in internal byte order. */
SerializedHeader SerializeHeader(const BlockHeader& header);
BlockHeader ParseHeader(std::span<const uint8_t> bytes);
/** 160 hex characters, as stored in fixture files. */
BlockHeader ParseHeaderHex(std::string_view hex);

Hash256 BlockHash(const BlockHeader& header);

/** The real main-network genesis header. */
BlockHeader GenesisHeader();

using TxId = uint64_t;

/** Abstract transaction: only what the fee market needs. */
struct SimTransaction {
    TxId id{0};
    Amount fee_sat{0};
    int64_t weight_wu{1};

    bool operator==(const SimTransaction&) const = default;
};

/** Throws InvalidBlock naming the violated bound. */
void CheckTransaction(const SimTransaction& tx);

Hash256 TxHash(TxId id);

struct Block {
    BlockHeader header;
    std::vector<SimTransaction> transactions;
    int64_t tx_count{0};
    int64_t height{0};
    std::string miner_id;

    Hash256 GetHash() const { return BlockHash(header); }
    int64_t TotalWeight() const;
    Amount TotalFees() const;
};

/**
 * Pairwise double-SHA-256 tree over the given leaves, duplicating the last
 * element on odd levels. Empty input yields the null hash.
 */
Hash256 ComputeMerkleRoot(std::vector<Hash256> leaves);

/** Merkle root over a coinbase leaf (miner, height) followed by transaction ids. */
Hash256 BlockMerkleRoot(const std::string& miner_id, int64_t height, const std::vector<SimTransaction>& txs);

/**
 * Decode a compact target. Negative or overflowing encodings throw
 * InvalidCompactEncoding; a zero target is returned as zero.
 */
BigUint DecodeCompact(uint32_t bits);
/** Round a target down to compact precision and encode it. */
uint32_t EncodeCompact(const BigUint& target);

/** Expected hashes to find a block: floor(2^256 / (target + 1)). Throws on target outside (0, 2^256). */
BigUint WorkForTarget(const BigUint& target);
BigUint WorkOf(uint32_t bits);

/** Interpret a digest as a 256-bit little-endian unsigned integer. */
BigUint HashToInteger(const Hash256& hash);

/**
 * Forked chain state. Blocks are immutable once stored and shared by
 * pointer, so many trees can hold the same block cheaply.
 *
 * Mutation is single-writer; concurrent readers of an unchanging tree are fine.
 */
class BlockTree
{
public:
    struct Entry {
        std::shared_ptr<const Block> block;
        BigUint cumulative_work;
        uint64_t arrival_index{0};
    };

    enum class PowCheck { Verify, Skip };

    /**
     * Store a block. The first block added becomes the genesis; every later
     * block must name a stored parent and sit at parent height + 1.
     * Returns false (tree unchanged) if the block is already present.
     */
    bool AddBlock(std::shared_ptr<const Block> block, PowCheck pow = PowCheck::Verify);
    bool AddBlock(const Block& block, PowCheck pow = PowCheck::Verify)
    {
        return AddBlock(std::make_shared<const Block>(block), pow);
    }

    bool Contains(const Hash256& hash) const { return m_blocks.count(hash) != 0; }
    const Entry& Get(const Hash256& hash) const;
    const Entry* Find(const Hash256& hash) const;

    bool Empty() const { return m_blocks.empty(); }
    std::size_t Size() const { return m_blocks.size(); }
    const Hash256& GenesisHash() const;
    const std::set<Hash256>& Tips() const { return m_tips; }

    /** Ancestor of `hash` at the given height (or the block itself). Throws UnknownBlock. */
    Hash256 AncestorAt(const Hash256& hash, int64_t height) const;
    bool IsAncestorOrSelf(const Hash256& ancestor, const Hash256& descendant) const;

private:
    std::unordered_map<Hash256, Entry> m_blocks;
    std::set<Hash256> m_tips;
    std::optional<Hash256> m_genesis;
    uint64_t m_next_arrival{0};
};

} // namespace nakasim

#endif // NAKASIM_CHAIN_H
