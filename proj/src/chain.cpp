// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <nakasim/chain.h>
#include <nakasim/consensus.h>

#include <algorithm>
#include <cstring>

namespace nakasim {

namespace {

void WriteLE32(uint8_t* out, uint32_t x)
{
    out[0] = uint8_t(x);
    out[1] = uint8_t(x >> 8);
    out[2] = uint8_t(x >> 16);
    out[3] = uint8_t(x >> 24);
}

uint32_t ReadLE32(const uint8_t* in)
{
    return uint32_t{in[0]} | (uint32_t{in[1]} << 8) | (uint32_t{in[2]} << 16) | (uint32_t{in[3]} << 24);
}

void WriteLE64(uint8_t* out, uint64_t x)
{
    for (int i = 0; i < 8; ++i) out[i] = uint8_t(x >> (8 * i));
}

const BigUint& TwoPow256()
{
    static const BigUint value = BigUint(1) << 256;
    return value;
}

} // namespace

SerializedHeader SerializeHeader(const BlockHeader& header)
{
    SerializedHeader out{};
    WriteLE32(out.data(), static_cast<uint32_t>(header.version));
    std::memcpy(out.data() + 4, header.prev_hash.bytes().data(), 32);
    std::memcpy(out.data() + 36, header.merkle_root.bytes().data(), 32);
    WriteLE32(out.data() + 68, header.timestamp);
    WriteLE32(out.data() + 72, header.bits);
    WriteLE32(out.data() + 76, header.nonce);
    return out;
}

BlockHeader ParseHeader(std::span<const uint8_t> bytes)
{
    if (bytes.size() != BlockHeader::kSerializedSize) {
        throw std::invalid_argument("serialized header must be exactly 80 bytes");
    }
    BlockHeader h;
    h.version = static_cast<int32_t>(ReadLE32(bytes.data()));
    std::memcpy(h.prev_hash.bytes().data(), bytes.data() + 4, 32);
    std::memcpy(h.merkle_root.bytes().data(), bytes.data() + 36, 32);
    h.timestamp = ReadLE32(bytes.data() + 68);
    h.bits = ReadLE32(bytes.data() + 72);
    h.nonce = ReadLE32(bytes.data() + 76);
    return h;
}

BlockHeader ParseHeaderHex(std::string_view hex)
{
    if (hex.size() != 2 * BlockHeader::kSerializedSize) {
        throw std::invalid_argument("header hex must be 160 characters");
    }
    const std::vector<uint8_t> raw = ParseHexBytes(hex);
    return ParseHeader(raw);
}

Hash256 BlockHash(const BlockHeader& header)
{
    const SerializedHeader raw = SerializeHeader(header);
    return DoubleSha256(raw);
}

BlockHeader GenesisHeader()
{
    BlockHeader h;
    h.version = genesis::VERSION;
    h.merkle_root = Hash256::FromHex(genesis::MERKLE_ROOT_HEX);
    h.timestamp = genesis::TIME;
    h.bits = genesis::BITS;
    h.nonce = genesis::NONCE;
    return h;
}

void CheckTransaction(const SimTransaction& tx)
{
    if (tx.fee_sat < 0) throw InvalidBlock("transaction fee_sat must be >= 0");
    if (tx.weight_wu <= 0) throw InvalidBlock("transaction weight_wu must be > 0");
    if (tx.weight_wu > MAX_BLOCK_WEIGHT) throw InvalidBlock("transaction weight_wu exceeds 4,000,000");
}

Hash256 TxHash(TxId id)
{
    std::array<uint8_t, 8> raw;
    WriteLE64(raw.data(), id);
    return DoubleSha256(raw);
}

int64_t Block::TotalWeight() const
{
    int64_t total = 0;
    for (const auto& tx : transactions) total += tx.weight_wu;
    return total;
}

Amount Block::TotalFees() const
{
    Amount total = 0;
    for (const auto& tx : transactions) total += tx.fee_sat;
    return total;
}

Hash256 ComputeMerkleRoot(std::vector<Hash256> leaves)
{
    if (leaves.empty()) return Hash256{};
    while (leaves.size() > 1) {
        if (leaves.size() % 2 == 1) leaves.push_back(leaves.back());
        std::vector<Hash256> next;
        next.reserve(leaves.size() / 2);
        for (std::size_t i = 0; i < leaves.size(); i += 2) {
            std::array<uint8_t, 64> pair;
            std::memcpy(pair.data(), leaves[i].bytes().data(), 32);
            std::memcpy(pair.data() + 32, leaves[i + 1].bytes().data(), 32);
            next.push_back(DoubleSha256(pair));
        }
        leaves = std::move(next);
    }
    return leaves.front();
}

Hash256 BlockMerkleRoot(const std::string& miner_id, int64_t height, const std::vector<SimTransaction>& txs)
{
    std::vector<uint8_t> coinbase(miner_id.begin(), miner_id.end());
    coinbase.resize(coinbase.size() + 8);
    WriteLE64(coinbase.data() + miner_id.size(), static_cast<uint64_t>(height));

    std::vector<Hash256> leaves;
    leaves.reserve(txs.size() + 1);
    leaves.push_back(DoubleSha256(coinbase));
    for (const auto& tx : txs) leaves.push_back(TxHash(tx.id));
    return ComputeMerkleRoot(std::move(leaves));
}

BigUint DecodeCompact(uint32_t bits)
{
    const uint32_t size = bits >> 24;
    uint32_t word = bits & 0x007fffff;
    if (word != 0 && (bits & 0x00800000) != 0) {
        throw InvalidCompactEncoding("compact target is negative");
    }
    if (word != 0 && (size > 34 || (word > 0xff && size > 33) || (word > 0xffff && size > 32))) {
        throw InvalidCompactEncoding("compact target overflows 256 bits");
    }
    if (size <= 3) {
        word >>= 8 * (3 - size);
        return BigUint(word);
    }
    return BigUint(word) << (8 * (size - 3));
}

uint32_t EncodeCompact(const BigUint& target)
{
    if (target < 0) throw InvalidCompactEncoding("negative target");
    uint32_t size = target == 0 ? 0 : static_cast<uint32_t>((boost::multiprecision::msb(target) + 1 + 7) / 8);
    uint32_t compact = 0;
    if (size <= 3) {
        compact = static_cast<uint32_t>(target.convert_to<uint64_t>() << (8 * (3 - size)));
    } else {
        compact = static_cast<uint32_t>(BigUint(target >> (8 * (size - 3))).convert_to<uint64_t>());
    }
    // The 0x00800000 bit is the sign; shift the mantissa to keep it clear.
    if (compact & 0x00800000) {
        compact >>= 8;
        ++size;
    }
    return compact | (size << 24);
}

BigUint WorkForTarget(const BigUint& target)
{
    if (target <= 0 || target >= TwoPow256()) {
        throw InvalidCompactEncoding("target outside (0, 2^256) has no defined work");
    }
    return TwoPow256() / (target + 1);
}

BigUint WorkOf(uint32_t bits)
{
    return WorkForTarget(DecodeCompact(bits));
}

BigUint HashToInteger(const Hash256& hash)
{
    BigUint out;
    const auto& b = hash.bytes();
    // Most significant byte is last in internal order.
    boost::multiprecision::import_bits(out, b.rbegin(), b.rend(), 8, true);
    return out;
}

const BlockTree::Entry& BlockTree::Get(const Hash256& hash) const
{
    const Entry* entry = Find(hash);
    if (!entry) throw UnknownBlock("unknown block " + hash.ToHex());
    return *entry;
}

const BlockTree::Entry* BlockTree::Find(const Hash256& hash) const
{
    const auto it = m_blocks.find(hash);
    return it == m_blocks.end() ? nullptr : &it->second;
}

const Hash256& BlockTree::GenesisHash() const
{
    if (!m_genesis) throw UnknownBlock("block tree is empty");
    return *m_genesis;
}

bool BlockTree::AddBlock(std::shared_ptr<const Block> block, PowCheck pow)
{
    if (!block) throw InvalidBlock("null block");
    const Hash256 hash = block->GetHash();
    if (Contains(hash)) return false;

    if (block->tx_count != static_cast<int64_t>(block->transactions.size())) {
        throw InvalidBlock("tx_count does not match the transaction list");
    }
    for (const auto& tx : block->transactions) CheckTransaction(tx);
    if (block->TotalWeight() > MAX_BLOCK_WEIGHT) throw InvalidBlock("block weight exceeds 4,000,000");

    const Entry* parent = nullptr;
    if (m_genesis) {
        parent = Find(block->header.prev_hash);
        if (!parent) throw UnknownParent("parent " + block->header.prev_hash.ToHex() + " not in tree");
        if (block->height != parent->block->height + 1) throw InvalidBlock("height is not parent height + 1");
    } else if (block->height != 0) {
        throw InvalidBlock("first block in a tree must be at height 0");
    }

    BigUint work = WorkOf(block->header.bits);
    if (pow == PowCheck::Verify && !CheckPow(block->header)) {
        throw InvalidPow("block hash " + hash.ToHex() + " exceeds its target");
    }

    Entry entry;
    entry.block = std::move(block);
    entry.cumulative_work = parent ? parent->cumulative_work + work : std::move(work);
    entry.arrival_index = m_next_arrival++;

    if (parent) {
        m_tips.erase(entry.block->header.prev_hash);
    } else {
        m_genesis = hash;
    }
    m_tips.insert(hash);
    m_blocks.emplace(hash, std::move(entry));
    return true;
}

Hash256 BlockTree::AncestorAt(const Hash256& hash, int64_t height) const
{
    const Entry* entry = &Get(hash);
    if (height < 0 || height > entry->block->height) {
        throw UnknownBlock("no ancestor at height " + std::to_string(height));
    }
    Hash256 cur = hash;
    while (entry->block->height > height) {
        cur = entry->block->header.prev_hash;
        entry = &Get(cur);
    }
    return cur;
}

bool BlockTree::IsAncestorOrSelf(const Hash256& ancestor, const Hash256& descendant) const
{
    const Entry& a = Get(ancestor);
    const Entry& d = Get(descendant);
    if (a.block->height > d.block->height) return false;
    return AncestorAt(descendant, a.block->height) == ancestor;
}

} // namespace nakasim
