// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef NAKASIM_HASH_H
#define NAKASIM_HASH_H

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nakasim {

/**
 * 32-byte digest stored in internal byte order (the order SHA-256 emits).
 * The display form reverses the bytes, so block hashes render with their
 * leading zeros first, as block explorers show them.
 */
class Hash256
{
public:
    static constexpr std::size_t kSize = 32;

    constexpr Hash256() = default;
    explicit Hash256(const std::array<uint8_t, kSize>& bytes) : m_bytes(bytes) {}

    /** Parse 64 hex characters in display (byte-reversed) order. Throws std::invalid_argument. */
    static Hash256 FromHex(std::string_view hex);

    std::string ToHex() const;

    bool IsNull() const;

    const std::array<uint8_t, kSize>& bytes() const { return m_bytes; }
    std::array<uint8_t, kSize>& bytes() { return m_bytes; }

    auto operator<=>(const Hash256&) const = default;

private:
    std::array<uint8_t, kSize> m_bytes{};
};

Hash256 Sha256(std::span<const uint8_t> data);

/** SHA-256(SHA-256(data)) */
Hash256 DoubleSha256(std::span<const uint8_t> data);

/** Hex helpers for fixture files. Bytes are kept in the order given. */
std::string ToHexBytes(std::span<const uint8_t> data);
std::vector<uint8_t> ParseHexBytes(std::string_view hex);

} // namespace nakasim

template <>
struct std::hash<nakasim::Hash256> {
    std::size_t operator()(const nakasim::Hash256& h) const noexcept
    {
        // Digest bytes are already uniformly distributed.
        std::size_t out = 0;
        for (int i = 0; i < 8; ++i) out |= std::size_t{h.bytes()[i]} << (8 * i);
        return out;
    }
};

#endif // NAKASIM_HASH_H
