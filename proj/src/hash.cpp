// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <nakasim/hash.h>

#include <openssl/sha.h>

#include <algorithm>
#include <stdexcept>

namespace nakasim {

namespace {

int HexDigit(char c)
{
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

constexpr char kHexChars[] = "0123456789abcdef";

} // namespace

std::vector<uint8_t> ParseHexBytes(std::string_view hex)
{
    if (hex.size() % 2 != 0) throw std::invalid_argument("hex string has odd length");
    std::vector<uint8_t> out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        const int hi = HexDigit(hex[i]);
        const int lo = HexDigit(hex[i + 1]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("invalid hex character");
        out.push_back(static_cast<uint8_t>((hi << 4) | lo));
    }
    return out;
}

std::string ToHexBytes(std::span<const uint8_t> data)
{
    std::string out;
    out.reserve(data.size() * 2);
    for (uint8_t b : data) {
        out.push_back(kHexChars[b >> 4]);
        out.push_back(kHexChars[b & 0x0f]);
    }
    return out;
}

Hash256 Hash256::FromHex(std::string_view hex)
{
    if (hex.size() != 2 * kSize) throw std::invalid_argument("Hash256 hex must be 64 characters");
    const std::vector<uint8_t> raw = ParseHexBytes(hex);
    Hash256 h;
    std::reverse_copy(raw.begin(), raw.end(), h.m_bytes.begin());
    return h;
}

std::string Hash256::ToHex() const
{
    std::array<uint8_t, kSize> rev;
    std::reverse_copy(m_bytes.begin(), m_bytes.end(), rev.begin());
    return ToHexBytes(rev);
}

bool Hash256::IsNull() const
{
    return std::all_of(m_bytes.begin(), m_bytes.end(), [](uint8_t b) { return b == 0; });
}

Hash256 Sha256(std::span<const uint8_t> data)
{
    Hash256 out;
    SHA256(data.data(), data.size(), out.bytes().data());
    return out;
}

Hash256 DoubleSha256(std::span<const uint8_t> data)
{
    const Hash256 first = Sha256(data);
    return Sha256(first.bytes());
}

} // namespace nakasim
