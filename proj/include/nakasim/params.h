// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef NAKASIM_PARAMS_H
#define NAKASIM_PARAMS_H

#include <cstdint>
#include <string_view>

namespace nakasim {

/** Amount in satoshis. */
using Amount = int64_t;

static constexpr Amount COIN = 100'000'000;

/** Maximum block weight, in weight units. */
static constexpr int64_t MAX_BLOCK_WEIGHT = 4'000'000;
/** Legacy serialized block size limit, in bytes. */
static constexpr int64_t MAX_BLOCK_SERIALIZED_SIZE = 1'000'000;
/** Target spacing between blocks. */
static constexpr int64_t TARGET_SPACING_SECONDS = 600;
/** Blocks with the same depth are buried this far before they are treated as final. */
static constexpr int FINALITY_CONFIRMATIONS = 6;

namespace genesis {
static constexpr int32_t VERSION = 1;
static constexpr std::string_view MERKLE_ROOT_HEX = "4a5e1e4baab89f3a32518a88c31bc87f618f76673e2cc77ab2127b7afdeda33b";
static constexpr uint32_t TIME = 1231006505; // 2009-01-03T18:15:05Z
static constexpr uint32_t BITS = 0x1d00ffff;
static constexpr uint32_t NONCE = 2083236893;
static constexpr std::string_view HASH_HEX = "000000000019d6689c085ae165831e934ff763ae46a2a6c172b3f1b60a8ce26f";
} // namespace genesis

// Informational identifiers; none of them is used by any computation.
namespace asset_info {
static constexpr std::string_view LONG_NAME = "Bitcoin";
static constexpr std::string_view SHORT_NAME = "BTC";
static constexpr std::string_view SHORT_NAME_ALT = "XBT";
static constexpr std::string_view DTI_CODE = "4H95J0R2X";
static constexpr std::string_view FFG_DTI_CODE = "V15WLZJMF";
static constexpr std::string_view ISIN = "XTV15WLZJMF0";
static constexpr int64_t UNIT_MULTIPLIER = COIN;
} // namespace asset_info

// Network upgrade milestones, recorded as calendar years only.
namespace milestones {
static constexpr int GENESIS_YEAR = 2009;
static constexpr int FIRST_HALVING_YEAR = 2012;
static constexpr int SECOND_HALVING_YEAR = 2016;
static constexpr int SEGWIT_YEAR = 2017;
static constexpr int THIRD_HALVING_YEAR = 2020;
static constexpr int TAPROOT_YEAR = 2021;
static constexpr int FOURTH_HALVING_YEAR = 2024;
} // namespace milestones

} // namespace nakasim

#endif // NAKASIM_PARAMS_H
