// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace swelint
{
using Digest256 = std::array<std::uint8_t, 32>;

/// Keccak-256 as used by Ethereum (original 0x01 padding, not FIPS 202).
Digest256 keccak256(std::span<const std::uint8_t> data) noexcept;
Digest256 keccak256(std::string_view data) noexcept;

std::string to_hex(std::span<const std::uint8_t> bytes);

struct SelectorEntry
{
    std::string signature;
    std::array<std::uint8_t, 4> selector{};

    [[nodiscard]] std::string hex() const { return to_hex(selector); }
    [[nodiscard]] std::uint32_t value() const noexcept
    {
        return (std::uint32_t{selector[0]} << 24) | (std::uint32_t{selector[1]} << 16) |
               (std::uint32_t{selector[2]} << 8) | std::uint32_t{selector[3]};
    }
};

/// True for "name(t1,...)" with no whitespace and canonical type names.
bool is_canonical_signature(std::string_view signature);

/// Throws std::invalid_argument unless `signature` is canonical.
SelectorEntry selector(std::string_view signature);
}  // namespace swelint
