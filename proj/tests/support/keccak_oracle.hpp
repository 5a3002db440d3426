// Reference Keccak-256 used to cross-check the library implementation.
// Round constants and rotation offsets are generated rather than tabulated.
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace swelint::test::oracle
{
/// One output bit of the degree-8 LFSR with taps x^8 + x^6 + x^5 + x^4 + 1.
inline bool lfsr_bit(int t)
{
    if (t % 255 == 0)
        return true;
    unsigned r = 1;
    for (int i = 1; i <= t % 255; ++i)
    {
        r <<= 1;
        if (r & 0x100)
            r ^= 0x171;
    }
    return (r & 1) != 0;
}

inline std::array<std::uint64_t, 24> round_constants()
{
    std::array<std::uint64_t, 24> rc{};
    for (int round = 0; round < 24; ++round)
        for (int j = 0; j <= 6; ++j)
            if (lfsr_bit(j + 7 * round))
                rc[static_cast<std::size_t>(round)] |= std::uint64_t{1} << ((1u << j) - 1);
    return rc;
}

/// offsets[x][y]
inline std::array<std::array<int, 5>, 5> rotation_offsets()
{
    std::array<std::array<int, 5>, 5> r{};
    int x = 1;
    int y = 0;
    for (int t = 0; t < 24; ++t)
    {
        r[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = ((t + 1) * (t + 2) / 2) % 64;
        const int nx = y;
        const int ny = (2 * x + 3 * y) % 5;
        x = nx;
        y = ny;
    }
    return r;
}

inline std::uint64_t rotl(std::uint64_t v, int n)
{
    n %= 64;
    return n == 0 ? v : (v << n) | (v >> (64 - n));
}

using Lanes = std::array<std::array<std::uint64_t, 5>, 5>;  // a[x][y]

inline void permute(Lanes& a)
{
    static const auto rc = round_constants();
    static const auto rot = rotation_offsets();
    for (int round = 0; round < 24; ++round)
    {
        std::array<std::uint64_t, 5> c{};
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                c[x] ^= a[x][y];
        for (int x = 0; x < 5; ++x)
        {
            const auto d = c[(x + 4) % 5] ^ rotl(c[(x + 1) % 5], 1);
            for (int y = 0; y < 5; ++y)
                a[x][y] ^= d;
        }
        Lanes b{};
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                b[y][(2 * x + 3 * y) % 5] = rotl(a[x][y], rot[x][y]);
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                a[x][y] = b[x][y] ^ (~b[(x + 1) % 5][y] & b[(x + 2) % 5][y]);
        a[0][0] ^= rc[static_cast<std::size_t>(round)];
    }
}

inline std::array<std::uint8_t, 32> keccak256(std::span<const std::uint8_t> data)
{
    constexpr std::size_t rate = 136;
    std::vector<std::uint8_t> msg(data.begin(), data.end());
    msg.push_back(0x01);
    while (msg.size() % rate != 0)
        msg.push_back(0x00);
    msg.back() |= 0x80;

    Lanes a{};
    for (std::size_t block = 0; block < msg.size(); block += rate)
    {
        for (std::size_t i = 0; i < rate; ++i)
        {
            const auto lane = i / 8;
            a[lane % 5][lane / 5] ^= std::uint64_t{msg[block + i]} << (8 * (i % 8));
        }
        permute(a);
    }
    std::array<std::uint8_t, 32> out{};
    for (std::size_t i = 0; i < out.size(); ++i)
    {
        const auto lane = i / 8;
        out[i] = static_cast<std::uint8_t>(a[lane % 5][lane / 5] >> (8 * (i % 8)));
    }
    return out;
}

inline std::string hex(std::span<const std::uint8_t> bytes)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    for (const auto b : bytes)
    {
        s += digits[b >> 4];
        s += digits[b & 0xf];
    }
    return s;
}
}  // namespace swelint::test::oracle
