// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0

#include "swelint/keccak.hpp"

#include <cctype>
#include <stdexcept>

namespace swelint
{
namespace
{
constexpr std::array<std::uint64_t, 24> round_constants{0x0000000000000001ULL, 0x0000000000008082ULL,
    0x800000000000808aULL, 0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL, 0x0000000000000088ULL,
    0x0000000080008009ULL, 0x000000008000000aULL, 0x000000008000808bULL, 0x800000000000008bULL,
    0x8000000000008089ULL, 0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL, 0x8000000000008080ULL,
    0x0000000080000001ULL, 0x8000000080008008ULL};

// rho offsets and pi lane order for the combined rho+pi step
constexpr std::array<int, 24> rho{1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 2, 14, 27, 41, 56, 8, 25, 43, 62, 18, 39,
    61, 20, 44};
constexpr std::array<int, 24> pi{10, 7, 11, 17, 18, 3, 5, 16, 8, 21, 24, 4, 15, 23, 19, 13, 12, 2, 20, 14, 22, 9,
    6, 1};

constexpr std::size_t rate = 136;

constexpr std::uint64_t rotl(std::uint64_t x, int n) noexcept
{
    return (x << n) | (x >> (64 - n));
}

void keccak_f(std::array<std::uint64_t, 25>& a) noexcept
{
    for (const auto rc : round_constants)
    {
        std::uint64_t c[5];
        for (int x = 0; x < 5; ++x)
            c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
        for (int x = 0; x < 5; ++x)
        {
            const auto d = c[(x + 4) % 5] ^ rotl(c[(x + 1) % 5], 1);
            for (int y = 0; y < 25; y += 5)
                a[y + x] ^= d;
        }
        auto t = a[1];
        for (int i = 0; i < 24; ++i)
        {
            const auto j = pi[i];
            const auto next = a[j];
            a[j] = rotl(t, rho[i]);
            t = next;
        }
        for (int y = 0; y < 25; y += 5)
        {
            std::uint64_t row[5];
            for (int x = 0; x < 5; ++x)
                row[x] = a[y + x];
            for (int x = 0; x < 5; ++x)
                a[y + x] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
        }
        a[0] ^= rc;
    }
}

void absorb_block(std::array<std::uint64_t, 25>& state, const std::uint8_t* block) noexcept
{
    for (std::size_t i = 0; i < rate / 8; ++i)
    {
        std::uint64_t lane = 0;
        for (int b = 7; b >= 0; --b)
            lane = (lane << 8) | block[i * 8 + b];
        state[i] ^= lane;
    }
    keccak_f(state);
}

bool ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '$';
}

bool ident_char(char c)
{
    return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)) != 0;
}

// type := ident suffix* | '(' [type (',' type)*] ')' suffix*
// suffix := '[' digits? ']'
bool parse_type(std::string_view s, std::size_t& i)
{
    if (i < s.size() && s[i] == '(')
    {
        ++i;
        if (i < s.size() && s[i] != ')')
        {
            while (true)
            {
                if (!parse_type(s, i))
                    return false;
                if (i < s.size() && s[i] == ',')
                {
                    ++i;
                    continue;
                }
                break;
            }
        }
        if (i >= s.size() || s[i] != ')')
            return false;
        ++i;
    }
    else
    {
        const auto start = i;
        if (i >= s.size() || !ident_start(s[i]))
            return false;
        while (i < s.size() && (ident_char(s[i]) || s[i] == '.'))
            ++i;
        const auto name = s.substr(start, i - start);
        if (name == "uint" || name == "int" || name == "byte" || name == "fixed" || name == "ufixed")
            return false;
    }
    while (i < s.size() && s[i] == '[')
    {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])) != 0)
            ++i;
        if (i >= s.size() || s[i] != ']')
            return false;
        ++i;
    }
    return true;
}
}  // namespace

Digest256 keccak256(std::span<const std::uint8_t> data) noexcept
{
    std::array<std::uint64_t, 25> state{};
    std::size_t off = 0;
    for (; data.size() - off >= rate; off += rate)
        absorb_block(state, data.data() + off);

    std::array<std::uint8_t, rate> last{};
    const auto rest = data.size() - off;
    for (std::size_t i = 0; i < rest; ++i)
        last[i] = data[off + i];
    last[rest] ^= 0x01;
    last[rate - 1] ^= 0x80;
    absorb_block(state, last.data());

    Digest256 out{};
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(state[i / 8] >> (8 * (i % 8)));
    return out;
}

Digest256 keccak256(std::string_view data) noexcept
{
    return keccak256(std::span(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

std::string to_hex(std::span<const std::uint8_t> bytes)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (const auto b : bytes)
    {
        out += digits[b >> 4];
        out += digits[b & 0xf];
    }
    return out;
}

bool is_canonical_signature(std::string_view s)
{
    std::size_t i = 0;
    if (s.empty() || !ident_start(s[0]))
        return false;
    while (i < s.size() && ident_char(s[i]))
        ++i;
    if (i >= s.size() || s[i] != '(')
        return false;
    // The parameter list has the same shape as a tuple type.
    if (!parse_type(s, i))
        return false;
    return i == s.size() && s.back() == ')';
}

SelectorEntry selector(std::string_view signature)
{
    if (!is_canonical_signature(signature))
        throw std::invalid_argument("not a canonical function signature: '" + std::string(signature) + "'");
    SelectorEntry e;
    e.signature = std::string(signature);
    const auto digest = keccak256(signature);
    std::copy_n(digest.begin(), 4, e.selector.begin());
    return e;
}
}  // namespace swelint
