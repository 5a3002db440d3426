#include "doctest.h"

#include "../support/keccak_oracle.hpp"
#include "swelint/keccak.hpp"

#include <random>
#include <stdexcept>

using namespace swelint;

TEST_CASE("oracle tables match the generated structure")
{
    const auto rc = test::oracle::round_constants();
    CHECK(rc[0] == 0x0000000000000001ULL);
    CHECK(rc[1] == 0x0000000000008082ULL);
    CHECK(rc[23] == 0x8000000080008008ULL);
    const auto rot = test::oracle::rotation_offsets();
    CHECK(rot[0][0] == 0);
    CHECK(rot[1][0] == 1);
    CHECK(rot[0][1] == 36);
    CHECK(rot[4][4] == 14);
}

TEST_CASE("published vectors")
{
    CHECK(to_hex(keccak256("")) == "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470");
    CHECK(to_hex(keccak256("abc")) == "4e03657aea45a94fc7d47ba826c8d667c0d1e6e33a64a036ec44f58fa12d6c45");
    const std::string_view empty;
    CHECK(test::oracle::hex(test::oracle::keccak256({})) == to_hex(keccak256(empty)));
}

TEST_CASE("library agrees with the oracle on random and boundary inputs")
{
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<std::size_t> length(0, 512);
    std::uniform_int_distribution<int> byte(0, 255);
    std::vector<std::size_t> sizes{0, 1, 135, 136, 137, 271, 272, 273};
    for (int i = 0; i < 1000; ++i)
        sizes.push_back(length(rng));
    for (const auto n : sizes)
    {
        std::vector<std::uint8_t> data(n);
        for (auto& b : data)
            b = static_cast<std::uint8_t>(byte(rng));
        const auto expected = test::oracle::keccak256(data);
        const auto actual = keccak256(std::span<const std::uint8_t>(data));
        REQUIRE_MESSAGE(std::equal(expected.begin(), expected.end(), actual.begin()), "length ", n);
    }
}

TEST_CASE("function selectors")
{
    CHECK(selector("transfer(address,uint256)").hex() == "a9059cbb");
    CHECK(selector("balanceOf(address)").hex() == "70a08231");
    CHECK(selector("upgradeTo_143387(address)").hex() == "4f38fb44");
    CHECK(selector("withdraw_180244(uint256)").hex() == "4f38fb44");
    CHECK(selector("transfer(address,uint256)").value() == 0xa9059cbbu);
}

TEST_CASE("signatures must be canonical")
{
    CHECK(is_canonical_signature("f(uint256[],(address,bool))"));
    CHECK_FALSE(is_canonical_signature("transfer(address, uint256)"));
    CHECK_FALSE(is_canonical_signature("transfer(address,uint)"));
    CHECK_THROWS_AS(selector("nope"), std::invalid_argument);
}
