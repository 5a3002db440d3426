// Findings each transcribed example must produce.
#pragma once

#include <array>
#include <string_view>

namespace swelint::test
{
struct Expected
{
    std::string_view file;       // relative to the corpus root
    int rule;
    std::string_view construct;  // empty: any construct
    std::size_t count;           // minimum number of findings
};

inline constexpr std::array<Expected, 31> solidity_expectations{{
    {"figures/fig02.sol", 100, "HashForEther.withdrawWinnings", 1},
    {"figures/fig02.sol", 100, "HashForEther._sendWinnings", 1},
    {"figures/fig03.sol", 101, "IntegerOverflowMinimal.run", 1},
    {"figures/fig04.sol", 103, "", 14},
    {"figures/fig05.sol", 104, "vulContract.createAccountInSmartContract2", 1},
    {"figures/fig06.sol", 107, "Example.withdraw", 1},
    {"figures/fig07.sol", 109, "SecretContract.setGame", 1},
    {"figures/fig08.sol", 110, "Example.run", 1},
    {"figures/fig10.sol", 114, "Example.answer", 1},
    {"figures/fig11.sol", 115, "Example.sendTo", 1},
    {"figures/fig12.sol", 116, "Example.isSaleFinished", 1},
    {"figures/fig13.sol", 118, "Example.example", 1},
    {"figures/fig14.sol", 119, "PreNFTsale.nftPrice", 1},
    {"figures/fig15.sol", 120, "RandomNumberGenerator.random", 2},
    {"figures/fig16.sol", 123, "Example.getResult", 1},
    {"figures/fig17.sol", 126, "Example.createUser", 1},
    {"figures/fig18.sol", 127, "FunctionTypes.breakIt", 1},
    {"figures/fig19.sol", 128, "Example.distributeRevenue", 1},
    {"figures/fig20.sol", 129, "Example.exampleFunction", 1},
    {"figures/fig21.sol", 132, "Example.totalFunds", 1},
    {"figures/fig22.sol", 133, "AccessControl.addUsers", 1},
    {"figures/fig23.sol", 134, "Example1.usersManagement", 1},
    {"figures/fig24.sol", 135, "Example1.withdraw", 1},
    {"figures/fig25.sol", 143, "King.receive", 1},
    {"figures/fig26.sol", 146, "Example", 1},
    {"figures/fig28.sol", 150, "Example.transferGains", 2},
    {"figures/fig30.sol", 152, "transferFrom", 1},
    {"figures/fig31.sol", 154, "require", 1},
    {"figures/fig32.sol", 155, "Example.owner", 1},
    {"figures/fig32.sol", 155, "Example.withdrawAll", 1},
    {"figures/fig33.sol", 113, "Example.withdrawAll", 1},
}};

inline constexpr std::array<Expected, 4> chaincode_expectations{{
    {"figures/fig34.go", 166, "", 1},
    {"figures/fig35.go", 167, "", 1},
    {"figures/fig36.go", 173, "", 1},
    {"figures/fig37.go", 175, "", 1},
}};
}  // namespace swelint::test
