// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0

#include "swelint/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    std::ios::sync_with_stdio(false);
    return swelint::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
