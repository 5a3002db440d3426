// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "swelint/ast.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace swelint::sol
{
/// Builds a SourceUnit from a token list. Unsupported statements become
/// `opaque` nodes and syntax errors are recorded as diagnostics; the parser
/// recovers at statement, member and contract granularity and never throws.
SourceUnit parse(std::vector<Token> tokens, std::string path);

/// tokenize + parse.
SourceUnit parse_source(std::string_view source, std::string path);
}  // namespace swelint::sol
