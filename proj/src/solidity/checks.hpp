// swelint: smart contract weakness linter
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "analysis.hpp"

namespace swelint::rules
{
void check_100(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_101(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_102(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_103(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_104(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_107(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_109(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_110(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_111(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_112(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_113(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_114(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_115(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_116(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_117(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_118(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_119(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_120(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_121(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_124(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_125(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_126(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_127(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_128(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_129(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_132(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_133(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_134(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_135(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_136(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_137(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_138(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_141(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_142(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_143(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_144(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_146(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_148(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_150(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_151(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_152(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_153(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_154(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_155(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_156(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_157(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_160(const FileAnalysis& fa, std::vector<RawFinding>& out);
void check_161(const FileAnalysis& fa, std::vector<RawFinding>& out);

void check_123(const SolidityProgram& program, std::vector<RawFinding>& out);
void check_158(const SolidityProgram& program, std::vector<RawFinding>& out);
}  // namespace swelint::rules
