#pragma once

// Readers and writers for the workbench text formats. Every writer's output
// reads back to the same in-memory value, and readers are strict: unknown
// directives, malformed lines, and inconsistent data raise ValidationError
// with the offending line number. Blank lines and lines starting with '#'
// are skipped everywhere.

#include <string>

#include "atam.hpp"
#include "coopsets.hpp"
#include "reductions.hpp"
#include "tp.hpp"

namespace tastp {

// tile set file: a "tau <int>" line, a "tiles:" section of
// "name N=<label> W=<label> S=<label> E=<label>" lines (empty after '='
// means the blank side), a "strengths:" section of "<label> <int>" lines,
// and a "seed:" section of "<x> <y> <tile-name>" lines
std::string write_tas(const Tas& tas);
Tas read_tas(const std::string& text);

// strength-free tile set: a "seed <x> <y> <tile-index>" line, then per tile
// a "tile <n> <w> <s> <e>" line ('-' stands for the blank side) followed by
// a "coop ..." line listing the cooperation family as direction strings,
// either every member or just the minimal ones after a "min:" marker
std::string write_sftas(const StrengthFreeTas& sf);
StrengthFreeTas read_sftas(const std::string& text);

// inequality system: a "vars: a b c" header, an optional "strict" line, an
// optional "partition: N=a,b W=c S= E=d" line, and one row per line,
// "a + b + c >= TAU" or "a + b < TAU"
std::string write_tp(const TauInequalitySystem& sys);
TauInequalitySystem read_tp(const std::string& text);

// one-in-three instance: a "vars: u1 u2" header, optional "part U1: ..."
// through "part U4: ..." lines (all four or none), then one clause per
// line as three literals, '-' prefix for negation
std::string write_sat(const OneInThreeInstance& inst);
OneInThreeInstance read_sat(const std::string& text);

// shape file: one "<x> <y>" cell per line, duplicates rejected
std::string write_shape(const Shape& s);
Shape read_shape(const std::string& text);

// assembly as "<x> <y> <tile-name>" lines; names resolve against the TAS
std::string write_assembly(const Assembly& a, const Tas& tas);
Assembly read_assembly(const std::string& text, const Tas& tas);

// whole-file helpers; errors carry the path
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace tastp
