#pragma once

#include <optional>
#include <string_view>

#include "diskvolt/analytic.hpp"
#include "diskvolt/spaces.hpp"

namespace diskvolt {

// Context for symbols that depend on space parameters (fa).
struct SymbolContext {
    std::optional<SpaceParams> space;
};

// Symbol grammar:
//   expr    := term ('+' term)*
//   term    := factor ('*' factor)*
//   factor  := pow(a=<c>, gamma=<r>[, c=<c>])
//            | log(a=<c>, m=<int>[, c=<c>])
//            | poly(<c>, <c>, ...)
//            | fa(a=<c>)
//   <c>     := complex literal: 1, -0.5, 0.9i, 0.5+0.25i
// Whitespace is ignored. Errors throw SymbolParseError with the offending
// position.
AnalyticFn parse_symbol(std::string_view text, const SymbolContext& ctx = {});

}  // namespace diskvolt
