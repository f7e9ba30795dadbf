#pragma once

#include <string>
#include <string_view>

#include "qlab/bqa/algebra.hpp"

namespace qlab {

// Parses the algebra DSL:
//   algebra <name> { field <p>; composition <left_to_right|right_to_left>;
//                    vertices v1 v2 ...; arrow <id>: <v> -> <v>;
//                    rel <path> = 0; rel <c>*<path> + <c>*<path> = 0; nilpotency <N>; }
// '#' starts a comment running to end of line.
// `default_field` is used when the text has no `field` statement.
AlgebraSpec parse_spec(std::string_view text, std::uint32_t default_field = 101);
AlgebraPtr parse_algebra(std::string_view text, std::uint32_t default_field = 101);

// Canonical text; parse_algebra(print_algebra(A)) reproduces A's presentation.
// The nilpotency line carries the verified bound.
std::string print_algebra(const Algebra& alg);

}  // namespace qlab
