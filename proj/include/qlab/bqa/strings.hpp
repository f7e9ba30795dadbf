#pragma once

#include <string>
#include <vector>

#include "qlab/rep/rep.hpp"

namespace qlab {

struct Letter {
  int arrow = 0;
  bool inverse = false;
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// A walk in the quiver: a direct letter x goes source(x) -> target(x), an inverse letter
// goes backwards. `start` matters only for the empty word.
struct StringWord {
  int start = 0;
  std::vector<Letter> letters;
};

// Tokens separated by spaces; "x" is direct, "x-" inverse. Errors: InvalidWord.
StringWord parse_word(const Algebra& alg, const std::string& text, const std::string& start_vertex = "");
std::string word_to_string(const Algebra& alg, const StringWord& w);
StringWord inverse_word(const Algebra& alg, const StringWord& w);

// At most two arrows in and out of each vertex, and every arrow has at most one
// continuation on each side that is not a zero path.
bool is_special_biserial(const Algebra& alg);

// Errors: NotSpecialBiserial, InvalidWord.
Rep string_module(const AlgebraPtr& alg, const StringWord& w);
// Smallest rotation of a cyclic word; the Jordan block sits on its last direct letter.
StringWord canonical_rotation(const Algebra& alg, const StringWord& band);
// Errors: NotSpecialBiserial, InvalidWord, ZeroParameter.
Rep band_module(const AlgebraPtr& alg, const StringWord& band, std::uint32_t lambda, int m = 1);

}  // namespace qlab
