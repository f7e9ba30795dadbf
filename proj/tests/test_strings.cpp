#include "doctest.h"

#include "qlab/bqa/dsl.hpp"
#include "qlab/bqa/families.hpp"
#include "qlab/bqa/strings.hpp"
#include "qlab/stable/stable.hpp"
#include "support.hpp"

using namespace qlab;
using qlab::test::error_of;

TEST_CASE("string modules") {
  auto a = family_A(2);
  CHECK(is_special_biserial(*a));
  auto s1 = string_module(a, parse_word(*a, "", "1"));
  CHECK(s1.dims() == std::vector<std::size_t>{1, 0, 0});
  CHECK(is_isomorphic(s1, simple_module(a, 0)));
  auto w = parse_word(*a, "g1- a2");
  auto m = string_module(a, w);
  CHECK(m.total_dim() == w.letters.size() + 1);
  CHECK(m.satisfies_relations());
  CHECK(is_indecomposable(m));
  CHECK(is_isomorphic(m, string_module(a, inverse_word(*a, w))));
  CHECK(word_to_string(*a, w) == "g1- a2");
  auto p = parse_word(*a, "a1 a2");
  auto uni = string_module(a, p);
  CHECK(is_isomorphic(layers(uni).top, simple_module(a, 0)));
}

TEST_CASE("string module with prescribed top and socle") {
  auto b = family_B(3);
  auto m = string_module(b, parse_word(*b, "d2"));
  CHECK(m.total_dim() == 2);
  auto ly = layers(m);
  CHECK(is_isomorphic(ly.top, simple_module(b, 3)));
  CHECK(is_isomorphic(ly.socle, simple_module(b, 2)));
}

TEST_CASE("band modules") {
  auto k = kronecker_trivext();
  auto band = parse_word(*k, "a1 g1-");
  for (std::uint32_t lambda = 1; lambda <= 5; ++lambda) {
    auto m = band_module(k, band, lambda);
    CHECK(m.satisfies_relations());
    CHECK(is_indecomposable(m));
    CHECK(is_isomorphic(tau(m), m));
  }
  CHECK(band_module(k, band, 3, 2).total_dim() == 2 * band.letters.size());
  CHECK(is_indecomposable(band_module(k, band, 3, 2)));
  auto a = family_A(2);
  auto ab = parse_word(*a, "a2 g1-");
  auto m1 = band_module(a, ab, 1), m2 = band_module(a, ab, 2), m3 = band_module(a, ab, 3);
  CHECK(m1.dims() == m2.dims());
  CHECK_FALSE(is_isomorphic(m1, m2));
  CHECK_FALSE(is_isomorphic(m1, m3));
  CHECK_FALSE(is_isomorphic(m2, m3));
  CHECK(is_isomorphic(band_module(a, canonical_rotation(*a, parse_word(*a, "g1- a2")), 2), m2) ==
        is_isomorphic(band_module(a, parse_word(*a, "g1- a2"), 2), m2));
}

TEST_CASE("word errors") {
  auto a = family_A(2);
  auto k = kronecker_trivext();
  auto band = parse_word(*k, "a1 g1-");
  CHECK(error_of([&] { band_module(k, band, 0); }) == ErrorKind::ZeroParameter);
  CHECK(error_of([&] { string_module(a, parse_word(*a, "a1 a2 a3 a1")); }) == ErrorKind::InvalidWord);
  CHECK(error_of([&] { parse_word(*a, "zz"); }) == ErrorKind::InvalidWord);
  CHECK(error_of([&] { parse_word(*a, "a1 a3"); }) == ErrorKind::InvalidWord);
  auto h = parse_algebra("algebra T { vertices 1 2 3 4; arrow a: 1 -> 2; arrow b: 1 -> 3; arrow c: 1 -> 4; }");
  CHECK_FALSE(is_special_biserial(*h));
  CHECK(error_of([&] { string_module(h, parse_word(*h, "a")); }) == ErrorKind::NotSpecialBiserial);
}
