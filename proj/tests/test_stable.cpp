#include "doctest.h"

#include "qlab/ar/ar.hpp"
#include "qlab/bqa/dsl.hpp"
#include "qlab/bqa/families.hpp"
#include "support.hpp"

using namespace qlab;
using qlab::test::error_of;

namespace {

std::vector<Rep> probes(const AlgebraPtr& a) {
  std::vector<Rep> out;
  for (int v = 0; v < a->num_vertices(); ++v) {
    auto s = simple_module(a, v);
    out.push_back(s);
    out.push_back(syzygy(s, 1));
    out.push_back(syzygy(s, -1));
  }
  return out;
}

}  // namespace

TEST_CASE("covers and syzygies") {
  auto l = local_algebra(2);
  auto s = simple_module(l, 0);
  auto c = cover(s, CoverSide::Projective);
  CHECK(c.cover.total_dim() == 2);
  CHECK(is_isomorphic(c.kernel_or_cokernel, s));
  CHECK(is_isomorphic(syzygy(s, 1), s));
  CHECK(is_isomorphic(tau(s), s));
  CHECK(is_isomorphic(nakayama_functor(s), s));
  auto c2 = nakayama(2, 2);
  CHECK(is_isomorphic(cover(simple_module(c2, 0), CoverSide::Projective).kernel_or_cokernel, simple_module(c2, 1)));
  CHECK(is_isomorphic(syzygy(simple_module(c2, 0), 2), simple_module(c2, 0)));
  auto inj = cover(simple_module(c2, 0), CoverSide::Injective);
  CHECK(is_injective(inj.map));
  CHECK(is_surjective(inj.side_map));
  auto h = parse_algebra("algebra H { vertices 1 2; arrow a: 1 -> 2; }");
  CHECK(error_of([&] { cover(simple_module(h, 0), CoverSide::Injective); }) == ErrorKind::NotSelfInjective);
  CHECK(error_of([&] { tau(simple_module(h, 0)); }) == ErrorKind::NotSelfInjective);
  CHECK(error_of([&] { tau(projective_module(c2, 0)); }) == ErrorKind::ProjectiveInput);
}

TEST_CASE("syzygy and cosyzygy are inverse") {
  for (const auto& a : {family_A(2), nakayama(3, 2), family_B(3)}) {
    for (int v = 0; v < a->num_vertices(); ++v) {
      auto s = simple_module(a, v);
      CHECK(is_isomorphic(syzygy(syzygy(s, 1), -1), s));
      CHECK(is_isomorphic(syzygy(syzygy(s, -1), 1), s));
      CHECK(is_isomorphic(tau(tau(s), -1), s));
      CHECK(is_isomorphic(nakayama_inverse(nakayama_functor(s)), s));
      auto c = cover(s, CoverSide::Projective);
      CHECK(c.kernel_or_cokernel.total_dim() + s.total_dim() == c.cover.total_dim());
    }
  }
}

TEST_CASE("nakayama functor") {
  auto a = family_A(2);
  for (int v = 0; v < 3; ++v) CHECK(is_isomorphic(nakayama_functor(projective_module(a, v)), projective_module(a, v)));
  auto n = nakayama(3, 2);
  for (int v = 0; v < 3; ++v) {
    auto nu_p = nakayama_functor(projective_module(n, v));
    CHECK(is_projective(nu_p));
    CHECK(is_isomorphic(layers(nu_p).socle, simple_module(n, v)));
    CHECK(is_isomorphic(nakayama_functor(simple_module(n, v)), layers(nu_p).top));
  }
  CHECK_FALSE(is_isomorphic(nakayama_functor(simple_module(n, 0)), simple_module(n, 0)));
}

TEST_CASE("serre and auslander-reiten duality") {
  for (const auto& a : {family_A(2), nakayama(3, 2), nakayama(3, 3)}) {
    CAPTURE(a->name());
    const auto ms = probes(a);
    for (const auto& m : ms) {
      const auto serre = nakayama_functor(syzygy(m, 1));
      const auto tm = tau(m);
      for (const auto& n : ms) {
        const auto d = sthom_dim(m, n);
        CHECK(d == sthom_dim(n, serre));
        CHECK(d == ext1(n, tm).dim());
      }
    }
  }
}

TEST_CASE("stable hom") {
  auto l = local_algebra(2);
  auto s = simple_module(l, 0);
  CHECK(sthom_dim(s, s) == 1);
  auto st = sthom(s, s);
  CHECK(st.full_dim == st.proj_factor_dim + st.stable_dim);
  auto a = family_A(2);
  auto p = projective_module(a, 0);
  for (const auto& m : probes(a)) {
    CHECK(sthom_dim(p, m) == 0);
    CHECK(sthom_dim(m, p) == 0);
  }
}

TEST_CASE("extensions") {
  auto c2 = nakayama(2, 2);
  auto s1 = simple_module(c2, 0), s2 = simple_module(c2, 1);
  auto e = ext1(s1, s2);
  REQUIRE(e.dim() == 1);
  auto ext = extension(e, s1, s2, e.classes.stable_basis.column(0));
  CHECK(ext.middle.total_dim() == 2);
  CHECK(is_isomorphic(ext.middle, projective_module(c2, 0)));
  CHECK(is_injective(ext.left));
  CHECK(is_surjective(ext.right));
  CHECK(is_zero(compose(ext.right, ext.left)));
  CHECK(ext1(s1, s1).dim() == 0);
}

TEST_CASE("cocone of the zero map") {
  auto a = family_A(2);
  auto s1 = simple_module(a, 0), s2 = simple_module(a, 1);
  auto n = cocone(s1, s2, zero_map(s1, s2));
  CHECK(is_isomorphic(n, direct_sum(s1, syzygy(s2, 1))));
}

TEST_CASE("semibricks") {
  auto c2 = nakayama(2, 2);
  auto r = semibrick_check({simple_module(c2, 0), simple_module(c2, 1)});
  CHECK(r.semibrick);
  CHECK(r.stable_dims == std::vector<std::vector<std::size_t>>{{1, 0}, {0, 1}});
  CHECK_FALSE(semibrick_check({simple_module(c2, 0), simple_module(c2, 0)}).semibrick);
  auto a = family_A(2);
  std::vector<Rep> simples;
  for (int v = 0; v < 3; ++v) simples.push_back(simple_module(a, v));
  CHECK(semibrick_check(simples).semibrick);
  CHECK(error_of([&] { semibrick_check({projective_module(c2, 0)}); }) == ErrorKind::ProjectiveInput);
}
