#include "doctest.h"

#include <random>

#include "qlab/ar/ar.hpp"
#include "qlab/bqa/dsl.hpp"
#include "qlab/bqa/families.hpp"
#include "qlab/bqa/strings.hpp"
#include "qlab/rep/decompose.hpp"
#include "support.hpp"

using namespace qlab;
using qlab::test::error_of;

namespace {

// dim of {(f_v) : N_a f_u = f_v M_a for every arrow a: u -> v}.
std::size_t naive_hom_dim(const Rep& m, const Rep& n) {
  const auto& q = m.algebra().quiver();
  std::vector<std::size_t> off(q.num_vertices() + 1, 0);
  for (int v = 0; v < q.num_vertices(); ++v) off[v + 1] = off[v] + n.dim(v) * m.dim(v);
  const std::size_t unknowns = off.back();
  if (unknowns == 0) return 0;
  std::size_t eqs = 0;
  for (const auto& a : q.arrows()) eqs += n.dim(a.target) * m.dim(a.source);
  Matrix sys(eqs, unknowns, m.prime());
  const ff::Field f(m.prime());
  std::size_t row = 0;
  for (int k = 0; k < q.num_arrows(); ++k) {
    const int u = q.arrow(k).source, v = q.arrow(k).target;
    const auto& ma = m.mat(k);
    const auto& na = n.mat(k);
    for (std::size_t r = 0; r < n.dim(v); ++r)
      for (std::size_t c = 0; c < m.dim(u); ++c, ++row) {
        // (N_a f_u)[r][c] = sum_s N_a[r][s] f_u[s][c]
        for (std::size_t s = 0; s < n.dim(u); ++s)
          sys(row, off[u] + s * m.dim(u) + c) = f.add(sys(row, off[u] + s * m.dim(u) + c), na(r, s));
        // (f_v M_a)[r][c] = sum_s f_v[r][s] M_a[s][c]
        for (std::size_t s = 0; s < m.dim(v); ++s)
          sys(row, off[v] + r * m.dim(v) + s) = f.sub(sys(row, off[v] + r * m.dim(v) + s), ma(s, c));
      }
  }
  return unknowns - ff::rank(sys);
}

Matrix random_invertible(std::size_t d, std::uint32_t p, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> val(0, p - 1);
  while (true) {
    Matrix g(d, d, p);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) g(i, j) = val(rng);
    if (ff::is_invertible(g)) return g;
  }
}

// The same module written in a random basis at every vertex.
Rep rebased(const Rep& m, std::mt19937_64& rng) {
  const auto& q = m.algebra().quiver();
  std::vector<Matrix> g, gi;
  for (int v = 0; v < q.num_vertices(); ++v) {
    g.push_back(random_invertible(m.dim(v), m.prime(), rng));
    gi.push_back(*ff::inverse(g.back()));
  }
  std::vector<Matrix> mats;
  for (int k = 0; k < q.num_arrows(); ++k)
    mats.push_back(g[q.arrow(k).target] * m.mat(k) * gi[q.arrow(k).source]);
  return Rep(m.algebra_ptr(), m.dims(), mats);
}

std::vector<Rep> sample_modules(const AlgebraPtr& a) {
  std::vector<Rep> out;
  for (int v = 0; v < a->num_vertices(); ++v) {
    out.push_back(simple_module(a, v));
    auto p = projective_module(a, v);
    out.push_back(p);
    out.push_back(submodule(p, radical_span(p)).module);
    out.push_back(quotient(p, socle_span(p)).module);
  }
  return out;
}

}  // namespace

TEST_CASE("hom dimensions agree with the intertwining solver") {
  for (const auto& a : {local_algebra(3), nakayama(3, 2), nakayama(2, 3), family_A(2), family_B(3)}) {
    CAPTURE(a->name());
    const auto mods = sample_modules(a);
    for (const auto& m : mods)
      for (const auto& n : mods) CHECK(hom_dim(m, n) == naive_hom_dim(m, n));
  }
  auto a = family_A(2);
  auto t = knit_tube(simple_module(a, 0), 4);
  std::vector<Rep> tube;
  for (int r = 1; r <= 4; ++r)
    for (int i = 1; i <= 2; ++i) tube.push_back(tube_module(t, i, r));
  for (const auto& m : tube)
    for (const auto& n : tube) CHECK(hom_dim(m, n) == naive_hom_dim(m, n));
}

TEST_CASE("hom basis consists of homomorphisms") {
  auto a = family_A(2);
  const auto mods = sample_modules(a);
  for (const auto& m : mods)
    for (const auto& n : mods) {
      const auto h = hom_space(m, n);
      for (const auto& f : h.basis) CHECK(is_homomorphism(m, n, f));
      CHECK(ff::rank(h.coords) == h.dim());
    }
}

TEST_CASE("small hom spaces") {
  auto c2 = nakayama(2, 2);
  CHECK(hom_dim(simple_module(c2, 0), simple_module(c2, 0)) == 1);
  CHECK(hom_dim(simple_module(c2, 0), simple_module(c2, 1)) == 0);
  auto a = family_A(2);
  for (int v = 0; v < 3; ++v)
    CHECK(hom_dim(projective_module(a, v), projective_module(a, v)) == a->basis_between(v, v).size());
  CHECK(projective_module(local_algebra(2), 0).total_dim() == 2);
  auto p = projective_module(c2, 0);
  CHECK(p.dims() == std::vector<std::size_t>{1, 1});
}

TEST_CASE("hom is additive") {
  auto a = nakayama(3, 3);
  const auto mods = sample_modules(a);
  for (std::size_t i = 0; i + 2 < mods.size(); i += 3) {
    const auto& m = mods[i];
    const auto& m2 = mods[i + 1];
    const auto& n = mods[i + 2];
    CHECK(hom_dim(direct_sum(m, m2), n) == hom_dim(m, n) + hom_dim(m2, n));
    CHECK(hom_dim(n, direct_sum(m, m2)) == hom_dim(n, m) + hom_dim(n, m2));
  }
}

TEST_CASE("endomorphism radical") {
  auto l = local_algebra(2);
  auto s = simple_module(l, 0);
  auto e = end_with_radical(s);
  CHECK(e.end.dim() == 1);
  CHECK(e.radical.cols() == 0);
  CHECK(e.local);
  CHECK_FALSE(end_with_radical(direct_sum(projective_module(l, 0), s)).local);
  auto a = family_A(2);
  auto t = knit_tube(simple_module(a, 0), 4);
  auto x3 = end_with_radical(tube_module(t, 1, 3));
  CHECK(x3.residue_dim == 1);
  CHECK(x3.radical.cols() > 0);
}

TEST_CASE("decomposition") {
  auto a = family_A(2);
  auto p1 = projective_module(a, 0);
  auto d = decompose(direct_sum(p1, p1));
  REQUIRE(d.summands.size() == 1);
  CHECK(d.summands[0].second == 2);
  auto reg = decompose(regular_module(a));
  CHECK(reg.summands.size() == 3);
  for (const auto& [m, k] : reg.summands) CHECK(k == 1);
  std::mt19937_64 rng(17);
  for (const auto& alg : {family_A(2), nakayama(3, 3)}) {
    const auto mods = sample_modules(alg);
    for (std::size_t i = 0; i + 1 < mods.size(); ++i) {
      auto m = rebased(direct_sum({mods[i], mods[i + 1], mods[0]}), rng);
      auto parts = indecomposable_summands(m);
      for (const auto& x : parts) CHECK(end_with_radical(x).local);
      CHECK(is_isomorphic(direct_sum(parts), m));
    }
  }
}

TEST_CASE("isomorphism") {
  std::mt19937_64 rng(23);
  auto a = family_A(2);
  for (const auto& m : sample_modules(a)) {
    CHECK(is_isomorphic(m, m));
    CHECK(is_isomorphic(m, rebased(m, rng)));
  }
  CHECK_FALSE(is_isomorphic(simple_module(a, 0), simple_module(a, 1)));
  auto s = submodule(projective_module(a, 1), radical_span(projective_module(a, 1))).module;
  auto q = quotient(projective_module(a, 1), socle_span(projective_module(a, 1))).module;
  CHECK(s.dims() == q.dims());
  CHECK(is_isomorphic(s, q) == (hom_dim(s, q) > 0 && is_isomorphic(q, s)));
  auto k = kronecker_trivext();
  auto band = parse_word(*k, "a1 g1-");
  CHECK_FALSE(is_isomorphic(band_module(k, band, 1), band_module(k, band, 2)));
  CHECK(error_of([&] { is_isomorphic(simple_module(a, 0), simple_module(k, 0)); }) == ErrorKind::AlgebraMismatch);
}

TEST_CASE("layers") {
  auto l = local_algebra(2);
  auto ly = layers(projective_module(l, 0));
  CHECK(ly.top.total_dim() == 1);
  CHECK(ly.socle.total_dim() == 1);
  CHECK(ly.radical.total_dim() == 1);
  auto a = family_A(2);
  auto s = layers(simple_module(a, 2));
  CHECK(s.radical.is_zero());
  CHECK(is_isomorphic(s.top, simple_module(a, 2)));
  CHECK(is_isomorphic(s.socle, simple_module(a, 2)));
}

TEST_CASE("kernels, images and cokernels") {
  auto a = family_A(2);
  const auto mods = sample_modules(a);
  for (const auto& m : mods)
    for (const auto& n : mods) {
      for (const auto& f : hom_space(m, n).basis) {
        auto k = kernel(m, n, f);
        auto im = image(m, n, f);
        auto c = cokernel(m, n, f);
        CHECK(k.module.total_dim() + im.module.total_dim() == m.total_dim());
        CHECK(im.module.total_dim() + c.module.total_dim() == n.total_dim());
        CHECK(k.module.satisfies_relations());
        CHECK(c.module.satisfies_relations());
        CHECK(is_zero(compose(f, k.map)));
        CHECK(is_zero(compose(c.map, f)));
      }
    }
}
