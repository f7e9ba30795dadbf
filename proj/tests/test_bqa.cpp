#include "doctest.h"

#include <map>
#include <set>

#include "qlab/bqa/dsl.hpp"
#include "qlab/bqa/families.hpp"
#include "qlab/bqa/selfinj.hpp"
#include "support.hpp"

using namespace qlab;
using qlab::test::error_of;

namespace {

using Word = std::pair<int, std::vector<int>>;  // source, arrows

std::vector<Word> all_paths(const Quiver& q, int max_len) {
  std::vector<Word> out;
  for (int v = 0; v < q.num_vertices(); ++v) out.push_back({v, {}});
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (static_cast<int>(out[k].second.size()) == max_len) continue;
    const int end = out[k].second.empty() ? out[k].first : q.arrow(out[k].second.back()).target;
    for (int a : q.out_arrows(end)) {
      auto w = out[k];
      w.second.push_back(a);
      out.push_back(w);
    }
  }
  return out;
}

// dim kQ/(I + J^N) by spanning the ideal with p*r*q and eliminating.
std::size_t oracle_dim(const Algebra& alg, int n) {
  const auto& q = alg.quiver();
  const std::uint64_t p = alg.prime();
  const auto paths = all_paths(q, n - 1);
  std::map<Word, std::size_t> index;
  for (std::size_t k = 0; k < paths.size(); ++k) index[paths[k]] = k;
  auto end_of = [&](const Word& w) { return w.second.empty() ? w.first : q.arrow(w.second.back()).target; };
  std::vector<std::pair<Path, std::vector<std::pair<Path, std::uint64_t>>>> rels;
  for (const auto& m : alg.spec().relations.monomials) rels.push_back({m, {{m, 1}}});
  for (const auto& b : alg.spec().relations.binomials) rels.push_back({b.lead, {{b.lead, 1}, {b.other, b.coeff}}});
  std::vector<std::map<std::size_t, std::uint64_t>> rows;
  for (const auto& [anchor, terms] : rels) {
    for (const auto& left : paths) {
      if (end_of(left) != anchor.source) continue;
      for (const auto& right : paths) {
        if (right.first != anchor.target) continue;
        std::map<std::size_t, std::uint64_t> row;
        for (const auto& [t, c] : terms) {
          Word w{left.first, left.second};
          w.second.insert(w.second.end(), t.arrows.begin(), t.arrows.end());
          w.second.insert(w.second.end(), right.second.begin(), right.second.end());
          if (static_cast<int>(w.second.size()) >= n) continue;
          auto& slot = row[index.at(w)];
          slot = (slot + c) % p;
        }
        std::erase_if(row, [](const auto& e) { return e.second == 0; });
        if (!row.empty()) rows.push_back(row);
      }
    }
  }
  auto inv = [&](std::uint64_t a) {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  };
  std::map<std::size_t, std::map<std::size_t, std::uint64_t>> pivots;
  for (auto row : rows) {
    while (!row.empty()) {
      auto it = pivots.find(row.begin()->first);
      if (it == pivots.end()) {
        const auto s = inv(row.begin()->second);
        for (auto& e : row) e.second = e.second * s % p;
        pivots[row.begin()->first] = row;
        break;
      }
      const auto c = row.begin()->second;
      for (const auto& [k, v] : it->second) {
        auto& slot = row[k];
        slot = (slot + p - c * v % p) % p;
      }
      std::erase_if(row, [](const auto& e) { return e.second == 0; });
    }
  }
  return paths.size() - pivots.size();
}

// Monomial algebras: paths avoiding every relation as a subword.
std::size_t monomial_dim(const Algebra& alg) {
  const auto paths = all_paths(alg.quiver(), alg.nilpotency() + 1);
  std::size_t count = 0;
  for (const auto& w : paths) {
    bool alive = true;
    for (const auto& m : alg.spec().relations.monomials)
      if (std::search(w.second.begin(), w.second.end(), m.arrows.begin(), m.arrows.end()) != w.second.end())
        alive = false;
    count += alive;
  }
  return count;
}

std::vector<AlgebraPtr> fixtures() {
  return {local_algebra(2), local_algebra(4), nakayama(2, 2), nakayama(3, 2), nakayama(3, 3), nakayama(2, 3),
          family_A(1), family_A(2), family_A(3), family_B(3), family_B(4)};
}

}  // namespace

TEST_CASE("rad-square-zero two-cycle") {
  auto a = parse_algebra(
      "algebra C2 { vertices 1 2; arrow a: 1 -> 2; arrow b: 2 -> 1; rel a*b = 0; rel b*a = 0; }");
  CHECK(a->dim() == 4);
  CHECK(a->nilpotency() == 2);
  for (int i = 0; i < a->dim(); ++i)
    for (int j = 0; j < a->dim(); ++j)
      if (a->basis(i).length() == 1 && a->basis(j).length() == 1) CHECK(a->multiply(i, j).empty());
  CHECK(a->basis_from(0).size() == 2);
  CHECK(a->basis_from(1).size() == 2);
}

TEST_CASE("basis dimension matches path enumeration") {
  for (const auto& a : fixtures()) {
    CAPTURE(a->name());
    CHECK(static_cast<std::size_t>(a->dim()) == oracle_dim(*a, a->nilpotency()));
    CHECK(oracle_dim(*a, a->nilpotency() + 1) == oracle_dim(*a, a->nilpotency()));
    if (a->spec().relations.binomials.empty()) CHECK(static_cast<std::size_t>(a->dim()) == monomial_dim(*a));
  }
  CHECK(nakayama(3, 2)->dim() == 6);
  CHECK(nakayama(3, 3)->dim() == 9);
  CHECK(local_algebra(4)->dim() == 4);
  CHECK(family_A(2)->dim() == 14);
}

TEST_CASE("projectives partition the basis") {
  for (const auto& a : fixtures()) {
    std::size_t total = 0;
    for (int v = 0; v < a->num_vertices(); ++v) total += a->basis_from(v).size();
    CHECK(total == static_cast<std::size_t>(a->dim()));
  }
  auto a2 = family_A(2);
  CHECK(a2->basis_from(0).size() == 4);
  CHECK(a2->basis_from(1).size() == 5);
  CHECK(a2->basis_from(2).size() == 5);
}

TEST_CASE("multiplication is associative") {
  for (const auto& a : fixtures()) {
    if (a->dim() > 40) continue;
    CAPTURE(a->name());
    bool ok = true;
    for (int i = 0; i < a->dim() && ok; ++i)
      for (int j = 0; j < a->dim() && ok; ++j)
        for (int k = 0; k < a->dim() && ok; ++k) {
          const SparseVec ei{{i, 1}}, ej{{j, 1}}, ek{{k, 1}};
          ok = a->multiply(a->multiply(ei, ej), ek) == a->multiply(ei, a->multiply(ej, ek));
        }
    CHECK(ok);
  }
}

TEST_CASE("relations reduce to zero") {
  for (const auto& a : fixtures()) {
    for (const auto& m : a->spec().relations.monomials) CHECK(a->normal_form(m).empty());
    for (const auto& b : a->spec().relations.binomials) {
      CHECK(path_less(a->quiver(), b.other, b.lead));
      auto lead = a->normal_form(b.lead), other = a->normal_form(b.other);
      for (auto& e : other) e.second = a->field().mul(e.second, b.coeff);
      std::map<int, std::uint32_t> sum;
      for (auto& [k, c] : lead) sum[k] = a->field().add(sum[k], c);
      for (auto& [k, c] : other) sum[k] = a->field().add(sum[k], c);
      for (auto& [k, c] : sum) CHECK(c == 0);
    }
  }
}

TEST_CASE("family A(2) presentation") {
  auto a = family_A(2);
  CHECK(a->num_vertices() == 3);
  CHECK(a->quiver().num_arrows() == 5);
  CHECK(a->spec().relations.monomials.size() == 4);
  CHECK(a->spec().relations.binomials.size() == 2);
  CHECK(kronecker_trivext()->spec().relations == family_A(1)->spec().relations);
  auto b = family_B(3);
  CHECK(b->spec().relations.binomials.size() >= 3);
}

TEST_CASE("dsl round trip") {
  for (const auto& a : fixtures()) {
    const auto text = print_algebra(*a);
    auto b = parse_algebra(text);
    CHECK(print_algebra(*b) == text);
    CHECK(b->basis() == a->basis());
    CHECK(b->dim() == a->dim());
  }
  auto r = parse_algebra(
      "# comment\nalgebra R { composition right_to_left; vertices 1 2; arrow a: 1 -> 2; arrow b: 2 -> 1;"
      " rel b*a = 0; rel a*b = 0; }");
  CHECK(r->dim() == 4);
  CHECK(parse_algebra("algebra L { vertices 1; arrow x: 1 -> 1; rel x*x*x = 0; }", 7)->prime() == 7);
}

TEST_CASE("dsl errors") {
  CHECK(error_of([] { parse_algebra("algebra X { vertices 1 2; arrow a: 1 -> 2; rel a = 0; }"); }) ==
        ErrorKind::NonAdmissible);
  CHECK(error_of([] { parse_algebra("algebra X { vertices 1; arrow a: 1 -> 3; }"); }) == ErrorKind::UnknownVertex);
  CHECK(error_of([] { parse_algebra("algebra X { vertices 1 2; arrow a: 1 -> 2; rel a*a = 0; }"); }) ==
        ErrorKind::NonComposable);
  CHECK(error_of([] { parse_algebra("algebra X { vertices 1 2 arrow"); }) == ErrorKind::SyntaxError);
  CHECK(error_of([] { parse_algebra("algebra X { vertices 1; arrow x: 1 -> 1; }"); }) == ErrorKind::BoundExceeded);
  CHECK(error_of([] { parse_algebra("algebra X { vertices 1; arrow x: 1 -> 1; rel x*x*x = 0; nilpotency 2; }"); }) ==
        ErrorKind::BoundExceeded);
  CHECK(error_of([] { family_A(0); }) == ErrorKind::BadParameter);
  CHECK(error_of([] { family_B(2); }) == ErrorKind::BadParameter);
  CHECK(error_of([] { nakayama(3, 1); }) == ErrorKind::BadParameter);
  CHECK(error_of([] { local_algebra(1); }) == ErrorKind::BadParameter);
  CHECK(error_of([] { family_dsl("C", 1, 1); }) == ErrorKind::BadParameter);
}

TEST_CASE("self-injectivity report") {
  const auto local = local_algebra(2);
  const auto& l = local->selfinjectivity();
  CHECK(l.is_self_injective);
  CHECK(l.symmetric());
  CHECK(l.nakayama_perm == std::vector<int>{0});
  CHECK(family_A(2)->selfinjectivity().symmetric());
  CHECK(family_A(3)->selfinjectivity().symmetric());
  CHECK(family_B(3)->selfinjectivity().symmetric());
  CHECK(kronecker_trivext()->selfinjectivity().symmetric());
  const auto nak = nakayama(3, 2);
  const auto& n = nak->selfinjectivity();
  CHECK(n.is_self_injective);
  CHECK_FALSE(n.weakly_symmetric());
  CHECK_FALSE(n.symmetric());
  std::set<int> perm(n.nakayama_perm.begin(), n.nakayama_perm.end());
  CHECK(perm.size() == 3);
  CHECK_FALSE(parse_algebra("algebra H { vertices 1 2; arrow a: 1 -> 2; }")->selfinjectivity().is_self_injective);
}

TEST_CASE("symmetric form is associative and symmetric") {
  for (const auto& a : {local_algebra(3), nakayama(2, 3), family_A(2)}) {
    const auto& rep = a->selfinjectivity();
    REQUIRE(rep.symmetric_form);
    const auto& lam = *rep.symmetric_form;
    for (int i = 0; i < a->dim(); ++i)
      for (int j = 0; j < a->dim(); ++j) {
        CHECK(form_value(*a, lam, i, j) == form_value(*a, lam, j, i));
        for (int k = 0; k < a->dim(); ++k) {
          const auto ij = a->multiply(i, j), jk = a->multiply(j, k);
          std::uint32_t left = 0, right = 0;
          for (auto [x, c] : ij) left = a->field().add(left, a->field().mul(c, form_value(*a, lam, x, k)));
          for (auto [x, c] : jk) right = a->field().add(right, a->field().mul(c, form_value(*a, lam, i, x)));
          CHECK(left == right);
        }
      }
  }
}
