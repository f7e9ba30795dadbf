#include "doctest.h"

#include <random>

#include "qlab/bqa/families.hpp"
#include "qlab/bqa/strings.hpp"
#include "qlab/sms/sms.hpp"
#include "support.hpp"

using namespace qlab;
using qlab::test::error_of;

namespace {

std::vector<Rep> simples(const AlgebraPtr& a) {
  std::vector<Rep> out;
  for (int v = 0; v < a->num_vertices(); ++v) out.push_back(simple_module(a, v));
  return out;
}

std::string resealed(Json j) {
  j.erase("sha256");
  j["sha256"] = sha256_hex(j.dump());
  return j.dump(2) + "\n";
}

struct A2Fixture {
  AlgebraPtr alg = family_A(2);
  TubeInfo tube = knit_tube(simple_module(alg, 0), 12);
};

}  // namespace

TEST_CASE("iso sets") {
  auto a = family_A(2);
  IsoSet s;
  bool fresh = false;
  CHECK(s.insert(simple_module(a, 0), &fresh) == 0);
  CHECK(fresh);
  CHECK(s.insert(simple_module(a, 1), &fresh) == 1);
  CHECK(s.insert(simple_module(a, 0), &fresh) == 0);
  CHECK_FALSE(fresh);
  CHECK(s.size() == 2);
  CHECK_FALSE(s.contains(simple_module(a, 2)));
}

TEST_CASE("closure on small algebras") {
  auto c2 = nakayama(2, 2);
  auto s1 = simple_module(c2, 0), s2 = simple_module(c2, 1);
  auto st = closure({s1}, 6);
  CHECK_FALSE(st.level_of(s2).has_value());
  CHECK(st.level_of(s1) == std::size_t{1});
  auto both = closure({s1, s2}, 6);
  CHECK(both.level_of(s1) == std::size_t{1});
  auto n23 = nakayama(2, 3);
  auto p = projective_module(n23, 0);
  auto rad = submodule(p, radical_span(p)).module;
  auto e = ell(simples(n23), rad, 6);
  REQUIRE(e.value);
  CHECK(*e.value == 2);
  auto cm = cone_middles(s1, s2);
  CHECK_FALSE(cm.empty());
}

TEST_CASE("divergence on a tube") {
  A2Fixture f;
  std::vector<Rep> mouth{tube_module(f.tube, 1, 1), tube_module(f.tube, 2, 1)};
  auto x = syzygy(tube_module(f.tube, 1, 2), 1);
  CHECK(ell(mouth, x, 10).diverges());
}

TEST_CASE("universes and classification") {
  auto u = knit_universe(local_algebra(2));
  CHECK(u.complete);
  CHECK(u.modules.size() == 1);
  auto flags = classify_system(simples(local_algebra(2)), &u);
  CHECK(flags.semibrick);
  CHECK(flags.sms == true);
  CHECK(flags.maximal_orthogonal == false);
  auto a = family_A(2);
  auto ua = knit_universe(a);
  CHECK_FALSE(ua.complete);
  CHECK_FALSE(classify_system(simples(a), &ua).sms.has_value());
  CHECK(error_of([&] { classify_system(simples(a), &ua, true); }) == ErrorKind::UniverseIncomplete);
  CHECK(error_of([&] { enumerate_sms(ua); }) == ErrorKind::UniverseIncomplete);
}

TEST_CASE("sms enumeration") {
  auto l = knit_universe(local_algebra(2));
  auto ls = enumerate_sms(l);
  REQUIRE(ls.size() == 1);
  CHECK(ls[0].size() == 1);
  auto c2 = nakayama(2, 2);
  auto cs = enumerate_sms(knit_universe(c2));
  REQUIRE(cs.size() == 1);
  CHECK(is_isomorphic(direct_sum(cs[0]), direct_sum(simples(c2))));
  for (const auto& alg : {nakayama(3, 2), nakayama(3, 3)}) {
    auto u = knit_universe(alg);
    auto all = enumerate_sms(u);
    bool has_simples = false;
    for (const auto& s : all) {
      CHECK(s.size() == static_cast<std::size_t>(alg->num_vertices()));
      CHECK(semibrick_check(s).semibrick);
      has_simples = has_simples || is_isomorphic(direct_sum(s), direct_sum(simples(alg)));
    }
    CHECK(has_simples);
    CHECK(classify_system(simples(alg), &u).sms == true);
  }
  CHECK(enumerate_sms(knit_universe(nakayama(3, 2))).size() == 1);
  CHECK(enumerate_sms(knit_universe(nakayama(3, 3))).size() == 2);
}

TEST_CASE("theorem one certificate") {
  A2Fixture f;
  StratLadder lad;
  lad.tube = &f.tube;
  std::vector<Rep> mouth{tube_module(f.tube, 1, 1), tube_module(f.tube, 2, 1)};
  auto c = main_strat_certify(lad, mouth, 6);
  CHECK(c.entries.size() == 12);
  CHECK(c.ladder.size() == 7);
  for (const auto& e : c.entries) {
    CHECK(e.stable_dim <= 1);
    for (int l : e.cocone) CHECK(l > e.l);
  }
  const auto text = certificate_to_json(c);
  CHECK(certificate_to_json(c) == text);
  auto r = replay_certificate(text);
  CHECK_MESSAGE(r.ok, r.reason);
  CHECK(error_of([&] { main_strat_certify(lad, mouth, 40); }) == ErrorKind::DepthExceeded);
  std::vector<Rep> twice{mouth[0], mouth[0]};
  CHECK(error_of([&] { main_strat_certify(lad, twice, 4); }) == ErrorKind::ConditionFailed);
}

TEST_CASE("theorem two certificate") {
  A2Fixture f;
  for (int i = 1; i <= 2; ++i) {
    std::vector<Rep> s{tube_module(f.tube, i, 2)};
    auto d = recover_descent(f.tube, i, s);
    CHECK(d == std::vector<int>{2});
    StratLadder lad;
    lad.tube = &f.tube;
    lad.mode = LadderMode::Theorem2;
    lad.base = i;
    lad.descent = d;
    auto c = main_strat_certify(lad, s, 6);
    CHECK(replay_certificate(certificate_to_json(c)).ok);
    std::vector<Rep> s2{tube_module(f.tube, i, 2), syzygy(tube_module(f.tube, i + 1, 1), 1)};
    REQUIRE(semibrick_check(s2).semibrick);
    CHECK(recover_descent(f.tube, i, s2) == std::vector<int>{2, 1});
  }
  CHECK(error_of([&] { recover_descent(f.tube, 1, {tube_module(f.tube, 1, 1)}); }) == ErrorKind::HypothesisUnmet);
}

TEST_CASE("replay rejects tampering") {
  A2Fixture f;
  StratLadder lad;
  lad.tube = &f.tube;
  auto c = main_strat_certify(lad, {tube_module(f.tube, 1, 1), tube_module(f.tube, 2, 1)}, 4);
  const auto text = certificate_to_json(c);
  const auto j = Json::parse(text);
  CHECK_FALSE(replay_certificate(j.dump()).ok);
  CHECK_FALSE(replay_certificate(text.substr(0, text.size() / 2)).ok);
  auto dim = j;
  for (auto& e : dim["entries"])
    if (e["stable_dim"] == 1) {
      e["stable_dim"] = 0;
      e["cocone"] = Json::array();
      break;
    }
  CHECK_FALSE(replay_certificate(resealed(dim)).ok);
  auto cone = j;
  for (auto& e : cone["entries"])
    if (!e["cocone"].empty()) {
      e["cocone"][0] = e["cocone"][0].get<int>() + 1;
      break;
    }
  CHECK_FALSE(replay_certificate(resealed(cone)).ok);
  auto fewer = j;
  fewer["entries"].erase(fewer["entries"].size() - 1);
  CHECK_FALSE(replay_certificate(resealed(fewer)).ok);
  auto concl = j;
  concl["conclusion"] = "not an sms (certified to depth 9)";
  CHECK_FALSE(replay_certificate(resealed(concl)).ok);
  std::mt19937_64 rng(99);
  for (int k = 0; k < 20; ++k) {
    auto t = text;
    const auto pos = std::uniform_int_distribution<std::size_t>(0, t.size() - 1)(rng);
    t[pos] = static_cast<char>(t[pos] ^ (1 << (k % 8)));
    CHECK_FALSE(replay_certificate(t).ok);
  }
}

TEST_CASE("homogeneous tube certificate") {
  auto k = kronecker_trivext();
  auto b = band_module(k, parse_word(*k, "a1 g1-"), 1);
  auto t = knit_tube(b, 8);
  StratLadder lad;
  lad.tube = &t;
  auto c = main_strat_certify(lad, {b}, 6);
  CHECK(replay_certificate(certificate_to_json(c)).ok);
}

TEST_CASE("theorem check") {
  A2Fixture f;
  auto r1 = theorem_check({tube_module(f.tube, 1, 1), tube_module(f.tube, 2, 1)}, f.tube);
  CHECK(r1.certificate.has_value());
  CHECK(r1.conclusion_holds);
  CHECK(r1.in_tube == 2);
  auto r2 = theorem_check({tube_module(f.tube, 1, 2)}, f.tube);
  REQUIRE(r2.certificate.has_value());
  CHECK(r2.certificate->mode == LadderMode::Theorem2);
  CHECK(r2.quasi_lengths == std::vector<int>{2});
  auto r3 = theorem_check(simples(f.alg), f.tube);
  CHECK_FALSE(r3.certificate.has_value());
  CHECK(r3.in_tube == 1);
}

TEST_CASE("lemma registry") {
  A2Fixture f;
  CHECK(lemma_ids().size() == 15);
  for (const auto& id : lemma_ids()) {
    auto r = verify_lemma(f.tube, id);
    CAPTURE(id);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.checked > 0);
    CHECK(r.depth == 6);
    const auto j = r.to_json();
    CHECK(j["id"] == id);
    CHECK(j["verdict"] == "pass");
  }
  auto part = verify_lemma(f.tube, "r<n", {5, 3});
  CHECK(part.verdict == Verdict::Pass);
  CHECK(error_of([&] { verify_lemma(f.tube, "no-such-lemma"); }) == ErrorKind::NotFound);
  CHECK(error_of([&] { verify_lemma(f.tube, "r<n", {60, 1}); }) == ErrorKind::DepthExceeded);
}
