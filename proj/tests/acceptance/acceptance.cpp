#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qlab/bqa/families.hpp"
#include "qlab/bqa/strings.hpp"
#include "qlab/error.hpp"
#include "qlab/sms/sms.hpp"

using namespace qlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Notes {
 public:
  template <class T>
  Notes& operator<<(const T& x) {
    out_ << x;
    return *this;
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::vector<Rep> simples(const AlgebraPtr& a) {
  std::vector<Rep> out;
  for (int v = 0; v < a->num_vertices(); ++v) out.push_back(simple_module(a, v));
  return out;
}

std::optional<std::pair<int, int>> position(const TubeInfo& t, const Rep& m) {
  const auto k = t.component.find(m);
  if (!k) return std::nullopt;
  return t.coords(*k);
}

bool same_set(const std::vector<Rep>& a, const std::vector<Rep>& b) {
  return a.size() == b.size() && is_isomorphic(direct_sum(a), direct_sum(b));
}

Outcome family_a() {
  Notes n;
  bool ok = true;
  for (int rank : {2, 3}) {
    auto a = family_A(rank);
    auto t = knit_tube(simple_module(a, 0), 2 * rank + 2);
    ok = ok && t.rank == rank;
    n << "A(" << rank << "): rank " << t.rank << ", mouth";
    for (int v = 0; v < rank - 1; ++v) {
      const auto pos = position(t, simple_module(a, v));
      const bool on_mouth = pos && pos->second == 1;
      ok = ok && on_mouth;
      n << " S" << v + 1 << (on_mouth ? "@1" : "@?");
    }
    for (int v : {rank - 1, rank}) {
      bool irregular = false;
      try {
        knit_tube(simple_module(a, v), 2 * rank + 2);
      } catch (const Error& e) {
        irregular = e.kind() == ErrorKind::NotQuasiSerial;
      }
      ok = ok && irregular;
      n << ", S" << v + 1 << (irregular ? " not quasi-serial" : " quasi-serial");
    }
    auto c = knit_component(simple_module(a, rank - 1), {});
    const bool distinct = !c.find(simple_module(a, rank)).has_value();
    ok = ok && distinct;
    n << (distinct ? ", distinct" : ", same component") << "; ";
  }
  return {ok, n.str()};
}

Outcome family_b() {
  Notes n;
  bool ok = true;
  for (int rank : {3, 4}) {
    auto b = family_B(rank);
    auto top = knit_tube(simple_module(b, rank - 2), rank + 1);
    const auto pos_top = position(top, simple_module(b, rank - 2));
    const bool ql_top = top.rank == rank && pos_top && pos_top->second == rank - 1;
    auto tx = knit_tube(simple_module(b, 0), rank + 1);
    auto ty = knit_tube(simple_module(b, 1), rank + 1);
    const auto px = position(tx, simple_module(b, 0));
    const auto py = position(ty, simple_module(b, 1));
    const bool qls = tx.rank == rank && ty.rank == rank && px && px->second == 1 && py && py->second == 2;
    bool distinct = true;
    for (int r = 1; r <= 2; ++r)
      for (int i = 1; i <= rank; ++i)
        if (is_isomorphic(tube_module(tx, i, r), simple_module(b, 1))) distinct = false;
    bool pattern = px.has_value() && py.has_value();
    int checked = 0;
    for (int i = 1; pattern && i <= rank - 1; ++i) {
      if (i % 2 == 1) {
        const int j = (i - 1) / 2;
        pattern = is_isomorphic(simple_module(b, i - 1), tau_power(tube_module(tx, px->first, i), j));
      } else {
        const int j = i / 2;
        pattern = is_isomorphic(simple_module(b, i - 1), tau_power(tube_module(ty, py->first, i), j - 1));
      }
      ++checked;
    }
    ok = ok && ql_top && qls && distinct && pattern;
    n << "B(" << rank << "): ql(S" << rank - 1 << ")=" << (pos_top ? pos_top->second : 0) << ", ql(S1)="
      << (px ? px->second : 0) << ", ql(S2)=" << (py ? py->second : 0) << (distinct ? " distinct" : " shared")
      << ", tau pattern " << (pattern ? "holds" : "fails") << " on " << checked << "; ";
  }
  return {ok, n.str()};
}

Outcome duality() {
  auto a = family_A(2);
  auto t = knit_tube(simple_module(a, 0), 6);
  std::vector<Rep> mods;
  for (int r = 1; r <= 6; ++r)
    for (int i = 1; i <= 2; ++i) mods.push_back(tube_module(t, i, r));
  auto other = knit_component(simple_module(a, 1), {14, 40});
  for (const auto& node : other.nodes)
    if (!node.projective) mods.push_back(node.module);
  std::size_t pairs = 0, serre = 0, ar = 0;
  for (const auto& m : mods) {
    const auto nu_omega = nakayama_functor(syzygy(m, 1));
    const auto tm = tau(m);
    for (const auto& x : mods) {
      if (m.total_dim() + x.total_dim() > 60) continue;
      ++pairs;
      const auto d = sthom_dim(m, x);
      serre += d == sthom_dim(x, nu_omega);
      ar += d == ext1(x, tm).dim();
    }
  }
  Notes n;
  n << pairs << " pairs over " << mods.size() << " modules; serre " << serre << "/" << pairs << ", ar " << ar << "/"
    << pairs;
  return {pairs >= 50 && serre == pairs && ar == pairs, n.str()};
}

Outcome ar_sequences() {
  std::size_t total = 0, good = 0;
  Notes n;
  for (const auto& a : {local_algebra(2), nakayama(2, 2), nakayama(3, 2), family_A(2)}) {
    auto u = knit_universe(a);
    std::vector<Rep> targets = u.modules;
    if (!u.complete) {
      auto t = knit_tube(simple_module(a, 0), 7);
      IsoSet seen;
      for (const auto& m : u.modules) seen.insert(m);
      targets.clear();
      for (int r = 1; r <= 6; ++r)
        for (int i = 1; i <= t.rank; ++i) {
          auto m = tube_module(t, i, r);
          targets.push_back(m);
          seen.insert(m);
        }
      for (int v = 0; v < a->num_vertices(); ++v) targets.push_back(simple_module(a, v));
      u.modules = seen.items();
    }
    std::size_t local_good = 0;
    for (const auto& m : targets) {
      const auto c = check_ar_sequence(ar_sequence(m), u.modules);
      local_good += c.ok();
    }
    total += targets.size();
    good += local_good;
    n << a->name() << " " << local_good << "/" << targets.size() << " (universe " << u.modules.size() << "); ";
  }
  return {total >= 20 && good == total, n.str()};
}

Outcome lemmas() {
  Notes n;
  bool ok = true;
  for (int rank : {2, 3}) {
    auto t = knit_tube(simple_module(family_A(rank), 0), 2 * rank + 2);
    std::size_t pass = 0, unmet = 0, checked = 0;
    for (const auto& id : lemma_ids()) {
      const auto r = verify_lemma(t, id);
      pass += r.verdict == Verdict::Pass;
      unmet += r.hypothesis_unmet;
      checked += r.checked;
    }
    ok = ok && pass == lemma_ids().size();
    n << "A(" << rank << ") depth " << 2 * rank + 2 << ": " << pass << "/" << lemma_ids().size() << " pass, " << checked
      << " checked, " << unmet << " hypothesis unmet; ";
  }
  return {ok, n.str()};
}

Outcome theorem_one() {
  auto a = family_A(2);
  auto t = knit_tube(simple_module(a, 0), 8);
  StratLadder lad;
  lad.tube = &t;
  auto c = main_strat_certify(lad, {tube_module(t, 1, 1), tube_module(t, 2, 1)}, 6);
  const auto r1 = replay_certificate(certificate_to_json(c));
  auto k = kronecker_trivext();
  auto band = band_module(k, parse_word(*k, "a1 g1-"), 1);
  auto th = knit_tube(band, 8);
  StratLadder hl;
  hl.tube = &th;
  auto ch = main_strat_certify(hl, {band}, 6);
  const auto r2 = replay_certificate(certificate_to_json(ch));
  Notes n;
  n << "A(2) mouth: " << c.entries.size() << " entries, replay " << (r1.ok ? "ok" : r1.reason)
    << "; homogeneous band: " << ch.entries.size() << " entries, replay " << (r2.ok ? "ok" : r2.reason);
  return {r1.ok && r2.ok, n.str()};
}

Outcome theorem_two() {
  auto a = family_A(2);
  auto t = knit_tube(simple_module(a, 0), 12);
  bool ok = true;
  Notes n;
  for (int i = 1; i <= 2; ++i) {
    for (bool with_omega : {false, true}) {
      std::vector<Rep> s{tube_module(t, i, 2)};
      if (with_omega) s.push_back(syzygy(tube_module(t, i + 1, 1), 1));
      StratLadder lad;
      lad.tube = &t;
      lad.mode = LadderMode::Theorem2;
      lad.base = i;
      lad.descent = recover_descent(t, i, s);
      auto c = main_strat_certify(lad, s, 6);
      const auto r = replay_certificate(certificate_to_json(c));
      ok = ok && r.ok;
      n << "X" << i << "(2)" << (with_omega ? "+Omega" : "") << " descent " << lad.descent.size() << " replay "
        << (r.ok ? "ok" : r.reason) << "; ";
    }
  }
  const auto pattern = verify_lemma(t, "OmegaHom");
  ok = ok && pattern.verdict == Verdict::Pass;
  n << "OmegaHom " << to_string(pattern.verdict) << " (" << pattern.checked << " checked)";
  return {ok, n.str()};
}

Outcome sms_truth() {
  auto local = local_algebra(2);
  auto c2 = nakayama(2, 2);
  const auto ls = enumerate_sms(knit_universe(local));
  const auto cs = enumerate_sms(knit_universe(c2));
  bool ok = ls.size() == 1 && same_set(ls[0], simples(local)) && cs.size() == 1 && same_set(cs[0], simples(c2));
  Notes n;
  n << "local(2) " << ls.size() << " sms, nakayama(2,2) " << cs.size() << " sms";
  for (auto [m, l] : {std::pair{3, 2}, std::pair{3, 3}}) {
    auto alg = nakayama(m, l);
    auto u = knit_universe(alg);
    const auto f = classify_system(simples(alg), &u, true);
    const bool is_sms = f.sms.value_or(false);
    ok = ok && is_sms;
    n << ", simples of nakayama(" << m << "," << l << ") " << (is_sms ? "sms" : "not sms");
  }
  return {ok, n.str()};
}

Outcome bands() {
  auto k = kronecker_trivext();
  auto w = parse_word(*k, "a1 g1-");
  int periodic = 0, bricks = 0;
  for (std::uint32_t lambda = 1; lambda <= 5; ++lambda) {
    auto b = band_module(k, w, lambda);
    periodic += is_isomorphic(tau(b), b);
    bricks += sthom_dim(b, b) == 1;
  }
  Notes n;
  n << "tau B = B for " << periodic << "/5, stable bricks " << bricks << "/5";
  return {periodic == 5 && bricks >= 1, n.str()};
}

std::string fixture_run() {
  std::string out;
  auto a = family_A(2);
  auto t = knit_tube(simple_module(a, 0), 12);
  out += component_to_json(t.component, &t, 4);
  StratLadder lad;
  lad.tube = &t;
  out += certificate_to_json(main_strat_certify(lad, {tube_module(t, 1, 1), tube_module(t, 2, 1)}, 6));
  lad.mode = LadderMode::Theorem2;
  lad.descent = {2};
  out += certificate_to_json(main_strat_certify(lad, {tube_module(t, 1, 2)}, 6));
  for (const auto& id : lemma_ids()) out += verify_lemma(t, id).to_json().dump(2);
  Json sms = Json::array();
  for (const auto& s : enumerate_sms(knit_universe(nakayama(3, 3)))) {
    Json sys = Json::array();
    for (const auto& m : s) sys.push_back(rep_to_json(m));
    sms.push_back(sys);
  }
  out += sms.dump(2);
  return out;
}

Outcome determinism() {
  const auto first = fixture_run();
  const auto second = fixture_run();
  auto a = family_A(2);
  auto t = knit_tube(simple_module(a, 0), 12);
  StratLadder lad;
  lad.tube = &t;
  std::vector<std::string> certs{
      certificate_to_json(main_strat_certify(lad, {tube_module(t, 1, 1), tube_module(t, 2, 1)}, 4))};
  lad.mode = LadderMode::Theorem2;
  lad.base = 2;
  lad.descent = {2};
  certs.push_back(certificate_to_json(main_strat_certify(lad, {tube_module(t, 2, 2)}, 4)));
  bool originals = true;
  for (const auto& c : certs) originals = originals && replay_certificate(c).ok;
  std::mt19937_64 rng(20240601);
  int rejected = 0;
  for (int k = 0; k < 100; ++k) {
    auto text = certs[static_cast<std::size_t>(k % 2)];
    const auto pos = std::uniform_int_distribution<std::size_t>(0, text.size() - 1)(rng);
    const int bit = std::uniform_int_distribution<int>(0, 7)(rng);
    text[pos] = static_cast<char>(static_cast<unsigned char>(text[pos]) ^ (1u << bit));
    rejected += !replay_certificate(text).ok;
  }
  Notes n;
  n << first.size() << " bytes " << (first == second ? "identical" : "differ") << " across two runs; originals "
    << (originals ? "replay ok" : "rejected") << "; " << rejected << "/100 mutations rejected";
  return {first == second && originals && rejected == 100, n.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"A(n) mouth and irregular components", family_a},
      {"B(n) quasi-lengths and tau pattern", family_b},
      {"Serre and AR duality on A(2)", duality},
      {"AR sequences against knitted universes", ar_sequences},
      {"lemma registry on A(2) and A(3)", lemmas},
      {"theorem 1 ladder certificates", theorem_one},
      {"theorem 2 ladder certificates", theorem_two},
      {"sms ground truth", sms_truth},
      {"kronecker band modules", bands},
      {"determinism and replay fuzzing", determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2zu %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
