#include <algorithm>
#include <set>

#include "qlab/bqa/dsl.hpp"
#include "qlab/error.hpp"
#include "qlab/rep/hom.hpp"
#include "qlab/sms/sms.hpp"

namespace qlab {

std::string to_string(LadderMode m) { return m == LadderMode::Theorem1 ? "theorem1" : "theorem2"; }

int StratLadder::index_of(int l) const {
  if (mode == LadderMode::Theorem1) return tube->wrap(base - l);
  return tube->wrap(base);
}

int StratLadder::length_of(int l) const {
  if (mode == LadderMode::Theorem1) return l + 1;
  const int period = static_cast<int>(descent.size());
  return (l / period) * tube->rank + descent[static_cast<std::size_t>(l % period)];
}

std::vector<int> recover_descent(const TubeInfo& t, int i, const std::vector<Rep>& s) {
  const int n = t.rank;
  IsoSet members;
  for (const auto& m : s) members.insert(m);
  if (!members.contains(tube_module(t, i, n)))
    fail(ErrorKind::HypothesisUnmet, "X_" + std::to_string(t.wrap(i)) + "(" + std::to_string(n) + ") is not in the system");
  std::vector<int> descent{n};
  while (true) {
    const int prev = descent.back();
    int found = 0;
    for (int j = prev - 1; j >= 1 && !found; --j)
      if (members.contains(syzygy(tube_module(t, i + j, prev - j), 1))) found = j;
    if (!found) break;
    descent.push_back(found);
  }
  return descent;
}

namespace {

std::string conclusion_text(int depth) {
  return "not an sms (certified to depth " + std::to_string(depth) + ")";
}

int ladder_top(LadderMode mode, std::size_t descent_size, int depth) {
  return depth + (mode == LadderMode::Theorem2 ? static_cast<int>(descent_size) : 1);
}

// Index into `ladder` of the member isomorphic to y, if any.
std::optional<std::size_t> ladder_match(const std::vector<std::pair<int, Rep>>& ladder,
                                        const std::vector<Fingerprint>& fps, const Rep& y) {
  const Fingerprint fp = fingerprint(y);
  for (std::size_t k = 0; k < ladder.size(); ++k)
    if (fps[k] == fp && is_isomorphic_indecomposable(ladder[k].second, y)) return k;
  return std::nullopt;
}

// Cocone summands of the triangle N -> M -> T for the unique class in stHom(M, T).
std::vector<Rep> cocone_summands(const Rep& m, const Rep& t, const StableHom& h) {
  Matrix col(h.stable_basis.rows(), 1, m.prime());
  for (std::size_t r = 0; r < col.rows(); ++r) col(r, 0) = h.stable_basis(r, 0);
  const Morphism psi = hom_from_coordinates(m, t, col);
  const Rep n = cocone(m, t, psi);
  if (n.is_zero()) return {};
  return indecomposable_summands(n);
}

}  // namespace

Certificate main_strat_certify(const StratLadder& ladder, const std::vector<Rep>& s, int depth) {
  if (!ladder.tube) fail(ErrorKind::BadParameter, "ladder has no tube");
  if (depth < ladder.first()) fail(ErrorKind::BadParameter, "depth must be at least " + std::to_string(ladder.first()));
  if (ladder.mode == LadderMode::Theorem2) {
    if (ladder.descent.empty() || ladder.descent.front() != ladder.tube->rank)
      fail(ErrorKind::BadParameter, "theorem2 descent must start at the rank");
    for (std::size_t k = 1; k < ladder.descent.size(); ++k)
      if (ladder.descent[k] >= ladder.descent[k - 1] || ladder.descent[k] < 1)
        fail(ErrorKind::BadParameter, "descent must strictly decrease to a positive value");
  }
  const TubeInfo& t = *ladder.tube;
  Certificate c;
  c.algebra_dsl = print_algebra(*t.component.algebra);
  c.mode = ladder.mode;
  c.base = t.wrap(ladder.base);
  c.rank = t.rank;
  c.depth = depth;
  c.descent = ladder.descent;
  c.system = s;

  const int top = ladder_top(ladder.mode, ladder.descent.size(), depth);
  for (int l = ladder.first(); l <= top; ++l) {
    if (ladder.length_of(l) > t.verified_depth)
      fail(ErrorKind::DepthExceeded, "ladder member " + std::to_string(l) + " needs quasi-length " +
                                         std::to_string(ladder.length_of(l)) + ", tube verified to " +
                                         std::to_string(t.verified_depth));
    c.ladder.emplace_back(l, syzygy(tube_module(t, ladder.index_of(l), ladder.length_of(l)), 1));
  }

  const SemibrickReport sb = semibrick_check(s);
  if (!sb.semibrick) fail(ErrorKind::ConditionFailed, "system is not a stable semibrick: " + sb.reason);
  std::vector<Fingerprint> fps;
  for (const auto& [l, m] : c.ladder) fps.push_back(fingerprint(m));
  for (std::size_t a = 0; a < c.ladder.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (fps[a] == fps[b] && is_isomorphic_indecomposable(c.ladder[a].second, c.ladder[b].second))
        fail(ErrorKind::ConditionFailed, "ladder members " + std::to_string(c.ladder[b].first) + " and " +
                                             std::to_string(c.ladder[a].first) + " are isomorphic");

  for (std::size_t k = 0; k < c.ladder.size() && c.ladder[k].first <= depth; ++k) {
    const auto& [l, m] = c.ladder[k];
    for (std::size_t x = 0; x < s.size(); ++x) {
      const std::string where = "l=" + std::to_string(l) + ", member " + std::to_string(x);
      if (fingerprint(s[x]) == fps[k] && is_isomorphic(m, s[x]))
        fail(ErrorKind::ConditionFailed, "condition (i) fails at " + where);
      const StableHom h = sthom(m, s[x]);
      CertificateEntry e;
      e.l = l;
      e.member = x;
      e.stable_dim = h.stable_dim;
      if (h.stable_dim > 1)
        fail(ErrorKind::ConditionFailed,
             "stable Hom of dimension " + std::to_string(h.stable_dim) + " at " + where);
      if (h.stable_dim == 1) {
        for (const auto& y : cocone_summands(m, s[x], h)) {
          const auto hit = ladder_match(c.ladder, fps, y);
          if (!hit || c.ladder[*hit].first <= l)
            fail(ErrorKind::ConditionFailed, "condition (ii) fails at " + where + ": cocone summand " +
                                                 dims_string(y) + " is not a later ladder member");
          e.cocone.push_back(c.ladder[*hit].first);
        }
        std::sort(e.cocone.begin(), e.cocone.end());
      }
      c.entries.push_back(std::move(e));
    }
  }
  c.conclusion = conclusion_text(depth);
  return c;
}

namespace {

Json certificate_body(const Certificate& c) {
  Json body;
  body["format"] = "qlab-certificate/1";
  body["algebra"] = c.algebra_dsl;
  body["field"] = c.system.empty() ? 0u : c.system.front().prime();
  body["mode"] = to_string(c.mode);
  body["base"] = c.base;
  body["rank"] = c.rank;
  body["depth"] = c.depth;
  body["descent"] = c.descent;
  body["system"] = Json::array();
  for (const auto& m : c.system) body["system"].push_back(rep_to_json(m));
  body["ladder"] = Json::array();
  for (const auto& [l, m] : c.ladder) body["ladder"].push_back({{"l", l}, {"module", rep_to_json(m)}});
  body["entries"] = Json::array();
  for (const auto& e : c.entries)
    body["entries"].push_back({{"l", e.l}, {"member", e.member}, {"stable_dim", e.stable_dim}, {"cocone", e.cocone}});
  body["conclusion"] = c.conclusion;
  return body;
}

ReplayResult reject(std::string why) { return {false, std::move(why)}; }

}  // namespace

std::string certificate_to_json(const Certificate& c) {
  Json j = certificate_body(c);
  j["sha256"] = sha256_hex(j.dump());
  return j.dump(2) + "\n";
}

ReplayResult replay_certificate(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return reject("not a JSON object");
  if (j.dump(2) + "\n" != text) return reject("text is not in canonical form");
  if (!j.contains("sha256") || !j["sha256"].is_string()) return reject("missing digest");
  Json body = j;
  body.erase("sha256");
  if (sha256_hex(body.dump()) != j["sha256"].get<std::string>()) return reject("digest mismatch");

  try {
    if (body.at("format") != "qlab-certificate/1") return reject("unknown format");
    const auto field = body.at("field").get<std::uint32_t>();
    const AlgebraPtr alg = parse_algebra(body.at("algebra").get<std::string>(), field);
    if (alg->prime() != field) return reject("field does not match the algebra");
    const std::string mode = body.at("mode").get<std::string>();
    if (mode != "theorem1" && mode != "theorem2") return reject("unknown ladder mode");
    const int first = mode == "theorem1" ? 1 : 0;
    const int depth = body.at("depth").get<int>();
    const auto descent = body.at("descent").get<std::vector<int>>();
    if (depth < first) return reject("depth out of range");
    if (mode == "theorem2" && descent.empty()) return reject("theorem2 certificate without descent");
    if (body.at("conclusion").get<std::string>() != conclusion_text(depth)) return reject("conclusion does not match depth");

    std::vector<Rep> system;
    for (const auto& m : body.at("system")) system.push_back(rep_from_json(alg, m));
    if (system.empty()) return reject("empty system");
    for (const auto& m : system)
      if (!is_indecomposable(m) || is_projective(m)) return reject("system member is not indecomposable non-projective");
    if (!semibrick_check(system).semibrick) return reject("system is not a stable semibrick");

    std::vector<std::pair<int, Rep>> ladder;
    int expect = first;
    for (const auto& e : body.at("ladder")) {
      if (e.at("l").get<int>() != expect++) return reject("ladder indices are not consecutive");
      ladder.emplace_back(e.at("l").get<int>(), rep_from_json(alg, e.at("module")));
    }
    const int top = ladder_top(mode == "theorem1" ? LadderMode::Theorem1 : LadderMode::Theorem2, descent.size(), depth);
    if (ladder.empty() || ladder.back().first != top) return reject("ladder does not reach the required length");
    std::vector<Fingerprint> fps;
    for (const auto& [l, m] : ladder) {
      if (!is_indecomposable(m) || is_projective(m)) return reject("ladder member " + std::to_string(l) + " is not indecomposable non-projective");
      fps.push_back(fingerprint(m));
    }
    for (std::size_t a = 0; a < ladder.size(); ++a)
      for (std::size_t b = 0; b < a; ++b)
        if (fps[a] == fps[b] && is_isomorphic_indecomposable(ladder[a].second, ladder[b].second))
          return reject("ladder members are not pairwise non-isomorphic");

    std::set<std::pair<int, std::size_t>> seen;
    for (const auto& e : body.at("entries")) {
      const int l = e.at("l").get<int>();
      const auto x = e.at("member").get<std::size_t>();
      const auto dim = e.at("stable_dim").get<std::size_t>();
      auto claimed = e.at("cocone").get<std::vector<int>>();
      if (l < first || l > depth || x >= system.size()) return reject("entry out of range");
      if (!seen.insert({l, x}).second) return reject("duplicate entry");
      const Rep& m = ladder[static_cast<std::size_t>(l - first)].second;
      const std::string where = " at l=" + std::to_string(l) + ", member " + std::to_string(x);
      if (is_isomorphic(m, system[x])) return reject("condition (i) fails" + where);
      const StableHom h = sthom(m, system[x]);
      if (h.stable_dim != dim) return reject("stable Hom dimension differs" + where);
      if (dim > 1) return reject("stable Hom dimension above one" + where);
      std::vector<int> got;
      if (dim == 1)
        for (const auto& y : cocone_summands(m, system[x], h)) {
          const auto hit = ladder_match(ladder, fps, y);
          if (!hit) return reject("cocone summand is not a ladder member" + where);
          got.push_back(ladder[*hit].first);
        }
      std::sort(got.begin(), got.end());
      std::sort(claimed.begin(), claimed.end());
      if (got != claimed) return reject("cocone differs" + where);
      if (std::any_of(got.begin(), got.end(), [&](int lp) { return lp <= l; }))
        return reject("cocone summand does not move down the ladder" + where);
    }
    if (seen.size() != static_cast<std::size_t>(depth - first + 1) * system.size())
      return reject("entries do not cover every ladder member and system member");
  } catch (const std::exception& e) {
    return reject(e.what());
  }
  return {true, "ok"};
}

namespace {

struct Located {
  std::size_t member;
  int i, r;
};

std::vector<Located> locate(const std::vector<Rep>& s, const TubeInfo& t) {
  std::vector<Located> out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto node = t.component.find(s[k]);
    if (!node) continue;
    if (const auto ir = t.coords(*node)) out.push_back({k, ir->first, ir->second});
  }
  return out;
}

int needed_depth(const StratLadder& l, int depth) {
  int need = 0;
  for (int k = l.first(); k <= ladder_top(l.mode, l.descent.size(), depth); ++k) need = std::max(need, l.length_of(k));
  return need;
}

}  // namespace

TheoremReport theorem_check(const std::vector<Rep>& s, const TubeInfo& tube, const Universe* universe, int depth) {
  TheoremReport rep;
  const int n = tube.rank;
  auto loc = locate(s, tube);
  rep.in_tube = loc.size();
  for (const auto& x : loc) rep.quasi_lengths.push_back(x.r);
  const bool semibrick = semibrick_check(s).semibrick;
  const bool long_member = std::any_of(loc.begin(), loc.end(), [&](const Located& x) { return x.r >= n; });
  const std::string counts = "|S cap C| = " + std::to_string(rep.in_tube) + ", rank " + std::to_string(n);

  if (universe && universe->complete) {
    const SystemFlags f = classify_system(s, universe);
    rep.certified_sms = f.sms.value_or(false);
  }
  if (rep.certified_sms) {
    rep.conclusion_holds = rep.in_tube < static_cast<std::size_t>(n) && !long_member;
    rep.summary = "certified sms; " + counts + (rep.conclusion_holds ? "; both conclusions hold" : "; conclusion violated");
    return rep;
  }
  if (!semibrick) {
    rep.summary = "not a stable semibrick, hence not an sms; " + counts;
    return rep;
  }

  std::vector<char> mouth(static_cast<std::size_t>(n), 0);
  const Located* at_n = nullptr;
  for (const auto& x : loc) {
    if (x.r == 1) mouth[static_cast<std::size_t>(x.i - 1)] = 1;
    if (x.r == n && !at_n) at_n = &x;
  }
  const bool all_mouth = std::all_of(mouth.begin(), mouth.end(), [](char c) { return c != 0; });

  StratLadder ladder;
  ladder.tube = &tube;
  if (all_mouth) {
    ladder.mode = LadderMode::Theorem1;
    ladder.base = 1;
  } else if (at_n) {
    ladder.mode = LadderMode::Theorem2;
    ladder.base = at_n->i;
    ladder.descent = recover_descent(tube, at_n->i, s);
  } else {
    const bool violated = rep.in_tube >= static_cast<std::size_t>(n) || long_member;
    rep.conclusion_holds = !violated;
    rep.summary = violated ? "no ladder applies although the bounds are reached; " + counts
                           : "neither contrapositive applies; " + counts;
    return rep;
  }

  // A deeper tube from the same seed keeps the quasi-simple labels.
  std::optional<TubeInfo> deeper;
  const TubeInfo* use = &tube;
  const int need = needed_depth(ladder, depth);
  if (tube.verified_depth < need) {
    deeper = knit_tube(tube.component.nodes[tube.component.seed].module, need);
    use = &*deeper;
    ladder.tube = use;
  }
  try {
    rep.certificate = main_strat_certify(ladder, s, depth);
    rep.summary = rep.certificate->conclusion + " via " + to_string(ladder.mode) + " ladder; " + counts;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ConditionFailed) throw;
    rep.conclusion_holds = false;
    rep.summary = std::string("ladder conditions failed: ") + e.what();
  }
  return rep;
}

}  // namespace qlab
