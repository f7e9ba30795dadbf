#include <algorithm>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qlab/ar/ar.hpp"
#include "qlab/bqa/dsl.hpp"
#include "qlab/bqa/families.hpp"
#include "qlab/bqa/selfinj.hpp"
#include "qlab/bqa/strings.hpp"
#include "qlab/error.hpp"
#include "qlab/io/json_io.hpp"
#include "qlab/sms/sms.hpp"

using namespace qlab;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kInconclusive = 3 };

std::uint32_t default_field() {
  if (const char* env = std::getenv("QLAB_FIELD")) {
    try {
      return static_cast<std::uint32_t>(std::stoul(env));
    } catch (const std::exception&) {
      fail(ErrorKind::BadParameter, std::string("QLAB_FIELD is not a number: ") + env);
    }
  }
  return 101;
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  return read_file(path);
}

// A2, B3, kronecker, nakayama3,2, local2, or a DSL file ("-" for stdin).
AlgebraPtr load_algebra(const std::string& what, std::uint32_t p) {
  std::smatch m;
  static const std::regex family(R"(^(A|B|local)(\d+)$)");
  static const std::regex nak(R"(^nakayama(\d+),(\d+)$)");
  if (std::regex_match(what, m, family)) {
    const int n = std::stoi(m[2]);
    if (m[1] == "A") return family_A(n, p);
    if (m[1] == "B") return family_B(n, p);
    return local_algebra(n, p);
  }
  if (std::regex_match(what, m, nak)) return nakayama(std::stoi(m[1]), std::stoi(m[2]), p);
  if (what == "kronecker" || what == "kronecker_trivext") return kronecker_trivext(p);
  return parse_algebra(read_input(what), p);
}

std::optional<int> vertex_of(const Algebra& alg, const std::string& name) { return alg.quiver().find_vertex(name); }

using TubeFn = std::function<const TubeInfo*()>;

// S<v>, P<v>, X<i>(<r>), [<r>]X<i>, Om(<spec>), Om-(<spec>), band:<word>:<lambda>[:<m>],
// string:<word>, or a module JSON file.
Rep resolve(const AlgebraPtr& alg, const std::string& spec, const TubeFn& tube_fn) {
  std::smatch m;
  static const std::regex up(R"(^X(-?\d+)\((\d+)\)$)");
  static const std::regex down(R"(^\[(\d+)\]X(-?\d+)$)");
  const TubeInfo* tube = nullptr;
  auto need_tube = [&] {
    tube = tube_fn ? tube_fn() : nullptr;
    if (!tube) fail(ErrorKind::BadParameter, "'" + spec + "' needs a tube");
  };
  if (spec.rfind("Om-(", 0) == 0 && spec.back() == ')')
    return syzygy(resolve(alg, spec.substr(4, spec.size() - 5), tube_fn), -1);
  if (spec.rfind("Om(", 0) == 0 && spec.back() == ')')
    return syzygy(resolve(alg, spec.substr(3, spec.size() - 4), tube_fn), 1);
  if (std::regex_match(spec, m, up)) {
    need_tube();
    return tube_module(*tube, std::stoi(m[1]), std::stoi(m[2]));
  }
  if (std::regex_match(spec, m, down)) {
    need_tube();
    return tube_module(*tube, std::stoi(m[2]), std::stoi(m[1]), TubeStyle::Down);
  }
  if (spec.size() > 1 && (spec[0] == 'S' || spec[0] == 'P'))
    if (const auto v = vertex_of(*alg, spec.substr(1)))
      return spec[0] == 'S' ? simple_module(alg, *v) : projective_module(alg, *v);
  if (spec.rfind("band:", 0) == 0) {
    std::vector<std::string> parts;
    std::stringstream ss(spec.substr(5));
    for (std::string s; std::getline(ss, s, ':');) parts.push_back(s);
    if (parts.size() < 2 || parts.size() > 3) fail(ErrorKind::BadParameter, "band spec is band:<word>:<lambda>[:<m>]");
    return band_module(alg, parse_word(*alg, parts[0]), static_cast<std::uint32_t>(std::stoul(parts[1])),
                       parts.size() == 3 ? std::stoi(parts[2]) : 1);
  }
  if (spec.rfind("string:", 0) == 0) return string_module(alg, parse_word(*alg, spec.substr(7)));
  return rep_from_json(alg, Json::parse(read_file(spec)));
}

std::vector<Rep> resolve_set(const AlgebraPtr& alg, const std::vector<std::string>& specs, const TubeFn& tube_fn) {
  std::vector<Rep> out;
  for (const auto& s : specs) {
    if (s == "quasi-simples") {
      const TubeInfo* tube = tube_fn ? tube_fn() : nullptr;
      if (!tube) fail(ErrorKind::BadParameter, "quasi-simples needs a tube");
      for (int i = 1; i <= tube->rank; ++i) out.push_back(tube_module(*tube, i, 1));
    } else if (s == "simples") {
      for (int v = 0; v < alg->num_vertices(); ++v) {
        Rep x = simple_module(alg, v);
        if (!is_projective(x)) out.push_back(std::move(x));
      }
    } else {
      out.push_back(resolve(alg, s, tube_fn));
    }
  }
  return out;
}

struct Common {
  std::string algebra = "A2";
  std::optional<std::uint32_t> field;
  std::string seed, seed_module, out, format = "json";
  int depth = 0;
  std::size_t max_dim = 24, max_nodes = 200;

  AlgebraPtr alg() const { return load_algebra(algebra, field.value_or(default_field())); }
  std::optional<Rep> seed_rep(const AlgebraPtr& a) const {
    if (!seed_module.empty()) return rep_from_json(a, Json::parse(read_file(seed_module)));
    if (!seed.empty()) return resolve(a, seed, {});
    return std::nullopt;
  }
  // The tube of the seed, else of the first simple that lies in one.
  TubeInfo tube(const AlgebraPtr& a, int d) const {
    if (auto s = seed_rep(a)) return knit_tube(*s, d);
    for (int v = 0; v < a->num_vertices(); ++v) {
      const Rep s = simple_module(a, v);
      if (is_projective(s)) continue;
      try {
        return knit_tube(s, d);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotQuasiSerial) throw;
      }
    }
    fail(ErrorKind::NotFound, "no simple module lies in a tube; pass --seed");
  }
  // Tube built on first use.
  TubeFn lazy_tube(const AlgebraPtr& a, int d) const {
    auto cache = std::make_shared<std::optional<TubeInfo>>();
    return [this, a, d, cache]() -> const TubeInfo* {
      if (!*cache) *cache = tube(a, d);
      return &**cache;
    };
  }
  void emit(const std::string& text) const {
    if (out.empty()) {
      std::cout << text;
    } else {
      write_file(out, text);
      std::cout << out << "\n";
    }
  }
};

void add_algebra(CLI::App* c, Common& o) {
  c->add_option("--algebra,-a", o.algebra, "A<n>, B<n>, kronecker, nakayama<m>,<l>, local<t> or a DSL file");
  c->add_option("--field,-p", o.field, "field characteristic (default $QLAB_FIELD or 101)");
}
void add_seed(CLI::App* c, Common& o) {
  c->add_option("--seed", o.seed, "seed module: S<v>, band:<word>:<lambda>, string:<word>, Om(..), or a JSON file");
  c->add_option("--seed-module", o.seed_module, "seed module as Rep JSON");
}
void add_out(CLI::App* c, Common& o) { c->add_option("--out,-o", o.out, "write the artifact here"); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::pair<int, int> parse_range(const std::string& r) {
  std::smatch m;
  static const std::regex rx(R"(^(\d+)\.\.(\d+)$)");
  if (!std::regex_match(r, m, rx)) fail(ErrorKind::BadParameter, "range must look like 3..5");
  return {std::stoi(m[1]), std::stoi(m[2])};
}

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::ConditionFailed: return kFail;
    case ErrorKind::CapExceeded:
    case ErrorKind::NonSplitResidue:
    case ErrorKind::BoundExceeded:
    case ErrorKind::DepthExceeded:
    case ErrorKind::UniverseIncomplete:
    case ErrorKind::HypothesisUnmet:
    case ErrorKind::FieldTooSmall: return kInconclusive;
    default: return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qlab: stable module categories, AR components and simple-minded systems"};
  app.require_subcommand(1);
  Common o;
  int status = kPass;

  auto* parse = app.add_subcommand("parse", "parse DSL and print the canonical form");
  std::string parse_in = "-";
  parse->add_option("file", parse_in, "DSL file (default stdin)");
  parse->add_option("--field,-p", o.field, "default field characteristic");
  parse->callback([&] { std::cout << print_algebra(*parse_algebra(read_input(parse_in), o.field.value_or(default_field()))); });

  auto* example = app.add_subcommand("example", "print the DSL of a built-in family");
  std::string family;
  int en = 2, em = 2, el = 2;
  example->add_option("family", family, "A, B, kronecker_trivext, nakayama, local")->required();
  example->add_option("--n", en, "family parameter n (or t for local)");
  example->add_option("--m", em, "nakayama: number of vertices");
  example->add_option("--l", el, "nakayama: Loewy length");
  example->add_option("--field,-p", o.field, "field characteristic");
  example->callback([&] {
    const auto p = o.field.value_or(default_field());
    const int a = family == "nakayama" ? em : en;
    std::cout << family_dsl(family == "kronecker" ? "kronecker_trivext" : family, a, el, p);
  });

  auto* info = app.add_subcommand("info", "basis size and self-injectivity report");
  add_algebra(info, o);
  info->callback([&] {
    const auto a = o.alg();
    const auto& r = a->selfinjectivity();
    Json j;
    j["name"] = a->name();
    j["field"] = a->prime();
    j["dim"] = a->dim();
    j["vertices"] = a->quiver().vertex_names();
    j["nilpotency"] = a->nilpotency();
    j["loewy_length"] = a->loewy_length();
    j["self_injective"] = r.is_self_injective;
    if (r.is_self_injective) {
      Json perm;
      for (int v = 0; v < a->num_vertices(); ++v)
        perm[a->quiver().vertex_name(v)] = a->quiver().vertex_name(r.nakayama_perm[static_cast<std::size_t>(v)]);
      j["nakayama_perm"] = perm;
      j["weakly_symmetric"] = r.weakly_symmetric();
    }
    j["symmetric"] = r.symmetric();
    Json dims;
    for (int v = 0; v < a->num_vertices(); ++v) dims[a->quiver().vertex_name(v)] = dims_string(projective_module(a, v));
    j["projective_dims"] = dims;
    std::cout << dump(j);
  });

  auto* knit = app.add_subcommand("knit", "knit the AR component of a seed");
  add_algebra(knit, o);
  add_seed(knit, o);
  add_out(knit, o);
  knit->add_option("--max-dim", o.max_dim, "largest module dimension expanded");
  knit->add_option("--max-nodes", o.max_nodes, "node cap");
  knit->add_option("--format", o.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  knit->callback([&] {
    const auto a = o.alg();
    const auto seed = o.seed_rep(a);
    if (!seed) fail(ErrorKind::BadParameter, "knit needs --seed or --seed-module");
    const Component c = knit_component(*seed, {o.max_dim, o.max_nodes});
    std::optional<TubeInfo> t;
    try {
      t = tube_info(c);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotQuasiSerial) throw;
    }
    o.emit(o.format == "dot" ? component_to_dot(c, t ? &*t : nullptr) : component_to_json(c, t ? &*t : nullptr));
    if (!c.complete) std::cerr << "component not closed within the bounds (" << c.frontier.size() << " frontier nodes)\n";
  });

  auto* tube = app.add_subcommand("tube", "classify a tube and export its grid");
  add_algebra(tube, o);
  add_seed(tube, o);
  add_out(tube, o);
  tube->add_option("--depth", o.depth, "quasi-length to verify and export")->default_val(4);
  tube->add_option("--format", o.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  tube->callback([&] {
    const auto a = o.alg();
    const TubeInfo t = o.tube(a, o.depth);
    if (t.verified_depth < o.depth) fail(ErrorKind::DepthExceeded, "tube verified only to depth " + std::to_string(t.verified_depth));
    o.emit(o.format == "dot" ? component_to_dot(t.component, &t, o.depth) : component_to_json(t.component, &t, o.depth));
  });

  auto* sth = app.add_subcommand("sthom", "dimension of the stable Hom space");
  add_algebra(sth, o);
  add_seed(sth, o);
  std::string left, right;
  sth->add_option("left", left, "source module")->required();
  sth->add_option("right", right, "target module")->required();
  sth->callback([&] {
    const auto a = o.alg();
    const auto t = o.lazy_tube(a, 8);
    const Rep m = resolve(a, left, t), n = resolve(a, right, t);
    const StableHom h = sthom(m, n);
    std::cout << dump({{"hom", h.full_dim}, {"projective", h.proj_factor_dim}, {"stable", h.stable_dim}});
  });

  auto* semi = app.add_subcommand("semibrick", "stable semibrick check");
  add_algebra(semi, o);
  add_seed(semi, o);
  std::vector<std::string> set;
  semi->add_option("--set", set, "members (S<v>, X<i>(<r>), quasi-simples, simples, ...)")->required();
  semi->callback([&] {
    const auto a = o.alg();
    const auto s = resolve_set(a, set, o.lazy_tube(a, 8));
    const auto r = semibrick_check(s);
    std::cout << dump({{"semibrick", r.semibrick}, {"stable_dims", r.stable_dims}, {"reason", r.reason}});
    status = r.semibrick ? kPass : kFail;
  });

  auto* clo = app.add_subcommand("closure", "extension closure levels");
  add_algebra(clo, o);
  add_seed(clo, o);
  std::size_t cap = 6;
  bool use_universe = false;
  clo->add_option("--set", set, "generators")->required();
  clo->add_option("--cap", cap, "number of levels");
  clo->add_flag("--universe", use_universe, "intersect with the knitted universe");
  clo->callback([&] {
    const auto a = o.alg();
    const auto s = resolve_set(a, set, o.lazy_tube(a, 8));
    std::optional<Universe> u;
    if (use_universe) u = knit_universe(a);
    const ClosureState st = closure(s, cap, u ? &*u : nullptr);
    Json levels = Json::array();
    for (const auto& lv : st.levels) {
      Json l = Json::array();
      for (const auto& m : lv) l.push_back(dims_string(m));
      levels.push_back(l);
    }
    std::cout << dump({{"levels", levels}, {"saturated", st.saturated}, {"cap", st.cap},
                       {"closure", "triangle closure (S)_n; left terms are level members and sums of two"}});
  });

  auto* sms = app.add_subcommand("sms", "simple-minded systems");
  sms->require_subcommand(1);
  auto* enumerate = sms->add_subcommand("enumerate", "all sms of a representation-finite algebra");
  add_algebra(enumerate, o);
  add_out(enumerate, o);
  enumerate->callback([&] {
    const auto a = o.alg();
    const Universe u = knit_universe(a);
    const auto list = enumerate_sms(u);
    Json j = Json::array();
    for (const auto& s : list) {
      Json sys = Json::array();
      for (const auto& m : s) sys.push_back({{"dims", dims_string(m)}, {"fingerprint", to_string(fingerprint(m))}});
      j.push_back(sys);
    }
    o.emit(dump({{"algebra", a->name()}, {"universe", u.modules.size()}, {"sms", j}}));
  });

  auto* verify = app.add_subcommand("verify", "check a lemma on a tube");
  add_algebra(verify, o);
  add_seed(verify, o);
  add_out(verify, o);
  std::string lemma, range;
  verify->add_option("--lemma", lemma, "lemma id, or 'all'")->required();
  verify->add_option("--range", range, "quasi-length range r0..r1 (default 1..2n+2)");
  verify->callback([&] {
    const auto a = o.alg();
    LemmaBounds b;
    if (!range.empty()) std::tie(b.min_r, b.max_r) = parse_range(range);
    TubeInfo t = o.tube(a, b.max_r > 0 ? b.max_r : 8);
    if (b.max_r == 0 && t.verified_depth < 2 * t.rank + 2) t = o.tube(a, 2 * t.rank + 2);
    const std::vector<std::string> ids = lemma == "all" ? lemma_ids() : std::vector<std::string>{lemma};
    Json reports = Json::array();
    bool any_fail = false, any_open = false;
    for (const auto& id : ids) {
      const LemmaReport r = verify_lemma(t, id, b);
      std::cerr << id << ": " << to_string(r.verdict) << " (" << r.checked << " checked, " << r.hypothesis_unmet
                << " hypothesis unmet)\n";
      any_fail = any_fail || r.verdict == Verdict::Fail;
      any_open = any_open || r.verdict == Verdict::Inconclusive;
      reports.push_back(r.to_json());
    }
    o.emit(dump(ids.size() == 1 ? reports[0] : reports));
    status = any_fail ? kFail : any_open ? kInconclusive : kPass;
  });

  auto* check = app.add_subcommand("check", "test a theorem's conclusion on a system");
  add_algebra(check, o);
  add_seed(check, o);
  int theorem = 1;
  std::string cert_out = "certificate.json";
  check->add_option("--theorem", theorem, "1 (count in the tube) or 2 (quasi-length)")->check(CLI::IsMember({1, 2}));
  check->add_option("--set", set, "system members")->required();
  check->add_option("--depth", o.depth, "certificate depth")->default_val(6);
  check->add_option("--certificate", cert_out, "where to write a certificate");
  check->add_flag("--universe", use_universe, "knit the universe to test for a certified sms");
  check->callback([&] {
    const auto a = o.alg();
    const TubeInfo t = o.tube(a, 8);
    const auto s = resolve_set(a, set, [&] { return &t; });
    std::optional<Universe> u;
    if (use_universe) u = knit_universe(a);
    const TheoremReport r = theorem_check(s, t, u ? &*u : nullptr, o.depth);
    const int n = t.rank;
    const bool count_ok = r.in_tube < static_cast<std::size_t>(n);
    const bool length_ok = std::all_of(r.quasi_lengths.begin(), r.quasi_lengths.end(), [&](int q) { return q < n; });
    Json j{{"rank", n},
           {"in_tube", r.in_tube},
           {"quasi_lengths", r.quasi_lengths},
           {"certified_sms", r.certified_sms},
           {"hypothesis_met", theorem == 1 ? !count_ok : !length_ok},
           {"conclusion_holds", r.conclusion_holds},
           {"summary", r.summary}};
    if (r.certificate) {
      write_file(cert_out, certificate_to_json(*r.certificate));
      j["certificate"] = cert_out;
    }
    std::cout << dump(j);
    status = r.conclusion_holds ? kPass : kFail;
  });

  auto* certify = app.add_subcommand("certify", "run the divergence certifier on a ladder");
  add_algebra(certify, o);
  add_seed(certify, o);
  std::string mode = "theorem1";
  int base = 1;
  certify->add_option("--ladder", mode, "theorem1 or theorem2")->check(CLI::IsMember({"theorem1", "theorem2"}));
  certify->add_option("--base", base, "base index i");
  certify->add_option("--set", set, "system (default: quasi-simples, or X_i(n) for theorem2)");
  certify->add_option("--depth", o.depth, "ladder depth")->default_val(6);
  add_out(certify, o);
  certify->callback([&] {
    const auto a = o.alg();
    TubeInfo t = o.tube(a, 8);
    StratLadder l;
    l.mode = mode == "theorem1" ? LadderMode::Theorem1 : LadderMode::Theorem2;
    l.base = base;
    std::vector<Rep> s;
    const TubeFn here = [&] { return &t; };
    if (!set.empty())
      s = resolve_set(a, set, here);
    else if (l.mode == LadderMode::Theorem1)
      s = resolve_set(a, {"quasi-simples"}, here);
    else
      s = {tube_module(t, base, t.rank)};
    if (l.mode == LadderMode::Theorem2) l.descent = recover_descent(t, base, s);
    int need = 0;
    l.tube = &t;
    const int top = o.depth + (l.mode == LadderMode::Theorem2 ? static_cast<int>(l.descent.size()) : 1);
    for (int k = l.first(); k <= top; ++k) need = std::max(need, l.length_of(k));
    if (t.verified_depth < need) t = o.tube(a, need);
    l.tube = &t;
    const Certificate c = main_strat_certify(l, s, o.depth);
    o.emit(certificate_to_json(c));
  });

  auto* replay = app.add_subcommand("replay", "re-verify a certificate from its JSON alone");
  std::string cert_in;
  replay->add_option("certificate", cert_in, "certificate file")->required();
  replay->callback([&] {
    const ReplayResult r = replay_certificate(read_file(cert_in));
    std::cout << (r.ok ? "ok" : "rejected: " + r.reason) << "\n";
    status = r.ok ? kPass : kFail;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return status;
}
