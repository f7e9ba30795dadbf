#include <algorithm>
#include <functional>
#include <set>

#include "qlab/error.hpp"
#include "qlab/sms/sms.hpp"

namespace qlab {

std::size_t IsoSet::insert(const Rep& m, bool* fresh) {
  if (auto k = find(m)) {
    if (fresh) *fresh = false;
    return *k;
  }
  items_.push_back(m);
  fps_.push_back(fingerprint(m));
  if (fresh) *fresh = true;
  return items_.size() - 1;
}

std::optional<std::size_t> IsoSet::find(const Rep& m) const {
  const Fingerprint fp = fingerprint(m);
  for (std::size_t k = 0; k < items_.size(); ++k)
    if (fps_[k] == fp && is_isomorphic_indecomposable(items_[k], m)) return k;
  return std::nullopt;
}

namespace {

std::vector<Rep> sorted_by_fingerprint(std::vector<Rep> v) {
  std::vector<std::pair<Fingerprint, std::size_t>> keys;
  for (std::size_t k = 0; k < v.size(); ++k) keys.emplace_back(fingerprint(v[k]), k);
  std::stable_sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Rep> out;
  for (const auto& [fp, k] : keys) out.push_back(v[k]);
  return out;
}

std::size_t class_count(std::size_t d, std::uint32_t p, std::size_t cap) {
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) {
    if (total > cap / p + 1) return cap + 1;
    total *= p;
  }
  return total;
}

}  // namespace

Universe knit_universe(const AlgebraPtr& alg, const KnitBounds& bounds) {
  require_self_injective(*alg);
  Universe u;
  u.complete = true;
  IsoSet seen;
  for (int v = 0; v < alg->num_vertices(); ++v) {
    const Rep s = simple_module(alg, v);
    if (is_projective(s) || seen.contains(s)) continue;
    const Component c = knit_component(s, bounds);
    u.complete = u.complete && c.complete;
    for (const auto& n : c.nodes)
      if (!n.projective) seen.insert(n.module);
  }
  u.modules = sorted_by_fingerprint(seen.items());
  return u;
}

namespace {

void add_class(std::vector<Rep>& out, const Rep& m) {
  for (const auto& y : out)
    if (y.dims() == m.dims() && is_isomorphic(y, m)) return;
  out.push_back(m);
}

// Middles of the classes (phi_1, ..., phi_k) in Ext^1(Z, X_1 (+) ... (+) X_k) with every phi_j
// nonzero; rescaling a component by a scalar automorphism of X_j keeps the middle, so each
// component runs over a projective space.
std::vector<Rep> product_sweep(const Rep& z, const std::vector<Rep>& parts, std::size_t sweep_cap) {
  std::vector<Ext1> exts;
  std::vector<std::vector<Matrix>> points;
  std::size_t total = 1;
  for (const auto& x : parts) {
    exts.push_back(ext1(z, x));
    const std::size_t d = exts.back().dim();
    if (d == 0) return {};
    if (class_count(d, z.prime(), sweep_cap) > sweep_cap)
      fail(ErrorKind::CapExceeded, "stable Hom of dimension " + std::to_string(d) + " is too large to sweep");
    points.push_back(projective_points(d, z.prime(), sweep_cap));
    total *= points.back().size();
    if (total > sweep_cap) fail(ErrorKind::CapExceeded, "class sweep over a direct sum exceeds the cap");
  }
  const Rep sum = direct_sum(parts);
  const Rep& omega = exts.front().cover_of_n.kernel_or_cokernel;
  const auto& gens = omega.presentation().gen_vertex;
  std::vector<Rep> out;
  std::vector<std::size_t> pick(parts.size(), 0);
  while (true) {
    std::vector<Matrix> comp;
    for (std::size_t j = 0; j < parts.size(); ++j) comp.push_back(exts[j].classes.stable_basis * points[j][pick[j]]);
    std::size_t rows = 0;
    for (int v : gens) rows += sum.dim(v);
    Matrix coords(rows, 1, z.prime());
    std::vector<std::size_t> offs(parts.size(), 0);
    std::size_t r = 0;
    for (int v : gens)
      for (std::size_t j = 0; j < parts.size(); ++j) {
        const auto d = parts[j].dim(v);
        for (std::size_t k = 0; k < d; ++k) coords(r++, 0) = comp[j](offs[j] + k, 0);
        offs[j] += d;
      }
    add_class(out, strip_projective(extension(exts.front(), z, sum, coords).middle));
    std::size_t j = 0;
    while (j < parts.size() && ++pick[j] == points[j].size()) pick[j++] = 0;
    if (j == parts.size()) break;
  }
  return out;
}

}  // namespace

std::vector<Rep> cone_middles(const Rep& z, const Rep& x, std::size_t sweep_cap) {
  std::vector<Rep> out;
  add_class(out, strip_projective(direct_sum(x, z)));
  for (const auto& m : product_sweep(z, {x}, sweep_cap)) add_class(out, m);
  return out;
}

std::optional<std::size_t> ClosureState::level_of(const Rep& m) const {
  const Fingerprint fp = fingerprint(m);
  for (std::size_t n = 0; n < levels.size(); ++n)
    for (const auto& y : levels[n])
      if (fingerprint(y) == fp && is_isomorphic_indecomposable(y, m)) return n + 1;
  return std::nullopt;
}

namespace {

ClosureState closure_impl(const std::vector<Rep>& s, std::size_t cap, const Universe* universe, std::size_t sweep_cap,
                          const Rep* target) {
  ClosureState st;
  st.generators = s;
  st.cap = cap;
  IsoSet level;
  for (const auto& m : s) {
    if (strip_projective(m).is_zero()) fail(ErrorKind::ProjectiveInput, "closure generator is projective");
    level.insert(m);
  }
  st.levels.push_back(level.items());
  IsoSet in_universe;
  if (universe)
    for (const auto& m : universe->modules) in_universe.insert(m);

  // ext dims are cached per (generator, member) since members only accumulate.
  std::vector<std::vector<std::size_t>> ext_dim(s.size());
  std::vector<Rep> omega;
  for (const auto& z : s) omega.push_back(syzygy(z, 1));
  std::size_t processed = 0;  // members whose combinations have been expanded

  auto reached = [&] { return target && level.contains(*target); };
  while (st.levels.size() < cap && !reached()) {
    const std::vector<Rep> members = level.items();
    for (std::size_t z = 0; z < s.size(); ++z)
      while (ext_dim[z].size() < members.size()) ext_dim[z].push_back(sthom_dim(omega[z], members[ext_dim[z].size()]));
    IsoSet next = level;
    auto absorb = [&](const Rep& middle) {
      if (middle.is_zero()) return;
      for (const auto& y : indecomposable_summands(middle)) {
        if (universe && !in_universe.contains(y)) continue;
        next.insert(y);
      }
    };
    for (std::size_t z = 0; z < s.size(); ++z) {
      for (std::size_t a = processed; a < members.size(); ++a) {
        if (ext_dim[z][a] == 0) continue;
        for (const auto& m : cone_middles(s[z], members[a], sweep_cap)) absorb(m);
        for (std::size_t b = 0; b <= a; ++b) {
          if (ext_dim[z][b] == 0) continue;
          for (const auto& m : product_sweep(s[z], {members[a], members[b]}, sweep_cap)) absorb(m);
        }
      }
    }
    processed = members.size();
    if (next.size() == level.size()) {
      st.saturated = true;
      break;
    }
    level = std::move(next);
    st.levels.push_back(level.items());
  }
  return st;
}

}  // namespace

ClosureState closure(const std::vector<Rep>& s, std::size_t cap, const Universe* universe, std::size_t sweep_cap) {
  return closure_impl(s, cap, universe, sweep_cap, nullptr);
}

Ell ell(const std::vector<Rep>& s, const Rep& x, std::size_t cap, const Universe* universe) {
  const ClosureState st = closure_impl(s, cap, universe, 1000000, &x);
  Ell e;
  e.cap = cap;
  e.value = st.level_of(x);
  return e;
}

SystemFlags classify_system(const std::vector<Rep>& s, const Universe* universe, bool sms_required) {
  SystemFlags f;
  f.semibrick = semibrick_check(s).semibrick;
  f.notes.push_back("closure: triangle-closure levels (S)_n; left terms range over level members and sums of two");
  if (!universe) {
    if (sms_required) fail(ErrorKind::UniverseIncomplete, "no universe of indecomposables for this algebra");
    f.notes.push_back("no universe: wsms and sms flags not evaluated");
    return f;
  }
  bool spans = true;
  for (const auto& x : universe->modules) {
    const bool hit = std::any_of(s.begin(), s.end(), [&](const Rep& t) { return sthom_dim(x, t) > 0; });
    if (!hit) {
      spans = false;
      break;
    }
  }
  f.wsms = f.semibrick && spans;
  f.notes.push_back("spans: every X in the universe has some member T with stHom(X, T) != 0");
  bool tau_free = true;
  for (const auto& t : s)
    if (is_isomorphic(tau(t, 1), t)) tau_free = false;
  f.maximal_orthogonal = *f.wsms && tau_free;
  if (!universe->complete) {
    if (sms_required) fail(ErrorKind::UniverseIncomplete, "algebra is not certified representation-finite");
    f.notes.push_back("universe not certified complete: sms flag refused");
    return f;
  }
  if (!f.semibrick) {
    f.sms = false;
    return f;
  }
  const ClosureState st = closure(s, universe->modules.size() + 2, universe);
  bool covers = true;
  for (const auto& x : universe->modules)
    if (!st.level_of(x)) covers = false;
  f.sms = covers;
  return f;
}

std::vector<std::vector<Rep>> enumerate_sms(const Universe& universe, std::size_t cap) {
  if (!universe.complete) fail(ErrorKind::UniverseIncomplete, "sms enumeration needs a complete universe");
  std::vector<Rep> bricks;
  for (const auto& x : universe.modules)
    if (sthom_dim(x, x) == 1) bricks.push_back(x);
  const std::size_t b = bricks.size();
  std::vector<std::vector<char>> orth(b, std::vector<char>(b, 0));
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = i + 1; j < b; ++j)
      orth[i][j] = orth[j][i] = sthom_dim(bricks[i], bricks[j]) == 0 && sthom_dim(bricks[j], bricks[i]) == 0;

  std::vector<std::vector<Rep>> out;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    if (!chosen.empty()) {
      std::vector<Rep> sys;
      for (auto k : chosen) sys.push_back(bricks[k]);
      const ClosureState st = closure(sys, std::max(cap, universe.modules.size() + 2), &universe);
      bool covers = true;
      for (const auto& x : universe.modules)
        if (!st.level_of(x)) {
          covers = false;
          break;
        }
      if (covers) out.push_back(std::move(sys));
    }
    for (std::size_t k = from; k < b; ++k) {
      if (!std::all_of(chosen.begin(), chosen.end(), [&](std::size_t c) { return orth[c][k]; })) continue;
      chosen.push_back(k);
      grow(k + 1);
      chosen.pop_back();
    }
  };
  grow(0);
  return out;
}

}  // namespace qlab
