#include "qlab/ar/ar.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "json.hpp"
#include "qlab/error.hpp"

namespace qlab {

namespace {

Matrix stable_class(const StableHom& s, const Rep& m, const Rep& n, const Morphism& f) {
  return s.stable_coordinates(hom_coordinates(m, n, f));
}

}  // namespace

std::vector<Matrix> projective_points(std::size_t d, std::uint32_t p, std::size_t cap) {
  // count = (p^d - 1) / (p - 1)
  std::size_t count = 0, pw = 1;
  for (std::size_t k = 0; k < d; ++k) {
    count += pw;
    if (count > cap) fail(ErrorKind::CapExceeded, "class sweep of dimension " + std::to_string(d) + " exceeds cap");
    pw *= p;
  }
  std::vector<Matrix> out;
  out.reserve(count);
  for (std::size_t lead = 0; lead < d; ++lead) {
    const std::size_t free = d - lead - 1;
    std::vector<std::uint32_t> tail(free, 0);
    while (true) {
      Matrix v(d, 1, p);
      v(lead, 0) = 1;
      for (std::size_t k = 0; k < free; ++k) v(lead + 1 + k, 0) = tail[k];
      out.push_back(std::move(v));
      std::size_t k = 0;
      while (k < free && ++tail[k] == p) tail[k++] = 0;
      if (k == free) break;
    }
  }
  return out;
}

ARSequence ar_sequence(const Rep& n) {
  require_self_injective(n.algebra());
  if (strip_projective(n).is_zero()) fail(ErrorKind::ProjectiveInput, "AR sequence ending in a projective module");
  const EndData end = end_with_radical(n);
  if (!end.local) fail(ErrorKind::BadParameter, "AR sequence needs an indecomposable end term");
  if (end.residue_dim != 1) fail(ErrorKind::NonSplitResidue, "End(N)/rad is not the ground field");

  ARSequence s;
  s.right = n;
  s.left = tau(n, 1);
  const Ext1 e = ext1(n, s.left);
  s.ext_dim = e.dim();
  if (s.ext_dim == 0) fail(ErrorKind::Internal, "Ext^1(N, tau N) vanishes");
  const Rep& omega = e.cover_of_n.kernel_or_cokernel;

  // Right action of rad End(N) on Ext^1 through Omega: phi -> phi o Omega(r).
  Matrix eqs(0, s.ext_dim, n.prime());
  for (std::size_t c = 0; c < end.radical.cols(); ++c) {
    const Morphism r = combine(end.end, n, n, end.radical.column(c));
    const Morphism omr = syzygy_of_map(e.cover_of_n, r);
    Matrix block(s.ext_dim, s.ext_dim, n.prime());
    for (std::size_t k = 0; k < s.ext_dim; ++k) {
      const Morphism phi = hom_from_coordinates(omega, s.left, e.classes.stable_basis.column(k));
      block.set_block(0, k, stable_class(e.classes, omega, s.left, compose(phi, omr)));
    }
    eqs = ff::vstack(eqs, block);
  }
  const Matrix soc = eqs.rows() == 0 ? Matrix::identity(s.ext_dim, n.prime()) : ff::nullspace(eqs);
  s.socle_dim = soc.cols();
  if (s.socle_dim != 1)
    fail(ErrorKind::SocleNotLine, "socle of Ext^1(N, tau N) has dimension " + std::to_string(s.socle_dim));
  s.class_coords = e.classes.stable_basis * soc;
  s.ext = extension(e, n, s.left, s.class_coords);
  s.middle = decompose(s.ext.middle);
  return s;
}

ARCheck check_ar_sequence(const ARSequence& s, const std::vector<Rep>& universe) {
  ARCheck r;
  const Rep& e = s.ext.middle;
  r.additive = s.left.total_dim() + s.right.total_dim() == e.total_dim();
  std::size_t mid = 0;
  for (const auto& x : s.middle.flat()) mid += x.total_dim();
  r.additive = r.additive && mid == e.total_dim();
  r.exact = is_homomorphism(s.left, e, s.ext.left) && is_homomorphism(e, s.right, s.ext.right) &&
            is_injective(s.ext.left) && is_surjective(s.ext.right) && is_zero(compose(s.ext.right, s.ext.left));
  if (r.exact) {
    std::size_t ranks = 0;
    for (const auto& c : s.ext.right.comps) ranks += ff::rank(c);
    r.exact = ranks + s.left.total_dim() == e.total_dim();
  }
  // Non-split: the identity of N does not lift.
  {
    const HomSpace h = hom_space(s.right, e);
    Matrix img(hom_coordinate_count(s.right, s.right), 0, e.prime());
    for (const auto& f : h.basis) img = ff::hstack(img, hom_coordinates(s.right, s.right, compose(s.ext.right, f)));
    const Matrix id = hom_coordinates(s.right, s.right, identity_map(s.right));
    r.non_split = !ff::solve(img, id).has_value();
  }
  r.lifting = true;
  for (std::size_t u = 0; u < universe.size(); ++u) {
    const Rep& x = universe[u];
    const std::size_t full = hom_dim(x, s.right);
    if (full == 0) continue;
    const HomSpace h = hom_space(x, e);
    Matrix img(hom_coordinate_count(x, s.right), 0, e.prime());
    for (const auto& f : h.basis) img = ff::hstack(img, hom_coordinates(x, s.right, compose(s.ext.right, f)));
    const std::size_t got = img.cols() ? ff::rank(img) : 0;
    const bool iso = x.dims() == s.right.dims() && is_isomorphic_indecomposable(x, s.right);
    const std::size_t want = full - (iso ? 1 : 0);
    if (got != want) {
      r.lifting = false;
      r.detail = "universe member " + std::to_string(u) + ": " + std::to_string(got) + " of " + std::to_string(want) +
                 " radical maps lift";
      break;
    }
  }
  return r;
}

std::optional<std::size_t> Component::find(const Rep& m) const {
  const Fingerprint fp = fingerprint(m);
  for (std::size_t k = 0; k < nodes.size(); ++k)
    if (nodes[k].fp == fp && is_isomorphic_indecomposable(nodes[k].module, m)) return k;
  return std::nullopt;
}

std::size_t Component::stable_size() const {
  return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const auto& n) { return !n.projective; }));
}

std::vector<std::pair<std::size_t, int>> Component::stable_middle(std::size_t k) const {
  std::vector<std::pair<std::size_t, int>> out;
  for (const auto& [j, m] : nodes[k].middle)
    if (!nodes[j].projective) out.emplace_back(j, m);
  return out;
}

namespace {

struct Knitter {
  Component& c;
  std::deque<std::size_t> queue;

  std::size_t insert(const Rep& m, bool* fresh = nullptr) {
    if (auto k = c.find(m)) {
      if (fresh) *fresh = false;
      return *k;
    }
    ComponentNode n;
    n.module = m;
    n.fp = fingerprint(m);
    n.projective = is_projective(m);
    c.nodes.push_back(std::move(n));
    if (fresh) *fresh = true;
    return c.nodes.size() - 1;
  }

  void add_arrow(std::size_t from, std::size_t to, int mult) {
    for (auto& a : c.arrows)
      if (a.from == from && a.to == to) {
        a.mult = std::max(a.mult, mult);
        return;
      }
    c.arrows.push_back({from, to, mult});
  }

  void enqueue(std::size_t k) {
    if (!c.nodes[k].projective) queue.push_back(k);
  }

  bool expandable(std::size_t k, const KnitBounds& b) const {
    const auto& n = c.nodes[k];
    return !n.projective && n.module.total_dim() <= b.max_dim;
  }

  bool done(std::size_t k) const {
    const auto& n = c.nodes[k];
    return n.projective || (n.mesh && n.tau_inv.has_value());
  }

  void expand(std::size_t k) {
    if (!c.nodes[k].mesh) {
      const ARSequence s = ar_sequence(c.nodes[k].module);
      bool fresh = false;
      const std::size_t t = insert(s.left, &fresh);
      if (fresh) enqueue(t);
      c.nodes[k].tau = t;
      c.nodes[t].tau_inv = k;
      std::vector<std::pair<std::size_t, int>> mid;
      for (const auto& [m, mult] : s.middle.summands) {
        const std::size_t j = insert(m, &fresh);
        if (fresh) enqueue(j);
        mid.emplace_back(j, mult);
        add_arrow(j, k, mult);
        add_arrow(t, j, mult);
      }
      std::sort(mid.begin(), mid.end());
      c.nodes[k].middle = std::move(mid);
      c.nodes[k].mesh = true;
    }
    if (!c.nodes[k].tau_inv) {
      bool fresh = false;
      const std::size_t t = insert(tau(c.nodes[k].module, -1), &fresh);
      if (fresh) enqueue(t);
      c.nodes[k].tau_inv = t;
      c.nodes[t].tau = k;
    }
  }
};

}  // namespace

void extend_component(Component& c, const KnitBounds& bounds) {
  Knitter kn{c, {}};
  for (std::size_t k = 0; k < c.nodes.size(); ++k) kn.enqueue(k);
  while (!kn.queue.empty()) {
    const std::size_t k = kn.queue.front();
    kn.queue.pop_front();
    if (kn.done(k) || !kn.expandable(k, bounds)) continue;
    if (c.nodes.size() >= bounds.max_nodes) continue;
    kn.expand(k);
  }
  c.frontier.clear();
  for (std::size_t k = 0; k < c.nodes.size(); ++k)
    if (!kn.done(k)) c.frontier.push_back(k);
  c.complete = c.frontier.empty();
}

Component knit_component(const Rep& seed, const KnitBounds& bounds) {
  if (!is_indecomposable(seed)) fail(ErrorKind::BadParameter, "knitting needs an indecomposable seed");
  require_self_injective(seed.algebra());
  Component c;
  c.algebra = seed.algebra_ptr();
  ComponentNode n;
  n.module = seed;
  n.fp = fingerprint(seed);
  n.projective = is_projective(seed);
  c.nodes.push_back(std::move(n));
  c.seed = 0;
  extend_component(c, bounds);
  return c;
}

int TubeInfo::wrap(int i) const { return ((i - 1) % rank + rank) % rank + 1; }

std::size_t TubeInfo::node(int i, int r) const {
  if (r < 1 || r > verified_depth)
    fail(ErrorKind::BoundExceeded, "quasi-length " + std::to_string(r) + " beyond verified depth " +
                                       std::to_string(verified_depth));
  return grid[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(wrap(i) - 1)];
}

std::optional<std::pair<int, int>> TubeInfo::coords(std::size_t k) const {
  for (std::size_t r = 0; r < grid.size(); ++r)
    for (std::size_t i = 0; i < grid[r].size(); ++i)
      if (grid[r][i] == k) return std::make_pair(static_cast<int>(i) + 1, static_cast<int>(r) + 1);
  return std::nullopt;
}

namespace {

int stable_count(const Component& c, std::size_t k) {
  int s = 0;
  for (const auto& [j, m] : c.stable_middle(k)) s += m;
  return s;
}

[[noreturn]] void not_quasi_serial(const std::string& why) { fail(ErrorKind::NotQuasiSerial, why); }

}  // namespace

TubeInfo tube_info(const Component& c) {
  TubeInfo t;
  t.component = c;
  std::vector<std::size_t> mouths;
  for (std::size_t k = 0; k < c.nodes.size(); ++k)
    if (!c.nodes[k].projective && c.nodes[k].mesh && stable_count(c, k) == 1) mouths.push_back(k);
  if (mouths.empty()) not_quasi_serial("no node with a single stable predecessor");

  // tau-orbit of the first mouth node, in the tau^{-1} direction.
  std::vector<std::size_t> orbit{mouths.front()};
  while (true) {
    const auto& n = c.nodes[orbit.back()];
    if (!n.tau_inv) not_quasi_serial("mouth orbit leaves the knitted region");
    const std::size_t nx = *n.tau_inv;
    if (nx == orbit.front()) break;
    if (std::find(orbit.begin(), orbit.end(), nx) != orbit.end()) not_quasi_serial("tau-orbit is not a cycle");
    orbit.push_back(nx);
  }
  for (auto k : orbit)
    if (!c.nodes[k].mesh || stable_count(c, k) != 1) not_quasi_serial("mouth orbit is not uniform");
  for (auto k : mouths)
    if (std::find(orbit.begin(), orbit.end(), k) == orbit.end())
      not_quasi_serial("more than one tau-orbit on the mouth");
  t.rank = static_cast<int>(orbit.size());

  // X_1 = smallest fingerprint on the mouth, X_{i+1} = tau^{-1} X_i.
  std::size_t start = 0;
  for (std::size_t k = 1; k < orbit.size(); ++k)
    if (c.nodes[orbit[k]].fp < c.nodes[orbit[start]].fp) start = k;
  std::rotate(orbit.begin(), orbit.begin() + static_cast<std::ptrdiff_t>(start), orbit.end());
  t.grid.push_back(orbit);
  t.verified_depth = 1;
  const auto n = static_cast<std::size_t>(t.rank);

  std::vector<char> used(c.nodes.size(), 0);
  for (auto k : orbit) used[k] = 1;
  while (true) {
    const std::size_t r = t.grid.size();  // current top level, 1-based
    std::vector<std::size_t> next(n);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const std::size_t y = t.grid[r - 1][(i + 1) % n];  // X_{i+1}(r)
      const auto& yn = c.nodes[y];
      if (!yn.mesh) {
        ok = false;
        break;
      }
      if (yn.tau != t.grid[r - 1][i]) not_quasi_serial("tau does not shift the sectional grid");
      auto mid = c.stable_middle(y);
      if (r >= 2) {
        const std::size_t below = t.grid[r - 2][(i + 1) % n];
        auto it = std::find_if(mid.begin(), mid.end(), [&](const auto& e) { return e.first == below; });
        if (it == mid.end()) not_quasi_serial("mesh misses the lower sectional neighbour");
        if (--it->second == 0) mid.erase(it);
      }
      if (mid.size() != 1 || mid.front().second != 1) not_quasi_serial("mesh shape differs from ZA_infinity");
      next[i] = mid.front().first;
    }
    if (!ok) break;
    for (auto k : next) {
      if (used[k]) not_quasi_serial("sectional grid revisits a node");
      used[k] = 1;
    }
    t.grid.push_back(std::move(next));
    t.verified_depth = static_cast<int>(t.grid.size());
  }
  if (c.complete) {
    for (std::size_t k = 0; k < c.nodes.size(); ++k)
      if (!c.nodes[k].projective && !used[k]) not_quasi_serial("stable node outside the sectional grid");
  }
  return t;
}

TubeInfo knit_tube(const Rep& seed, int depth, std::size_t max_nodes) {
  KnitBounds b;
  b.max_nodes = max_nodes;
  b.max_dim = std::max<std::size_t>(4, seed.total_dim() * 2);
  Component c = knit_component(seed, b);
  for (int round = 0;; ++round) {
    const bool last = c.complete || c.nodes.size() >= max_nodes || round >= 6;
    try {
      TubeInfo t = tube_info(c);
      if (t.verified_depth >= depth || last) return t;
    } catch (const Error& e) {
      // A seed far from the mouth needs a wider region before the mouth shows up.
      if (last || e.kind() != ErrorKind::NotQuasiSerial || round >= 2) throw;
    }
    b.max_dim *= 2;
    extend_component(c, b);
  }
}

Rep tube_module(const TubeInfo& t, int i, int r, TubeStyle style) {
  if (r < 1) fail(ErrorKind::BadParameter, "quasi-length must be positive");
  const int base = style == TubeStyle::Up ? i : i - r + 1;
  return t.component.nodes[t.node(base, r)].module;
}

Wing wing_members(const TubeInfo& t, int j, int l) {
  if (l < 0) fail(ErrorKind::BadParameter, "negative wing size");
  if (l >= t.rank + t.verified_depth) fail(ErrorKind::BoundExceeded, "wing larger than the verified tube");
  Wing w;
  w.j = t.wrap(j);
  w.l = l;
  for (int d = 0; d < l; ++d)
    for (int h = 1; d + h <= l; ++h) {
      const std::pair<int, int> m{t.wrap(j + d), h};
      if (std::find(w.members.begin(), w.members.end(), m) == w.members.end()) w.members.push_back(m);
    }
  std::sort(w.members.begin(), w.members.end(), [](const auto& a, const auto& b) {
    return std::tie(a.second, a.first) < std::tie(b.second, b.first);
  });
  return w;
}

bool in_wing(const TubeInfo& t, const Wing& w, int i, int r) {
  const std::pair<int, int> m{t.wrap(i), r};
  return std::find(w.members.begin(), w.members.end(), m) != w.members.end();
}

namespace {

bool same_multiset(std::vector<Rep> got, std::vector<Rep> want) {
  if (got.size() != want.size()) return false;
  for (const auto& g : got) {
    auto it = std::find_if(want.begin(), want.end(), [&](const Rep& w) {
      return w.dims() == g.dims() && is_isomorphic_indecomposable(w, g);
    });
    if (it == want.end()) return false;
    want.erase(it);
  }
  return true;
}

}  // namespace

TriangleWitness sectional_triangle_check(const TubeInfo& t, int i, int r, int l, int j) {
  if (l < 1 || l > r || j < 1) fail(ErrorKind::BadParameter, "sectional triangle needs 1 <= l <= r and j >= 1");
  const Rep left = tube_module(t, i, r);
  const Rep right = tube_module(t, i + l, r - l + j);
  std::vector<Rep> want{tube_module(t, i, r + j)};
  if (l < r) want.push_back(tube_module(t, i + l, r - l));

  TriangleWitness w;
  const Ext1 e = ext1(right, left);
  w.ext_dim = e.dim();
  for (const auto& v : projective_points(w.ext_dim, left.prime(), 200000)) {
    ++w.classes_tried;
    const Matrix coords = e.classes.stable_basis * v;
    const Extension x = extension(e, right, left, coords);
    const Rep mid = strip_projective(x.middle);
    std::vector<Rep> parts = mid.is_zero() ? std::vector<Rep>{} : indecomposable_summands(mid);
    if (same_multiset(parts, want)) {
      w.found = true;
      w.class_coords = coords;
      for (const auto& p : parts) w.middle.push_back(fingerprint(p));
      return w;
    }
  }
  fail(ErrorKind::NotFound, "no extension class realizes the sectional triangle");
}

namespace {

// Exported nodes in fingerprint order; with a depth, only grid nodes up to that quasi-length.
struct ExportOrder {
  std::vector<std::size_t> order;
  std::vector<std::optional<std::size_t>> id;
};

ExportOrder export_order(const Component& c, const TubeInfo* tube, int max_depth) {
  ExportOrder e;
  for (std::size_t k = 0; k < c.nodes.size(); ++k) {
    if (tube && max_depth > 0) {
      const auto xy = tube->coords(k);
      if (!xy || xy->second > max_depth) continue;
    }
    e.order.push_back(k);
  }
  std::stable_sort(e.order.begin(), e.order.end(), [&](auto a, auto b) { return c.nodes[a].fp < c.nodes[b].fp; });
  e.id.assign(c.nodes.size(), std::nullopt);
  for (std::size_t k = 0; k < e.order.size(); ++k) e.id[e.order[k]] = k;
  return e;
}

}  // namespace

std::string component_to_dot(const Component& c, const TubeInfo* tube, int max_depth) {
  const auto [order, id] = export_order(c, tube, max_depth);

  std::ostringstream os;
  os << "digraph component {\n  node [shape=box];\n";
  for (auto k : order) {
    const auto& n = c.nodes[k];
    os << "  n" << *id[k] << " [label=\"" << dims_string(n.module);
    if (tube)
      if (auto xy = tube->coords(k)) os << "\\nX" << xy->first << "(" << xy->second << ")";
    os << "\"";
    if (n.projective) os << ", peripheries=2";
    os << "];\n";
  }
  std::vector<std::tuple<std::size_t, std::size_t, int>> arrows;
  for (const auto& a : c.arrows)
    if (id[a.from] && id[a.to]) arrows.emplace_back(*id[a.from], *id[a.to], a.mult);
  std::sort(arrows.begin(), arrows.end());
  for (const auto& [a, b, m] : arrows) {
    os << "  n" << a << " -> n" << b;
    if (m > 1) os << " [label=\"" << m << "\"]";
    os << ";\n";
  }
  std::vector<std::pair<std::size_t, std::size_t>> taus;
  for (std::size_t k = 0; k < c.nodes.size(); ++k)
    if (c.nodes[k].tau && id[k] && id[*c.nodes[k].tau]) taus.emplace_back(*id[k], *id[*c.nodes[k].tau]);
  std::sort(taus.begin(), taus.end());
  for (const auto& [a, b] : taus) os << "  n" << a << " -> n" << b << " [style=dashed];\n";
  os << "}\n";
  return os.str();
}

std::string component_to_json(const Component& c, const TubeInfo* tube, int max_depth) {
  using nlohmann::json;
  const auto [order, id] = export_order(c, tube, max_depth);

  json nodes = json::array();
  for (auto k : order) {
    const auto& n = c.nodes[k];
    json j;
    j["id"] = *id[k];
    j["dims"] = n.module.dims();
    j["fingerprint"] = to_string(n.fp);
    j["projective"] = n.projective;
    j["mesh"] = n.mesh;
    if (n.tau && id[*n.tau]) j["tau"] = *id[*n.tau];
    if (tube)
      if (auto xy = tube->coords(k)) j["coords"] = {xy->first, xy->second};
    nodes.push_back(std::move(j));
  }
  json arrows = json::array();
  std::vector<std::tuple<std::size_t, std::size_t, int>> arr;
  for (const auto& a : c.arrows)
    if (id[a.from] && id[a.to]) arr.emplace_back(*id[a.from], *id[a.to], a.mult);
  std::sort(arr.begin(), arr.end());
  for (const auto& [a, b, m] : arr) arrows.push_back({{"from", a}, {"to", b}, {"mult", m}});
  json out;
  out["algebra"] = c.algebra->name();
  out["field"] = c.algebra->prime();
  out["nodes"] = std::move(nodes);
  out["arrows"] = std::move(arrows);
  out["complete"] = c.complete;
  if (tube) {
    out["rank"] = tube->rank;
    out["verified_depth"] = tube->verified_depth;
    if (max_depth > 0) out["depth"] = max_depth;
  }
  return out.dump(2) + "\n";
}

}  // namespace qlab
