#include "qlab/bqa/algebra.hpp"

#include <algorithm>
#include <set>

#include "qlab/error.hpp"
#include "qlab/ff/matrix.hpp"

namespace qlab {

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  std::set<std::string> seen;
  for (const auto& v : vertices_) {
    if (!seen.insert(v).second) fail(ErrorKind::BadParameter, "duplicate vertex id '" + v + "'");
  }
  std::set<std::string> seen_arrows;
  out_.assign(vertices_.size(), {});
  in_.assign(vertices_.size(), {});
  for (std::size_t a = 0; a < arrows_.size(); ++a) {
    const auto& arr = arrows_[a];
    if (!seen_arrows.insert(arr.id).second)
      fail(ErrorKind::BadParameter, "duplicate arrow id '" + arr.id + "'");
    if (arr.source < 0 || arr.source >= num_vertices() || arr.target < 0 ||
        arr.target >= num_vertices())
      fail(ErrorKind::UnknownVertex, "arrow '" + arr.id + "' has an undeclared endpoint");
    out_[static_cast<std::size_t>(arr.source)].push_back(static_cast<int>(a));
    in_[static_cast<std::size_t>(arr.target)].push_back(static_cast<int>(a));
  }
}

std::optional<int> Quiver::find_vertex(const std::string& name) const {
  const auto it = std::find(vertices_.begin(), vertices_.end(), name);
  if (it == vertices_.end()) return std::nullopt;
  return static_cast<int>(it - vertices_.begin());
}

std::optional<int> Quiver::find_arrow(const std::string& id) const {
  for (std::size_t a = 0; a < arrows_.size(); ++a)
    if (arrows_[a].id == id) return static_cast<int>(a);
  return std::nullopt;
}

int Quiver::vertex_index(const std::string& name) const {
  if (auto v = find_vertex(name)) return *v;
  fail(ErrorKind::UnknownVertex, "unknown vertex '" + name + "'");
}

Quiver Quiver::opposite() const {
  std::vector<Arrow> rev;
  rev.reserve(arrows_.size());
  for (const auto& a : arrows_) rev.push_back({a.id, a.target, a.source});
  return Quiver(vertices_, std::move(rev));
}

bool path_less(const Quiver& q, const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  for (std::size_t k = 0; k < a.length(); ++k) {
    const auto& ia = q.arrow(a.arrows[k]).id;
    const auto& ib = q.arrow(b.arrows[k]).id;
    if (ia != ib) return ia < ib;
  }
  if (a.source != b.source) return a.source < b.source;
  return a.target < b.target;
}

std::string path_to_string(const Quiver& q, const Path& p) {
  if (p.arrows.empty()) return "e_" + q.vertex_name(p.source);
  std::string out;
  for (std::size_t k = 0; k < p.arrows.size(); ++k) {
    if (k) out += '*';
    out += q.arrow(p.arrows[k]).id;
  }
  return out;
}

Path make_path(const Quiver& q, const std::vector<std::string>& arrow_ids) {
  if (arrow_ids.empty()) fail(ErrorKind::NonAdmissible, "empty path");
  Path p;
  for (std::size_t k = 0; k < arrow_ids.size(); ++k) {
    const auto a = q.find_arrow(arrow_ids[k]);
    if (!a) fail(ErrorKind::NonComposable, "unknown arrow '" + arrow_ids[k] + "'");
    const auto& arr = q.arrow(*a);
    if (k == 0) {
      p.source = arr.source;
    } else if (arr.source != p.target) {
      fail(ErrorKind::NonComposable, "arrows '" + arrow_ids[k - 1] + "' and '" + arrow_ids[k] +
                                         "' do not compose (left-to-right)");
    }
    p.target = arr.target;
    p.arrows.push_back(*a);
  }
  return p;
}

Path concat(const Path& a, const Path& b) {
  Path p{a.source, b.target, a.arrows};
  p.arrows.insert(p.arrows.end(), b.arrows.begin(), b.arrows.end());
  return p;
}

Path reversed(const Path& p) {
  Path r{p.target, p.source, p.arrows};
  std::reverse(r.arrows.begin(), r.arrows.end());
  return r;
}

Algebra::Algebra(PrivateTag, AlgebraSpec spec) : spec_(std::move(spec)) {}

std::shared_ptr<Algebra> Algebra::build_mutable(AlgebraSpec spec) {
  auto alg = std::make_shared<Algebra>(PrivateTag{}, std::move(spec));
  alg->build_basis();
  return alg;
}

std::shared_ptr<const Algebra> Algebra::build(AlgebraSpec spec) { return build_mutable(std::move(spec)); }

namespace {

struct Term {
  Path path;
  std::uint32_t coeff;
};

struct Relation {
  std::vector<Term> terms;
  int source;
  int target;
  std::size_t min_len;
};

void check_path_shape(const Quiver& q, const Path& p) {
  if (p.length() < 2)
    fail(ErrorKind::NonAdmissible, "relation '" + path_to_string(q, p) + "' has length < 2");
  int cur = p.source;
  for (int a : p.arrows) {
    if (a < 0 || a >= q.num_arrows()) fail(ErrorKind::NonComposable, "relation uses unknown arrow");
    if (q.arrow(a).source != cur)
      fail(ErrorKind::NonComposable, "relation '" + path_to_string(q, p) + "' is not composable");
    cur = q.arrow(a).target;
  }
  if (cur != p.target) fail(ErrorKind::NonComposable, "relation endpoints are inconsistent");
}

std::vector<Relation> collect_relations(const AlgebraSpec& spec) {
  const auto& q = spec.quiver;
  std::vector<Relation> rels;
  for (const auto& m : spec.relations.monomials) {
    check_path_shape(q, m);
    rels.push_back({{{m, 1}}, m.source, m.target, m.length()});
  }
  for (const auto& b : spec.relations.binomials) {
    check_path_shape(q, b.lead);
    check_path_shape(q, b.other);
    if (b.lead.source != b.other.source || b.lead.target != b.other.target) {
      fail(ErrorKind::NonComposable, "binomial paths '" + path_to_string(q, b.lead) + "' and '" +
                                         path_to_string(q, b.other) + "' are not parallel");
    }
    std::vector<Term> terms{{b.lead, 1}};
    if (b.coeff % spec.field != 0) terms.push_back({b.other, b.coeff % spec.field});
    rels.push_back({terms, b.lead.source, b.lead.target,
                    std::min(b.lead.length(), b.other.length())});
  }
  return rels;
}

constexpr std::size_t kMaxPaths = 400000;

// All paths of length <= bound, grouped by source vertex.
std::vector<std::vector<Path>> enumerate_paths(const Quiver& q, int bound) {
  std::vector<std::vector<Path>> by_source(static_cast<std::size_t>(q.num_vertices()));
  std::size_t total = 0;
  for (int v = 0; v < q.num_vertices(); ++v) {
    auto& out = by_source[static_cast<std::size_t>(v)];
    out.push_back(Path::trivial(v));
    std::size_t frontier_begin = 0;
    for (int len = 1; len <= bound; ++len) {
      const std::size_t frontier_end = out.size();
      for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
        for (int a : q.out_arrows(out[i].target)) {
          Path ext = out[i];
          ext.arrows.push_back(a);
          ext.target = q.arrow(a).target;
          out.push_back(std::move(ext));
        }
      }
      frontier_begin = frontier_end;
      if (out.size() + total > kMaxPaths)
        fail(ErrorKind::BoundExceeded, "more than " + std::to_string(kMaxPaths) +
                                           " paths of length <= " + std::to_string(bound));
    }
    total += out.size();
  }
  return by_source;
}

struct TrialResult {
  bool ok = false;
  std::vector<Path> basis;                 // non-leading paths
  std::map<Path, std::vector<Term>> rewrite;  // leading path -> normal form over basis paths
};

// Works in kQ/(I + J^{bound+1}); succeeds when every path of length `bound` vanishes there.
TrialResult try_bound(const AlgebraSpec& spec, const std::vector<Relation>& rels, int bound) {
  const auto& q = spec.quiver;
  const ff::Field f(spec.field);
  const auto paths = enumerate_paths(q, bound);

  std::vector<std::vector<const Path*>> by_target(static_cast<std::size_t>(q.num_vertices()));
  std::map<std::pair<int, int>, std::vector<const Path*>> groups;
  for (const auto& list : paths) {
    for (const auto& p : list) {
      by_target[static_cast<std::size_t>(p.target)].push_back(&p);
      groups[{p.source, p.target}].push_back(&p);
    }
  }
  // Columns ordered largest path first so that pivots are the leading terms.
  std::map<std::pair<int, int>, std::map<Path, std::size_t>> column_of;
  for (auto& [key, cols] : groups) {
    std::sort(cols.begin(), cols.end(),
              [&](const Path* a, const Path* b) { return path_less(q, *b, *a); });
    auto& idx = column_of[key];
    for (std::size_t c = 0; c < cols.size(); ++c) idx[*cols[c]] = c;
  }

  std::map<std::pair<int, int>, std::vector<std::vector<std::uint32_t>>> rows;
  for (const auto& r : rels) {
    for (const Path* left : by_target[static_cast<std::size_t>(r.source)]) {
      if (left->length() + r.min_len > static_cast<std::size_t>(bound)) continue;
      for (const auto& right : paths[static_cast<std::size_t>(r.target)]) {
        if (left->length() + right.length() + r.min_len > static_cast<std::size_t>(bound)) continue;
        const std::pair<int, int> key{left->source, right.target};
        const auto& idx = column_of[key];
        std::vector<std::uint32_t> row(idx.size(), 0);
        bool any = false;
        for (const auto& t : r.terms) {
          const Path full = concat(concat(*left, t.path), right);
          if (full.length() > static_cast<std::size_t>(bound)) continue;
          auto& slot = row[idx.at(full)];
          slot = f.add(slot, t.coeff);
          any = true;
        }
        if (any) rows[key].push_back(std::move(row));
      }
    }
  }

  TrialResult out;
  for (const auto& [key, cols] : groups) {
    std::vector<bool> is_pivot(cols.size(), false);
    ff::Echelon ech;
    const auto rit = rows.find(key);
    if (rit != rows.end() && !rit->second.empty()) {
      ff::Matrix m(rit->second.size(), cols.size(), spec.field);
      for (std::size_t i = 0; i < rit->second.size(); ++i)
        std::copy(rit->second[i].begin(), rit->second[i].end(), m.row(i).begin());
      ech = ff::rref(std::move(m));
      for (auto c : ech.pivots) is_pivot[c] = true;
    }
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (!is_pivot[c]) {
        if (cols[c]->length() >= static_cast<std::size_t>(bound)) return out;  // survives: fail
        out.basis.push_back(*cols[c]);
      }
    }
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
      const std::size_t pc = ech.pivots[i];
      std::vector<Term> nf;
      for (std::size_t c = pc + 1; c < cols.size(); ++c) {
        if (const auto v = ech.reduced(i, c); v != 0 && !is_pivot[c]) nf.push_back({*cols[c], f.neg(v)});
      }
      if (cols[pc]->length() >= static_cast<std::size_t>(bound) && !nf.empty()) return out;
      out.rewrite.emplace(*cols[pc], std::move(nf));
    }
  }
  out.ok = true;
  return out;
}

SparseVec normalize(std::map<int, std::uint32_t>& acc) {
  SparseVec v;
  for (const auto& [k, c] : acc)
    if (c) v.emplace_back(k, c);
  return v;
}

}  // namespace

void Algebra::build_basis() {
  const auto& q = quiver();
  if (spec_.field >= (1u << 31) || !ff::is_prime(spec_.field))
    fail(ErrorKind::BadParameter, "field characteristic " + std::to_string(spec_.field) + " is not prime");
  const ff::Field f(spec_.field);
  const auto rels = collect_relations(spec_);

  constexpr int kMaxBound = 64;
  TrialResult trial;
  int bound = 0;
  if (spec_.nilpotency) {
    bound = *spec_.nilpotency;
    if (bound < 1) fail(ErrorKind::BadParameter, "nilpotency bound must be positive");
    trial = try_bound(spec_, rels, bound);
    if (!trial.ok)
      fail(ErrorKind::BoundExceeded, "some path of length " + std::to_string(bound) +
                                         " does not reduce to 0");
  } else {
    for (bound = 1; bound <= kMaxBound; ++bound) {
      trial = try_bound(spec_, rels, bound);
      if (trial.ok) break;
    }
    if (!trial.ok)
      fail(ErrorKind::BoundExceeded, "no nilpotency bound <= " + std::to_string(kMaxBound) +
                                         " (relations not admissible?)");
  }
  nilpotency_ = bound;

  auto order = [&](const Path& a, const Path& b) {
    if (a.source != b.source) return a.source < b.source;
    return path_less(q, a, b);
  };
  basis_ = std::move(trial.basis);
  std::sort(basis_.begin(), basis_.end(), order);
  from_.assign(static_cast<std::size_t>(q.num_vertices()), {});
  pos_in_source_.assign(basis_.size(), 0);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    index_[basis_[i]] = static_cast<int>(i);
    auto& list = from_[static_cast<std::size_t>(basis_[i].source)];
    pos_in_source_[i] = static_cast<int>(list.size());
    list.push_back(static_cast<int>(i));
  }

  times_arrow_.assign(basis_.size(), std::vector<SparseVec>(static_cast<std::size_t>(q.num_arrows())));
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    for (int a : q.out_arrows(basis_[i].target)) {
      Path ext = basis_[i];
      ext.arrows.push_back(a);
      ext.target = q.arrow(a).target;
      auto& slot = times_arrow_[i][static_cast<std::size_t>(a)];
      if (ext.length() >= static_cast<std::size_t>(bound)) continue;
      if (auto it = index_.find(ext); it != index_.end()) {
        slot = {{it->second, 1}};
        continue;
      }
      std::map<int, std::uint32_t> acc;
      for (const auto& t : trial.rewrite.at(ext)) {
        auto& c = acc[index_.at(t.path)];
        c = f.add(c, t.coeff);
      }
      slot = normalize(acc);
    }
  }

  loewy_ = bound;
  for (int len = 1; len < bound; ++len) {
    bool all_zero = true;
    for (const auto& [p, nf] : trial.rewrite)
      if (p.length() == static_cast<std::size_t>(len) && !nf.empty()) all_zero = false;
    for (const auto& p : basis_)
      if (p.length() == static_cast<std::size_t>(len)) all_zero = false;
    if (all_zero) {
      loewy_ = len;
      break;
    }
  }
}

std::optional<int> Algebra::basis_index(const Path& p) const {
  if (auto it = index_.find(p); it != index_.end()) return it->second;
  return std::nullopt;
}

std::vector<int> Algebra::basis_between(int v, int w) const {
  std::vector<int> out;
  for (int i : basis_from(v))
    if (basis_[static_cast<std::size_t>(i)].target == w) out.push_back(i);
  return out;
}

const SparseVec& Algebra::times_arrow(int basis_idx, int arrow) const {
  return times_arrow_.at(static_cast<std::size_t>(basis_idx)).at(static_cast<std::size_t>(arrow));
}

namespace {

SparseVec combo_times_arrow(const Algebra& alg, const SparseVec& x, int arrow) {
  const ff::Field f(alg.prime());
  std::map<int, std::uint32_t> acc;
  for (const auto& [i, c] : x) {
    for (const auto& [j, d] : alg.times_arrow(i, arrow)) {
      auto& slot = acc[j];
      slot = f.add(slot, f.mul(c, d));
    }
  }
  return normalize(acc);
}

}  // namespace

SparseVec Algebra::normal_form(const Path& p) const {
  SparseVec x{{index_.at(Path::trivial(p.source)), 1}};
  for (int a : p.arrows) {
    x = combo_times_arrow(*this, x, a);
    if (x.empty()) break;
  }
  return x;
}

SparseVec Algebra::multiply(int i, int j) const {
  const auto& bi = basis(i);
  const auto& bj = basis(j);
  if (bi.target != bj.source) return {};
  SparseVec x{{i, 1}};
  for (int a : bj.arrows) {
    x = combo_times_arrow(*this, x, a);
    if (x.empty()) break;
  }
  return x;
}

SparseVec Algebra::multiply(const SparseVec& x, const SparseVec& y) const {
  const ff::Field f(prime());
  std::map<int, std::uint32_t> acc;
  for (const auto& [i, c] : x) {
    for (const auto& [j, d] : y) {
      for (const auto& [k, e] : multiply(i, j)) {
        auto& slot = acc[k];
        slot = f.add(slot, f.mul(f.mul(c, d), e));
      }
    }
  }
  return normalize(acc);
}

std::shared_ptr<const Algebra> Algebra::opposite() const {
  std::lock_guard lock(op_mutex_);
  if (auto p = op_weak_.lock()) return p;
  if (!op_strong_) {
    AlgebraSpec op;
    op.name = spec_.name + "_op";
    op.field = spec_.field;
    op.composition = Composition::LeftToRight;
    op.quiver = spec_.quiver.opposite();
    op.nilpotency = nilpotency_;
    for (const auto& m : spec_.relations.monomials) op.relations.monomials.push_back(reversed(m));
    const ff::Field f(spec_.field);
    for (const auto& b : spec_.relations.binomials) {
      Path lead = reversed(b.lead), other = reversed(b.other);
      std::uint32_t c = b.coeff;
      if (path_less(op.quiver, lead, other)) {
        std::swap(lead, other);
        c = f.inv(c);  // other + c*lead = 0  <=>  lead + c^{-1} other = 0
      }
      op.relations.binomials.push_back({lead, other, c});
    }
    auto built = build_mutable(std::move(op));
    built->op_weak_ = weak_from_this();
    op_strong_ = std::move(built);
  }
  return op_strong_;
}

}  // namespace qlab
