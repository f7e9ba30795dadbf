#include "qlab/rep/rep.hpp"

#include <mutex>
#include <sstream>

#include "qlab/error.hpp"

namespace qlab {

struct Rep::Cache {
  std::once_flag actions_once;
  std::vector<Matrix> actions;
  std::once_flag pres_once;
  Presentation pres;
};

Rep::Rep(AlgebraPtr alg, std::vector<std::size_t> dims, std::vector<Matrix> mats)
    : alg_(std::move(alg)), dims_(std::move(dims)), mats_(std::move(mats)), cache_(std::make_shared<Cache>()) {
  const auto& q = alg_->quiver();
  if (dims_.size() != static_cast<std::size_t>(q.num_vertices()))
    fail(ErrorKind::Internal, "representation has wrong number of vertex spaces");
  if (mats_.size() != static_cast<std::size_t>(q.num_arrows()))
    fail(ErrorKind::Internal, "representation has wrong number of arrow matrices");
  for (int a = 0; a < q.num_arrows(); ++a) {
    const auto& m = mats_[static_cast<std::size_t>(a)];
    const auto& arr = q.arrow(a);
    if (m.rows() != dim(arr.target) || m.cols() != dim(arr.source) || m.prime() != alg_->prime())
      fail(ErrorKind::Internal, "matrix of arrow '" + arr.id + "' has the wrong shape");
  }
  offsets_.resize(dims_.size());
  for (std::size_t v = 0; v < dims_.size(); ++v) {
    offsets_[v] = total_;
    total_ += dims_[v];
  }
}

Rep Rep::zero(AlgebraPtr alg) {
  const auto& q = alg->quiver();
  std::vector<Matrix> mats;
  for (int a = 0; a < q.num_arrows(); ++a) mats.emplace_back(0, 0, alg->prime());
  return Rep(alg, std::vector<std::size_t>(static_cast<std::size_t>(q.num_vertices()), 0), std::move(mats));
}

Rep::Cache& Rep::cache() const {
  if (!cache_) fail(ErrorKind::Internal, "use of a default-constructed module");
  return *cache_;
}

Matrix Rep::path_action(const Path& p) const {
  Matrix m = Matrix::identity(dim(p.source), prime());
  for (int a : p.arrows) m = mat(a) * m;
  return m;
}

const Matrix& Rep::basis_action(int i) const {
  auto& c = cache();
  std::call_once(c.actions_once, [&] {
    c.actions.reserve(static_cast<std::size_t>(alg_->dim()));
    for (const auto& p : alg_->basis()) c.actions.push_back(path_action(p));
  });
  return c.actions.at(static_cast<std::size_t>(i));
}

Matrix Rep::element_action(const SparseVec& x, int source, int target) const {
  Matrix out(dim(target), dim(source), prime());
  const ff::Field f(prime());
  for (const auto& [i, c] : x) {
    const auto& b = alg_->basis(i);
    if (b.source != source || b.target != target) continue;
    out = out + ff::scaled(basis_action(i), c);
  }
  (void)f;
  return out;
}

bool Rep::satisfies_relations() const {
  const auto& rels = alg_->spec().relations;
  for (const auto& m : rels.monomials)
    if (!path_action(m).is_zero()) return false;
  for (const auto& b : rels.binomials) {
    if (!(path_action(b.lead) + ff::scaled(path_action(b.other), b.coeff)).is_zero()) return false;
  }
  return true;
}

const Presentation& Rep::presentation() const {
  auto& c = cache();
  std::call_once(c.pres_once, [&] {
    const auto& alg = *alg_;
    const int nv = alg.num_vertices();
    auto& pres = c.pres;
    const auto rad = radical_span(*this);
    for (int v = 0; v < nv; ++v) {
      const auto basis = ff::column_space(rad[static_cast<std::size_t>(v)]);
      for (auto k : ff::complement_indices(basis, dim(v))) {
        std::vector<std::uint32_t> g(dim(v), 0);
        g[k] = 1;
        pres.gen_vertex.push_back(v);
        pres.gen_vector.push_back(std::move(g));
      }
    }
    pres.cols.resize(static_cast<std::size_t>(nv));
    for (int w = 0; w < nv; ++w) {
      auto& cols = pres.cols[static_cast<std::size_t>(w)];
      for (std::size_t k = 0; k < pres.gen_vertex.size(); ++k)
        for (int i : alg.basis_between(pres.gen_vertex[k], w)) cols.emplace_back(static_cast<int>(k), i);
      Matrix pi(dim(w), cols.size(), prime());
      for (std::size_t col = 0; col < cols.size(); ++col) {
        const auto [k, i] = cols[col];
        const auto& act = basis_action(i);
        const auto& g = pres.gen_vector[static_cast<std::size_t>(k)];
        for (std::size_t r = 0; r < dim(w); ++r) {
          std::uint64_t s = 0;
          for (std::size_t j = 0; j < g.size(); ++j)
            if (g[j]) s += static_cast<std::uint64_t>(act(r, j)) * g[j] % prime();
          pi(r, col) = static_cast<std::uint32_t>(s % prime());
        }
      }
      const auto indep = ff::independent_columns(pi);
      if (indep.size() != dim(w)) fail(ErrorKind::Internal, "generators do not span the module");
      const auto inv = ff::inverse(pi.select_columns(indep));
      Matrix rinv(cols.size(), dim(w), prime());
      for (std::size_t j = 0; j < indep.size(); ++j)
        for (std::size_t r = 0; r < dim(w); ++r) rinv(indep[j], r) = (*inv)(j, r);
      pres.kernel.push_back(ff::nullspace(pi));
      pres.pi.push_back(std::move(pi));
      pres.right_inverse.push_back(std::move(rinv));
    }
  });
  return c.pres;
}

void require_same_algebra(const Rep& m, const Rep& n) {
  if (!m.algebra_ptr() || !n.algebra_ptr() || !m.algebra().same_as(n.algebra()))
    fail(ErrorKind::AlgebraMismatch, "modules over different algebras");
}

Morphism identity_map(const Rep& m) {
  Morphism f;
  for (auto d : m.dims()) f.comps.push_back(Matrix::identity(d, m.prime()));
  return f;
}

Morphism zero_map(const Rep& m, const Rep& n) {
  Morphism f;
  for (std::size_t v = 0; v < m.dims().size(); ++v) f.comps.emplace_back(n.dims()[v], m.dims()[v], m.prime());
  return f;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  Morphism h;
  for (std::size_t v = 0; v < f.comps.size(); ++v) h.comps.push_back(g.comps[v] * f.comps[v]);
  return h;
}

Morphism add(const Morphism& f, const Morphism& g) {
  Morphism h;
  for (std::size_t v = 0; v < f.comps.size(); ++v) h.comps.push_back(f.comps[v] + g.comps[v]);
  return h;
}

Morphism scaled(const Morphism& f, std::uint32_t c) {
  Morphism h;
  for (const auto& m : f.comps) h.comps.push_back(ff::scaled(m, c));
  return h;
}

bool is_zero(const Morphism& f) {
  for (const auto& m : f.comps)
    if (!m.is_zero()) return false;
  return true;
}

bool is_homomorphism(const Rep& m, const Rep& n, const Morphism& f) {
  const auto& q = m.algebra().quiver();
  if (f.comps.size() != m.dims().size()) return false;
  for (std::size_t v = 0; v < f.comps.size(); ++v)
    if (f.comps[v].rows() != n.dims()[v] || f.comps[v].cols() != m.dims()[v]) return false;
  for (int a = 0; a < q.num_arrows(); ++a) {
    const auto& arr = q.arrow(a);
    const auto s = static_cast<std::size_t>(arr.source), t = static_cast<std::size_t>(arr.target);
    if (!(f.comps[t] * m.mat(a) == n.mat(a) * f.comps[s])) return false;
  }
  return true;
}

bool is_injective(const Morphism& f) {
  for (const auto& m : f.comps)
    if (ff::rank(m) != m.cols()) return false;
  return true;
}

bool is_surjective(const Morphism& f) {
  for (const auto& m : f.comps)
    if (ff::rank(m) != m.rows()) return false;
  return true;
}

bool is_isomorphism(const Morphism& f) {
  for (const auto& m : f.comps)
    if (!ff::is_invertible(m)) return false;
  return true;
}

Matrix total_matrix(const Rep& m, const Rep& n, const Morphism& f) {
  Matrix t(n.total_dim(), m.total_dim(), m.prime());
  for (std::size_t v = 0; v < f.comps.size(); ++v)
    t.set_block(n.offset(static_cast<int>(v)), m.offset(static_cast<int>(v)), f.comps[v]);
  return t;
}

Morphism from_total_matrix(const Rep& m, const Rep& n, const Matrix& t) {
  Morphism f;
  for (std::size_t v = 0; v < m.dims().size(); ++v) {
    const int vi = static_cast<int>(v);
    f.comps.push_back(t.submatrix(n.offset(vi), m.offset(vi), n.dim(vi), m.dim(vi)));
  }
  return f;
}

Rep simple_module(const AlgebraPtr& alg, int v) {
  if (v < 0 || v >= alg->num_vertices()) fail(ErrorKind::UnknownVertex, "vertex index out of range");
  std::vector<std::size_t> dims(static_cast<std::size_t>(alg->num_vertices()), 0);
  dims[static_cast<std::size_t>(v)] = 1;
  std::vector<Matrix> mats;
  for (const auto& a : alg->quiver().arrows())
    mats.emplace_back(dims[static_cast<std::size_t>(a.target)], dims[static_cast<std::size_t>(a.source)], alg->prime());
  return Rep(alg, std::move(dims), std::move(mats));
}

Rep projective_module(const AlgebraPtr& alg, int v) {
  if (v < 0 || v >= alg->num_vertices()) fail(ErrorKind::UnknownVertex, "vertex index out of range");
  const auto nv = static_cast<std::size_t>(alg->num_vertices());
  std::vector<std::size_t> dims(nv, 0);
  std::map<int, std::size_t> pos;
  for (int i : alg->basis_from(v)) pos[i] = dims[static_cast<std::size_t>(alg->basis(i).target)]++;
  std::vector<Matrix> mats;
  const auto& q = alg->quiver();
  for (int a = 0; a < q.num_arrows(); ++a) {
    const auto& arr = q.arrow(a);
    Matrix m(dims[static_cast<std::size_t>(arr.target)], dims[static_cast<std::size_t>(arr.source)], alg->prime());
    for (int i : alg->basis_from(v)) {
      if (alg->basis(i).target != arr.source) continue;
      for (const auto& [j, c] : alg->times_arrow(i, a)) m(pos.at(j), pos.at(i)) = c;
    }
    mats.push_back(std::move(m));
  }
  return Rep(alg, std::move(dims), std::move(mats));
}

Rep regular_module(const AlgebraPtr& alg) {
  std::vector<Rep> parts;
  for (int v = 0; v < alg->num_vertices(); ++v) parts.push_back(projective_module(alg, v));
  return direct_sum(parts);
}

SumData direct_sum_data(const std::vector<Rep>& parts) {
  if (parts.empty()) fail(ErrorKind::Internal, "direct sum of no modules");
  const auto& alg = parts.front().algebra_ptr();
  for (const auto& p : parts) require_same_algebra(parts.front(), p);
  const auto& q = alg->quiver();
  const auto nv = static_cast<std::size_t>(q.num_vertices());
  std::vector<std::size_t> dims(nv, 0);
  for (const auto& p : parts)
    for (std::size_t v = 0; v < nv; ++v) dims[v] += p.dims()[v];
  std::vector<Matrix> mats;
  for (int a = 0; a < q.num_arrows(); ++a) {
    const auto& arr = q.arrow(a);
    Matrix m(dims[static_cast<std::size_t>(arr.target)], dims[static_cast<std::size_t>(arr.source)], alg->prime());
    std::size_t r = 0, c = 0;
    for (const auto& p : parts) {
      m.set_block(r, c, p.mat(a));
      r += p.dim(arr.target);
      c += p.dim(arr.source);
    }
    mats.push_back(std::move(m));
  }
  SumData out{Rep(alg, dims, std::move(mats)), {}, {}};
  std::vector<std::size_t> off(nv, 0);
  for (const auto& p : parts) {
    Morphism inc, proj;
    for (std::size_t v = 0; v < nv; ++v) {
      Matrix i(dims[v], p.dims()[v], alg->prime());
      for (std::size_t k = 0; k < p.dims()[v]; ++k) i(off[v] + k, k) = 1;
      proj.comps.push_back(i.transpose());
      inc.comps.push_back(std::move(i));
      off[v] += p.dims()[v];
    }
    out.inclusions.push_back(std::move(inc));
    out.projections.push_back(std::move(proj));
  }
  return out;
}

Rep direct_sum(const std::vector<Rep>& parts) { return direct_sum_data(parts).sum; }
Rep direct_sum(const Rep& a, const Rep& b) { return direct_sum_data({a, b}).sum; }

SubData submodule(const Rep& m, const std::vector<Matrix>& span) {
  const auto& q = m.algebra().quiver();
  std::vector<Matrix> basis;
  std::vector<Matrix> linv;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < span.size(); ++v) {
    basis.push_back(ff::column_space(span[v].cols() ? span[v] : Matrix(m.dims()[v], 0, m.prime())));
    if (basis.back().rows() != m.dims()[v]) basis.back() = Matrix(m.dims()[v], 0, m.prime());
    linv.push_back(ff::left_inverse(basis.back()));
    dims.push_back(basis.back().cols());
  }
  std::vector<Matrix> mats;
  for (int a = 0; a < q.num_arrows(); ++a) {
    const auto& arr = q.arrow(a);
    const auto s = static_cast<std::size_t>(arr.source), t = static_cast<std::size_t>(arr.target);
    const Matrix image = m.mat(a) * basis[s];
    Matrix x = linv[t] * image;
    if (!(basis[t] * x == image)) fail(ErrorKind::Internal, "subspace is not a submodule");
    mats.push_back(std::move(x));
  }
  return {Rep(m.algebra_ptr(), std::move(dims), std::move(mats)), Morphism{std::move(basis)}};
}

Matrix complement_projection(const Matrix& u, std::size_t d) {
  const Matrix basis = u.cols() && u.rows() == d ? ff::column_space(u) : Matrix(d, 0, u.prime());
  const auto comp = ff::complement_indices(basis, d);
  Matrix full(d, d, u.prime());
  full.set_block(0, 0, basis);
  for (std::size_t k = 0; k < comp.size(); ++k) full(comp[k], basis.cols() + k) = 1;
  const auto inv = ff::inverse(full);
  if (!inv) fail(ErrorKind::Internal, "complement construction failed");
  return inv->submatrix(basis.cols(), 0, comp.size(), d);
}

SubData quotient(const Rep& m, const std::vector<Matrix>& span) {
  const auto& q = m.algebra().quiver();
  std::vector<Matrix> proj;
  std::vector<Matrix> lift;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < span.size(); ++v) {
    const auto d = m.dims()[v];
    const Matrix basis = span[v].cols() && span[v].rows() == d ? ff::column_space(span[v]) : Matrix(d, 0, m.prime());
    const auto comp = ff::complement_indices(basis, d);
    Matrix full(d, d, m.prime());
    full.set_block(0, 0, basis);
    Matrix l(d, comp.size(), m.prime());
    for (std::size_t k = 0; k < comp.size(); ++k) {
      full(comp[k], basis.cols() + k) = 1;
      l(comp[k], k) = 1;
    }
    proj.push_back(ff::inverse(full)->submatrix(basis.cols(), 0, comp.size(), d));
    lift.push_back(std::move(l));
    dims.push_back(comp.size());
  }
  std::vector<Matrix> mats;
  for (int a = 0; a < q.num_arrows(); ++a) {
    const auto& arr = q.arrow(a);
    mats.push_back(proj[static_cast<std::size_t>(arr.target)] * m.mat(a) * lift[static_cast<std::size_t>(arr.source)]);
  }
  Rep quot(m.algebra_ptr(), std::move(dims), std::move(mats));
  Morphism p{std::move(proj)};
  if (!is_homomorphism(m, quot, p)) fail(ErrorKind::Internal, "subspace is not a submodule");
  return {std::move(quot), std::move(p)};
}

SubData kernel(const Rep& m, const Rep&, const Morphism& f) {
  std::vector<Matrix> span;
  for (const auto& c : f.comps) span.push_back(ff::nullspace(c));
  return submodule(m, span);
}

SubData cokernel(const Rep&, const Rep& n, const Morphism& f) { return quotient(n, f.comps); }

SubData image(const Rep&, const Rep& n, const Morphism& f) { return submodule(n, f.comps); }

std::vector<Matrix> generated_submodule(const Rep& m, const std::vector<Matrix>& gens) {
  const auto& q = m.algebra().quiver();
  std::vector<Matrix> span;
  for (std::size_t v = 0; v < gens.size(); ++v)
    span.push_back(gens[v].cols() ? ff::column_space(gens[v]) : Matrix(m.dims()[v], 0, m.prime()));
  bool grew = true;
  while (grew) {
    grew = false;
    for (int a = 0; a < q.num_arrows(); ++a) {
      const auto& arr = q.arrow(a);
      auto& tgt = span[static_cast<std::size_t>(arr.target)];
      const Matrix img = m.mat(a) * span[static_cast<std::size_t>(arr.source)];
      if (img.cols() == 0) continue;
      const Matrix both = ff::column_space(ff::hstack(tgt, img));
      if (both.cols() > tgt.cols()) {
        tgt = both;
        grew = true;
      }
    }
  }
  return span;
}

std::vector<Matrix> radical_span(const Rep& m) {
  const auto& q = m.algebra().quiver();
  std::vector<Matrix> span;
  for (int v = 0; v < q.num_vertices(); ++v) {
    Matrix s(m.dim(v), 0, m.prime());
    for (int a : q.in_arrows(v)) s = ff::hstack(s, m.mat(a));
    span.push_back(s.cols() ? ff::column_space(s) : s);
  }
  return span;
}

std::vector<Matrix> socle_span(const Rep& m) {
  const auto& q = m.algebra().quiver();
  std::vector<Matrix> span;
  for (int v = 0; v < q.num_vertices(); ++v) {
    Matrix s(0, m.dim(v), m.prime());
    for (int a : q.out_arrows(v)) s = ff::vstack(s, m.mat(a));
    span.push_back(ff::nullspace(s));
  }
  return span;
}

Layers layers(const Rep& m) {
  const auto rad = radical_span(m);
  return {quotient(m, rad).module, submodule(m, rad).module, submodule(m, socle_span(m)).module};
}

Fingerprint fingerprint(const Rep& m) {
  const auto& q = m.algebra().quiver();
  const auto nv = static_cast<std::size_t>(q.num_vertices());
  Fingerprint fp;
  fp.dims = m.dims();
  // radical series
  std::vector<Matrix> cur;
  for (std::size_t v = 0; v < nv; ++v) cur.push_back(Matrix::identity(m.dims()[v], m.prime()));
  while (true) {
    std::vector<Matrix> next;
    for (int v = 0; v < q.num_vertices(); ++v) {
      Matrix s(m.dim(v), 0, m.prime());
      for (int a : q.in_arrows(v)) s = ff::hstack(s, m.mat(a) * cur[static_cast<std::size_t>(q.arrow(a).source)]);
      next.push_back(s.cols() ? ff::column_space(s) : s);
    }
    std::vector<std::size_t> layer(nv);
    bool any = false;
    for (std::size_t v = 0; v < nv; ++v) {
      layer[v] = cur[v].cols() - next[v].cols();
      any = any || cur[v].cols() > 0;
    }
    if (!any) break;
    fp.radical_layers.push_back(layer);
    cur = std::move(next);
  }
  // socle series
  std::vector<Matrix> soc;
  for (std::size_t v = 0; v < nv; ++v) soc.push_back(Matrix(m.dims()[v], 0, m.prime()));
  std::size_t covered = 0;
  while (covered < m.total_dim()) {
    std::vector<Matrix> proj;
    for (std::size_t v = 0; v < nv; ++v) proj.push_back(complement_projection(soc[v], m.dims()[v]));
    std::vector<Matrix> next;
    for (int v = 0; v < q.num_vertices(); ++v) {
      Matrix s(0, m.dim(v), m.prime());
      for (int a : q.out_arrows(v)) s = ff::vstack(s, proj[static_cast<std::size_t>(q.arrow(a).target)] * m.mat(a));
      next.push_back(ff::nullspace(s));
    }
    std::vector<std::size_t> layer(nv);
    covered = 0;
    for (std::size_t v = 0; v < nv; ++v) {
      layer[v] = next[v].cols() - soc[v].cols();
      covered += next[v].cols();
    }
    fp.socle_layers.push_back(layer);
    soc = std::move(next);
  }
  return fp;
}

namespace {
std::string vec_string(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + ")";
}
}  // namespace

std::string to_string(const Fingerprint& f) {
  std::string s = vec_string(f.dims) + " rad[";
  for (std::size_t k = 0; k < f.radical_layers.size(); ++k) s += (k ? " " : "") + vec_string(f.radical_layers[k]);
  s += "] soc[";
  for (std::size_t k = 0; k < f.socle_layers.size(); ++k) s += (k ? " " : "") + vec_string(f.socle_layers[k]);
  return s + "]";
}

std::string dims_string(const Rep& m) { return vec_string(m.dims()); }

}  // namespace qlab
