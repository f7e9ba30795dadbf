#include "qlab/stable/stable.hpp"

#include "qlab/bqa/selfinj.hpp"
#include "qlab/error.hpp"

namespace qlab {

namespace {

// Position of basis element i among the basis paths with its source and target.
std::size_t group_position(const Algebra& alg, int i) {
  const auto& b = alg.basis(i);
  const auto between = alg.basis_between(b.source, b.target);
  return static_cast<std::size_t>(std::find(between.begin(), between.end(), i) - between.begin());
}

// Map (+)_k P(vertices[k]) -> target sending the top of summand k to images[k].
Morphism map_from_free(const AlgebraPtr& alg, const std::vector<int>& vertices, const Rep& target,
                       const std::vector<Matrix>& images) {
  Morphism f;
  for (int w = 0; w < alg->num_vertices(); ++w) {
    std::size_t cols = 0;
    for (int v : vertices) cols += alg->basis_between(v, w).size();
    Matrix m(target.dim(w), cols, alg->prime());
    std::size_t c = 0;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
      for (int i : alg->basis_between(vertices[k], w)) {
        m.set_block(0, c, target.basis_action(i) * images[k]);
        ++c;
      }
    }
    f.comps.push_back(std::move(m));
  }
  return f;
}

Rep free_module(const AlgebraPtr& alg, const std::vector<int>& vertices) {
  if (vertices.empty()) return Rep::zero(alg);
  std::vector<Rep> parts;
  for (int v : vertices) parts.push_back(projective_module(alg, v));
  return direct_sum(parts);
}

// rho_b: P(w) -> P(u), e_w -> b, for a basis path b: u -> w.
Morphism left_multiplication(const AlgebraPtr& alg, int b, const Rep& pw, const Rep& pu) {
  const auto& path = alg->basis(b);
  Morphism f = zero_map(pw, pu);
  for (int p : alg->basis_from(path.target)) {
    const auto t = static_cast<std::size_t>(alg->basis(p).target);
    const auto col = group_position(*alg, p);
    for (const auto& [j, c] : alg->multiply(b, p)) f.comps[t](group_position(*alg, j), col) = c;
  }
  return f;
}

Matrix coords_in_basis(const Matrix& basis_coords, const Matrix& coords) {
  return ff::left_inverse(basis_coords) * coords;
}

int arrow_basis_index(const Algebra& alg, int a) {
  Path p{alg.quiver().arrow(a).source, alg.quiver().arrow(a).target, {a}};
  const auto idx = alg.basis_index(p);
  if (!idx) fail(ErrorKind::Internal, "arrow is not a basis element");
  return *idx;
}

// Projection T: generator coordinates of maps M -> P_N to those of maps M -> N (block diag of pi).
Matrix push_coordinates(const Rep& m, const CoverData& c) {
  const auto& pres = m.presentation();
  std::size_t rows = 0, cols = 0;
  for (int v : pres.gen_vertex) {
    rows += c.module.dim(v);
    cols += c.cover.dim(v);
  }
  Matrix t(rows, cols, m.prime());
  std::size_t r = 0, col = 0;
  for (int v : pres.gen_vertex) {
    t.set_block(r, col, c.map.comps[static_cast<std::size_t>(v)]);
    r += c.module.dim(v);
    col += c.cover.dim(v);
  }
  return t;
}

}  // namespace

CoverData cover(const Rep& m, CoverSide side) {
  if (side == CoverSide::Injective) {
    require_self_injective(m.algebra());
    const Rep d = dual(m);
    const CoverData c = cover(d, CoverSide::Projective);
    CoverData out;
    out.module = m;
    out.cover = dual(c.cover);
    for (const auto& x : c.map.comps) out.map.comps.push_back(x.transpose());
    out.kernel_or_cokernel = dual(c.kernel_or_cokernel);
    for (const auto& x : c.side_map.comps) out.side_map.comps.push_back(x.transpose());
    out.summand_vertices = c.summand_vertices;
    return out;
  }
  const auto& pres = m.presentation();
  CoverData out;
  out.module = m;
  out.summand_vertices = pres.gen_vertex;
  out.cover = free_module(m.algebra_ptr(), pres.gen_vertex);
  out.map.comps = pres.pi;
  auto k = kernel(out.cover, m, out.map);
  out.kernel_or_cokernel = std::move(k.module);
  out.side_map = std::move(k.map);
  return out;
}

Morphism map_from_cover(const Rep& m, const Rep& target, const std::vector<Matrix>& images) {
  return map_from_free(m.algebra_ptr(), m.presentation().gen_vertex, target, images);
}

Rep dual(const Rep& m) {
  auto op = m.algebra().opposite();
  std::vector<Matrix> mats;
  for (const auto& x : m.mats()) mats.push_back(x.transpose());
  return Rep(op, m.dims(), std::move(mats));
}

void require_self_injective(const Algebra& alg) {
  if (!alg.selfinjectivity().is_self_injective)
    fail(ErrorKind::NotSelfInjective, "algebra '" + alg.name() + "' is not self-injective");
}

bool is_projective(const Rep& m) {
  if (m.is_zero()) return true;
  const auto& pres = m.presentation();
  std::size_t d = 0;
  for (int v : pres.gen_vertex) d += m.algebra().basis_from(v).size();
  return d == m.total_dim();
}

Rep strip_projective(const Rep& m) {
  const auto& alg = m.algebra();
  require_self_injective(alg);
  const auto& rep = alg.selfinjectivity();
  std::vector<int> vertices;
  std::vector<Matrix> images;
  for (int v = 0; v < alg.num_vertices(); ++v) {
    if (m.dim(v) == 0) continue;
    const int sv = rep.nakayama_perm[static_cast<std::size_t>(v)];
    const Matrix act = m.element_action(rep.socle_elements[static_cast<std::size_t>(v)], v, sv);
    for (auto j : ff::independent_columns(act)) {
      Matrix e(m.dim(v), 1, m.prime());
      e(j, 0) = 1;
      vertices.push_back(v);
      images.push_back(std::move(e));
    }
  }
  if (vertices.empty()) return m;
  const Morphism f = map_from_free(m.algebra_ptr(), vertices, m, images);
  return quotient(m, f.comps).module;
}

Rep syzygy(const Rep& m, int k) {
  require_self_injective(m.algebra());
  if (k == 0) return strip_projective(m);
  Rep cur = m;
  for (int s = 0; s < std::abs(k); ++s)
    cur = cover(cur, k > 0 ? CoverSide::Projective : CoverSide::Injective).kernel_or_cokernel;
  return cur;
}

Rep nakayama_functor(const Rep& m) {
  const auto& alg_ptr = m.algebra_ptr();
  const auto& alg = *alg_ptr;
  const auto& q = alg.quiver();
  std::vector<Rep> proj;
  std::vector<Matrix> hom_coords;
  std::vector<std::size_t> dims;
  for (int v = 0; v < alg.num_vertices(); ++v) {
    proj.push_back(projective_module(alg_ptr, v));
    hom_coords.push_back(hom_coordinate_basis(m, proj.back()));
    dims.push_back(hom_coords.back().cols());
  }
  std::vector<Matrix> mats;
  for (int a = 0; a < q.num_arrows(); ++a) {
    const int u = q.arrow(a).source, w = q.arrow(a).target;
    const auto su = static_cast<std::size_t>(u), sw = static_cast<std::size_t>(w);
    const Morphism rho = left_multiplication(alg_ptr, arrow_basis_index(alg, a), proj[sw], proj[su]);
    Matrix c(dims[su], dims[sw], m.prime());
    for (std::size_t j = 0; j < dims[sw]; ++j) {
      const Morphism f = hom_from_coordinates(m, proj[sw], hom_coords[sw].column(j));
      const Matrix g = hom_coordinates(m, proj[su], compose(rho, f));
      c.set_block(0, j, coords_in_basis(hom_coords[su], g));
    }
    mats.push_back(c.transpose());
  }
  return Rep(alg_ptr, std::move(dims), std::move(mats));
}

Morphism nakayama_on_map(const Rep& m, const Rep& n, const Morphism& f) {
  const auto& alg_ptr = m.algebra_ptr();
  Morphism out;
  for (int v = 0; v < alg_ptr->num_vertices(); ++v) {
    const Rep pv = projective_module(alg_ptr, v);
    const Matrix hm = hom_coordinate_basis(m, pv);
    const Matrix hn = hom_coordinate_basis(n, pv);
    Matrix d(hm.cols(), hn.cols(), m.prime());
    for (std::size_t j = 0; j < hn.cols(); ++j) {
      const Morphism h = hom_from_coordinates(n, pv, hn.column(j));
      d.set_block(0, j, coords_in_basis(hm, hom_coordinates(m, pv, compose(h, f))));
    }
    out.comps.push_back(d.transpose());
  }
  return out;
}

Rep nakayama_inverse(const Rep& m) {
  const auto& alg_ptr = m.algebra_ptr();
  const auto& alg = *alg_ptr;
  const auto& q = alg.quiver();
  std::vector<Rep> proj, nuproj;
  std::vector<Matrix> hom_coords;
  std::vector<std::size_t> dims;
  for (int v = 0; v < alg.num_vertices(); ++v) {
    proj.push_back(projective_module(alg_ptr, v));
    nuproj.push_back(nakayama_functor(proj.back()));
    hom_coords.push_back(hom_coordinate_basis(nuproj.back(), m));
    dims.push_back(hom_coords.back().cols());
  }
  std::vector<Matrix> mats;
  for (int a = 0; a < q.num_arrows(); ++a) {
    const auto su = static_cast<std::size_t>(q.arrow(a).source);
    const auto sw = static_cast<std::size_t>(q.arrow(a).target);
    const Morphism rho = left_multiplication(alg_ptr, arrow_basis_index(alg, a), proj[sw], proj[su]);
    const Morphism nu_rho = nakayama_on_map(proj[sw], proj[su], rho);  // nu P(w) -> nu P(u)
    Matrix c(dims[sw], dims[su], m.prime());
    for (std::size_t j = 0; j < dims[su]; ++j) {
      const Morphism g = hom_from_coordinates(nuproj[su], m, hom_coords[su].column(j));
      c.set_block(0, j, coords_in_basis(hom_coords[sw], hom_coordinates(nuproj[sw], m, compose(g, nu_rho))));
    }
    mats.push_back(std::move(c));
  }
  return Rep(alg_ptr, std::move(dims), std::move(mats));
}

Rep tau(const Rep& m, int sign) {
  const auto& alg = m.algebra();
  require_self_injective(alg);
  const Rep s = strip_projective(m);
  if (s.is_zero()) fail(ErrorKind::ProjectiveInput, "tau of a projective module");
  const bool symmetric = alg.selfinjectivity().symmetric();
  if (sign >= 0) {
    const Rep o2 = syzygy(s, 2);
    return symmetric ? o2 : nakayama_functor(o2);
  }
  return syzygy(symmetric ? s : nakayama_inverse(s), -2);
}

Rep tau_power(const Rep& m, int k) {
  Rep cur = m;
  for (int s = 0; s < std::abs(k); ++s) cur = tau(cur, k > 0 ? 1 : -1);
  return cur;
}

bool StableHom::factors_through_projective(const Matrix& coords) const {
  if (coords.is_zero()) return true;
  if (proj_span.cols() == 0) return false;
  return ff::rank(ff::hstack(proj_span, coords)) == proj_span.cols();
}

Matrix StableHom::stable_coordinates(const Matrix& coords) const {
  const Matrix sys = ff::hstack(stable_basis, proj_span);
  const auto x = ff::solve(sys, coords);
  if (!x) fail(ErrorKind::Internal, "vector is not in the Hom space");
  return x->submatrix(0, 0, stable_dim, 1);
}

namespace {

Matrix proj_coordinate_span(const Rep& m, const Rep& n) {
  const CoverData c = cover(n, CoverSide::Projective);
  const Matrix through = hom_coordinate_basis(m, c.cover);
  const std::size_t rows = hom_coordinate_count(m, n);
  if (through.cols() == 0) return Matrix(rows, 0, m.prime());
  const Matrix span = push_coordinates(m, c) * through;
  if (span.is_zero()) return Matrix(rows, 0, m.prime());
  return ff::column_space(span);
}

}  // namespace

StableHom sthom(const Rep& m, const Rep& n) {
  require_same_algebra(m, n);
  StableHom s;
  s.hom = hom_space(m, n);
  s.full_dim = s.hom.dim();
  const std::size_t rows = hom_coordinate_count(m, n);
  if (s.full_dim == 0) {
    s.proj_span = Matrix(rows, 0, m.prime());
    s.stable_basis = Matrix(rows, 0, m.prime());
    return s;
  }
  s.proj_span = proj_coordinate_span(m, n);
  s.proj_factor_dim = s.proj_span.cols();
  const auto piv = ff::rref(ff::hstack(s.proj_span, s.hom.coords)).pivots;
  std::vector<std::size_t> chosen;
  for (auto c : piv)
    if (c >= s.proj_factor_dim) chosen.push_back(c - s.proj_factor_dim);
  s.stable_basis = s.hom.coords.select_columns(chosen);
  s.stable_dim = chosen.size();
  if (s.stable_dim + s.proj_factor_dim != s.full_dim) fail(ErrorKind::Internal, "stable Hom dimension mismatch");
  return s;
}

std::size_t sthom_dim(const Rep& m, const Rep& n) {
  require_same_algebra(m, n);
  const std::size_t full = hom_dim(m, n);
  if (full == 0) return 0;
  return full - proj_coordinate_span(m, n).cols();
}

Ext1 ext1(const Rep& n, const Rep& x) {
  require_self_injective(n.algebra());
  Ext1 e;
  e.cover_of_n = cover(n, CoverSide::Projective);
  e.classes = sthom(e.cover_of_n.kernel_or_cokernel, x);
  return e;
}

Extension extension(const Ext1& e, const Rep& n, const Rep& x, const Matrix& phi_coords) {
  const Rep& omega = e.cover_of_n.kernel_or_cokernel;
  const Rep& p0 = e.cover_of_n.cover;
  const Morphism phi = hom_from_coordinates(omega, x, phi_coords);
  const Morphism& iota = e.cover_of_n.side_map;
  const SumData s = direct_sum_data({p0, x});
  const Morphism j = add(compose(s.inclusions[0], iota), scaled(compose(s.inclusions[1], phi), x.prime() - 1));
  auto coker = cokernel(omega, s.sum, j);
  Extension out;
  out.middle = coker.module;
  out.left = compose(coker.map, s.inclusions[1]);
  const Morphism down = compose(e.cover_of_n.map, s.projections[0]);  // P0 (+) X -> N
  for (std::size_t v = 0; v < down.comps.size(); ++v)
    out.right.comps.push_back(down.comps[v] * ff::right_inverse(coker.map.comps[v]));
  (void)n;
  return out;
}

Rep cocone(const Rep& m, const Rep& t, const Morphism& psi) {
  const CoverData c = cover(t, CoverSide::Projective);
  const SumData s = direct_sum_data({m, c.cover});
  const Morphism f = add(compose(psi, s.projections[0]), scaled(compose(c.map, s.projections[1]), m.prime() - 1));
  return strip_projective(kernel(s.sum, t, f).module);
}

Morphism syzygy_of_map(const CoverData& c, const Morphism& g) {
  const Rep& n = c.module;
  const auto& pres = n.presentation();
  std::vector<Matrix> images;
  for (std::size_t k = 0; k < pres.gen_vertex.size(); ++k) {
    const auto v = static_cast<std::size_t>(pres.gen_vertex[k]);
    Matrix gen(n.dims()[v], 1, n.prime());
    for (std::size_t i = 0; i < pres.gen_vector[k].size(); ++i) gen(i, 0) = pres.gen_vector[k][i];
    images.push_back(pres.right_inverse[v] * (g.comps[v] * gen));
  }
  const Morphism lift = map_from_cover(n, c.cover, images);
  Morphism out;
  for (std::size_t v = 0; v < lift.comps.size(); ++v) {
    const Matrix& inc = c.side_map.comps[v];
    out.comps.push_back(ff::left_inverse(inc) * lift.comps[v] * inc);
  }
  return out;
}

SemibrickReport semibrick_check(const std::vector<Rep>& set) {
  SemibrickReport r;
  for (const auto& x : set) {
    if (strip_projective(x).is_zero())
      fail(ErrorKind::ProjectiveInput, "semibrick candidate is projective");
  }
  r.semibrick = true;
  r.stable_dims.assign(set.size(), std::vector<std::size_t>(set.size(), 0));
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = 0; j < set.size(); ++j) {
      const auto d = sthom_dim(set[i], set[j]);
      r.stable_dims[i][j] = d;
      if (i == j && d != 1) {
        r.semibrick = false;
        if (r.reason.empty()) r.reason = "member " + std::to_string(i) + " has stable End of dimension " + std::to_string(d);
      }
      if (i != j && d != 0) {
        r.semibrick = false;
        if (r.reason.empty())
          r.reason = "members " + std::to_string(i) + ", " + std::to_string(j) + " are not stably orthogonal";
      }
    }
  }
  return r;
}

}  // namespace qlab
