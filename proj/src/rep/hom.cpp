#include "qlab/rep/hom.hpp"

#include "qlab/error.hpp"

namespace qlab {

namespace {

std::vector<std::size_t> coordinate_offsets(const Presentation& pres, const Rep& n) {
  std::vector<std::size_t> off;
  std::size_t total = 0;
  for (int v : pres.gen_vertex) {
    off.push_back(total);
    total += n.dim(v);
  }
  off.push_back(total);
  return off;
}

// Rows: for each w and each kernel vector y of pi_w, the dim N_w equations
// sum_{(k,p)} y_{k,p} N_p x_k = 0.
Matrix hom_equations(const Rep& m, const Rep& n) {
  const auto& pres = m.presentation();
  const auto off = coordinate_offsets(pres, n);
  const std::size_t unknowns = off.back();
  std::size_t rows = 0;
  for (int w = 0; w < m.algebra().num_vertices(); ++w)
    rows += pres.kernel[static_cast<std::size_t>(w)].cols() * n.dim(w);
  Matrix eq(rows, unknowns, m.prime());
  const ff::Field f(m.prime());
  std::size_t r0 = 0;
  for (int w = 0; w < m.algebra().num_vertices(); ++w) {
    const auto& ker = pres.kernel[static_cast<std::size_t>(w)];
    const auto& cols = pres.cols[static_cast<std::size_t>(w)];
    const std::size_t dw = n.dim(w);
    if (dw == 0) continue;
    for (std::size_t y = 0; y < ker.cols(); ++y) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto coef = ker(c, y);
        if (!coef) continue;
        const auto [k, i] = cols[c];
        const auto& act = n.basis_action(i);  // dw x dim N_{v_k}
        const auto base = off[static_cast<std::size_t>(k)];
        for (std::size_t r = 0; r < dw; ++r)
          for (std::size_t j = 0; j < act.cols(); ++j)
            if (act(r, j)) eq(r0 + r, base + j) = f.add(eq(r0 + r, base + j), f.mul(coef, act(r, j)));
      }
      r0 += dw;
    }
  }
  return eq;
}

}  // namespace

std::size_t hom_coordinate_count(const Rep& m, const Rep& n) {
  return coordinate_offsets(m.presentation(), n).back();
}

Morphism hom_from_coordinates(const Rep& m, const Rep& n, const Matrix& column) {
  const auto& pres = m.presentation();
  const auto off = coordinate_offsets(pres, n);
  Morphism f;
  for (int w = 0; w < m.algebra().num_vertices(); ++w) {
    const auto& cols = pres.cols[static_cast<std::size_t>(w)];
    Matrix big(n.dim(w), cols.size(), m.prime());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const auto [k, i] = cols[c];
      const auto& act = n.basis_action(i);
      const auto base = off[static_cast<std::size_t>(k)];
      const ff::Field fld(m.prime());
      for (std::size_t r = 0; r < act.rows(); ++r) {
        std::uint32_t s = 0;
        for (std::size_t j = 0; j < act.cols(); ++j) s = fld.add(s, fld.mul(act(r, j), column(base + j, 0)));
        big(r, c) = s;
      }
    }
    f.comps.push_back(big * pres.right_inverse[static_cast<std::size_t>(w)]);
  }
  return f;
}

Matrix hom_coordinates(const Rep& m, const Rep& n, const Morphism& f) {
  const auto& pres = m.presentation();
  const auto off = coordinate_offsets(pres, n);
  Matrix col(off.back(), 1, m.prime());
  const ff::Field fld(m.prime());
  for (std::size_t k = 0; k < pres.gen_vertex.size(); ++k) {
    const auto& fv = f.comps[static_cast<std::size_t>(pres.gen_vertex[k])];
    const auto& g = pres.gen_vector[k];
    for (std::size_t r = 0; r < fv.rows(); ++r) {
      std::uint32_t s = 0;
      for (std::size_t j = 0; j < g.size(); ++j)
        if (g[j]) s = fld.add(s, fld.mul(fv(r, j), g[j]));
      col(off[k] + r, 0) = s;
    }
  }
  return col;
}

HomSpace hom_space(const Rep& m, const Rep& n) {
  require_same_algebra(m, n);
  HomSpace h;
  h.coords = ff::nullspace(hom_equations(m, n));
  for (std::size_t c = 0; c < h.coords.cols(); ++c) h.basis.push_back(hom_from_coordinates(m, n, h.coords.column(c)));
  return h;
}

Matrix hom_coordinate_basis(const Rep& m, const Rep& n) {
  require_same_algebra(m, n);
  return ff::nullspace(hom_equations(m, n));
}

std::size_t hom_dim(const Rep& m, const Rep& n) {
  require_same_algebra(m, n);
  const auto eq = hom_equations(m, n);
  return eq.cols() - ff::rank(eq);
}

Morphism combine(const HomSpace& h, const Rep& m, const Rep& n, const Matrix& column) {
  Morphism f = zero_map(m, n);
  for (std::size_t k = 0; k < h.basis.size(); ++k)
    if (column(k, 0)) f = add(f, scaled(h.basis[k], column(k, 0)));
  return f;
}

}  // namespace qlab
