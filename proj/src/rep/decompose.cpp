#include "qlab/rep/decompose.hpp"

#include <random>

#include "qlab/error.hpp"

namespace qlab {

namespace {

std::uint32_t trace_of_product(const Morphism& x, const Morphism& y, std::uint32_t p) {
  const ff::Field f(p);
  std::uint32_t t = 0;
  for (std::size_t v = 0; v < x.comps.size(); ++v) {
    const auto& a = x.comps[v];
    const auto& b = y.comps[v];
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < a.cols(); ++k)
        if (a(i, k)) t = f.add(t, f.mul(a(i, k), b(k, i)));
  }
  return t;
}

std::mt19937_64 seeded_rng(const Rep& m) {
  std::uint64_t seed = 0x51ed2701u;
  for (auto d : m.dims()) seed = seed * 1000003u + d;
  return std::mt19937_64(seed);
}

Matrix random_column(std::mt19937_64& rng, std::size_t n, std::uint32_t p) {
  Matrix c(n, 1, p);
  std::uniform_int_distribution<std::uint32_t> dist(0, p - 1);
  for (std::size_t i = 0; i < n; ++i) c(i, 0) = dist(rng);
  return c;
}

Matrix power(Matrix a, std::size_t e) {
  Matrix r = Matrix::identity(a.rows(), a.prime());
  while (e) {
    if (e & 1) r = r * a;
    e >>= 1;
    if (e) a = a * a;
  }
  return r;
}

// Tries to split m along a Fitting decomposition of a random endomorphism.
std::optional<std::pair<Rep, Rep>> try_split(const Rep& m, const HomSpace& end, std::mt19937_64& rng) {
  const auto p = m.prime();
  const ff::Field f(p);
  const Morphism x = combine(end, m, m, random_column(rng, end.dim(), p));
  for (int v = 0; v < m.algebra().num_vertices(); ++v) {
    const auto d = m.dim(v);
    if (d == 0) continue;
    for (std::uint32_t lambda = 0; lambda < p; ++lambda) {
      Matrix y = x.comps[static_cast<std::size_t>(v)];
      for (std::size_t i = 0; i < d; ++i) y(i, i) = f.sub(y(i, i), lambda);
      if (ff::rank(y) == d) continue;
      std::vector<Matrix> ker, img;
      bool img_nonzero = false;
      for (std::size_t w = 0; w < x.comps.size(); ++w) {
        Matrix yw = x.comps[w];
        for (std::size_t i = 0; i < yw.rows(); ++i) yw(i, i) = f.sub(yw(i, i), lambda);
        const Matrix pw = power(yw, m.total_dim());
        ker.push_back(ff::nullspace(pw));
        img.push_back(pw);
        img_nonzero = img_nonzero || !pw.is_zero();
      }
      if (!img_nonzero) return std::nullopt;  // x - lambda nilpotent: x has one eigenvalue
      return std::make_pair(submodule(m, ker).module, submodule(m, img).module);
    }
  }
  return std::nullopt;
}

void split_into(const Rep& m, std::vector<Rep>& out) {
  if (m.is_zero()) return;
  const auto data = end_with_radical(m);
  if (data.local) {
    out.push_back(m);
    return;
  }
  auto rng = seeded_rng(m);
  for (int attempt = 0; attempt < 64; ++attempt) {
    if (auto parts = try_split(m, data.end, rng)) {
      split_into(parts->first, out);
      split_into(parts->second, out);
      return;
    }
  }
  fail(ErrorKind::NonSplitResidue, "End/rad of a module of dimension " + std::to_string(m.total_dim()) +
                                       " did not split over F_" + std::to_string(m.prime()));
}

}  // namespace

EndData end_with_radical(const Rep& m) {
  if (m.is_zero()) fail(ErrorKind::BadParameter, "endomorphism ring of the zero module");
  if (m.prime() <= m.total_dim())
    fail(ErrorKind::FieldTooSmall, "trace-form radical needs p > dim M = " + std::to_string(m.total_dim()));
  EndData d;
  d.end = hom_space(m, m);
  const auto n = d.end.dim();
  Matrix gram(n, n, m.prime());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      gram(i, j) = gram(j, i) = trace_of_product(d.end.basis[i], d.end.basis[j], m.prime());
  d.radical = ff::nullspace(gram);
  d.residue_dim = n - d.radical.cols();
  d.local = d.residue_dim == 1;
  return d;
}

bool is_indecomposable(const Rep& m) { return !m.is_zero() && end_with_radical(m).local; }

std::size_t Decomposition::count() const {
  std::size_t c = 0;
  for (const auto& s : summands) c += static_cast<std::size_t>(s.second);
  return c;
}

std::vector<Rep> Decomposition::flat() const {
  std::vector<Rep> out;
  for (const auto& [r, k] : summands)
    for (int i = 0; i < k; ++i) out.push_back(r);
  return out;
}

std::vector<Rep> indecomposable_summands(const Rep& m) {
  std::vector<Rep> out;
  split_into(m, out);
  return out;
}

Decomposition decompose(const Rep& m) {
  Decomposition d;
  for (auto& s : indecomposable_summands(m)) {
    bool found = false;
    for (auto& [r, k] : d.summands) {
      if (is_isomorphic_indecomposable(r, s)) {
        ++k;
        found = true;
        break;
      }
    }
    if (!found) d.summands.emplace_back(std::move(s), 1);
  }
  return d;
}

bool is_isomorphic_indecomposable(const Rep& m, const Rep& n) {
  require_same_algebra(m, n);
  if (m.dims() != n.dims()) return false;
  if (m.is_zero()) return true;
  if (fingerprint(m) != fingerprint(n)) return false;
  const auto h = hom_space(m, n);
  if (h.dim() == 0) return false;
  auto rng = seeded_rng(m);
  for (int k = 0; k < 8; ++k)
    if (is_isomorphism(combine(h, m, n, random_column(rng, h.dim(), m.prime())))) return true;
  const auto back = hom_space(n, m);
  for (const auto& psi : back.basis)
    for (const auto& phi : h.basis)
      if (is_isomorphism(compose(psi, phi))) return true;
  return false;
}

bool is_isomorphic(const Rep& m, const Rep& n) {
  require_same_algebra(m, n);
  if (m.dims() != n.dims()) return false;
  if (m.is_zero()) return true;
  if (fingerprint(m) != fingerprint(n)) return false;
  const auto h = hom_space(m, n);
  if (h.dim() == 0) return false;
  auto rng = seeded_rng(m);
  for (int k = 0; k < 16; ++k)
    if (is_isomorphism(combine(h, m, n, random_column(rng, h.dim(), m.prime())))) return true;
  if (is_indecomposable(m)) {
    const auto back = hom_space(n, m);
    for (const auto& psi : back.basis)
      for (const auto& phi : h.basis)
        if (is_isomorphism(compose(psi, phi))) return true;
    return false;
  }
  auto a = indecomposable_summands(m);
  auto b = indecomposable_summands(n);
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    bool matched = false;
    for (std::size_t j = 0; j < b.size() && !matched; ++j) {
      if (!used[j] && is_isomorphic_indecomposable(x, b[j])) used[j] = matched = true;
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace qlab
