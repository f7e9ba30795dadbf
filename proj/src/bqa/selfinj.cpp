#include "qlab/bqa/selfinj.hpp"

#include <random>
#include <set>

#include "qlab/ff/matrix.hpp"
#include "qlab/rep/rep.hpp"

namespace qlab {

namespace {

struct SocleScan {
  bool simple_socles = true;
  std::vector<int> socle_vertex;
  std::vector<SparseVec> socle_elements;
};

SocleScan scan_socles(const AlgebraPtr& alg) {
  SocleScan s;
  for (int v = 0; v < alg->num_vertices(); ++v) {
    const Rep p = projective_module(alg, v);
    const auto soc = socle_span(p);
    int total = 0, where = -1;
    for (int w = 0; w < alg->num_vertices(); ++w) {
      const auto c = static_cast<int>(soc[static_cast<std::size_t>(w)].cols());
      total += c;
      if (c) where = w;
    }
    if (total != 1) {
      s.simple_socles = false;
      s.socle_vertex.push_back(-1);
      s.socle_elements.emplace_back();
      continue;
    }
    const auto between = alg->basis_between(v, where);
    const auto& col = soc[static_cast<std::size_t>(where)];
    SparseVec elem;
    for (std::size_t k = 0; k < between.size(); ++k)
      if (col(k, 0)) elem.emplace_back(between[k], col(k, 0));
    s.socle_vertex.push_back(where);
    s.socle_elements.push_back(std::move(elem));
  }
  return s;
}

bool is_bijection(const std::vector<int>& perm) {
  std::set<int> seen(perm.begin(), perm.end());
  return seen.size() == perm.size() && !seen.count(-1);
}

}  // namespace

bool SelfInjectivityReport::weakly_symmetric() const {
  if (!is_self_injective) return false;
  for (std::size_t v = 0; v < nakayama_perm.size(); ++v)
    if (nakayama_perm[v] != static_cast<int>(v)) return false;
  return true;
}

std::uint32_t form_value(const Algebra& alg, const std::vector<std::uint32_t>& lambda, int i, int j) {
  const ff::Field f(alg.prime());
  std::uint32_t s = 0;
  for (const auto& [k, c] : alg.multiply(i, j)) s = f.add(s, f.mul(c, lambda[static_cast<std::size_t>(k)]));
  return s;
}

SelfInjectivityReport selfinjectivity_report(const Algebra& alg) {
  SelfInjectivityReport r;
  const auto self = alg.shared_from_this();
  auto left = scan_socles(self);
  r.socle_elements = left.socle_elements;
  if (!left.simple_socles || !is_bijection(left.socle_vertex)) return r;
  const auto right = scan_socles(alg.opposite());
  if (!right.simple_socles || !is_bijection(right.socle_vertex)) return r;
  r.is_self_injective = true;
  r.nakayama_perm = left.socle_vertex;

  // Symmetrizing functionals: lambda(b_i b_j) = lambda(b_j b_i) for all i, j.
  const auto n = static_cast<std::size_t>(alg.dim());
  const ff::Field f(alg.prime());
  std::vector<std::vector<std::uint32_t>> rows;
  for (int i = 0; i < alg.dim(); ++i) {
    for (int j = i + 1; j < alg.dim(); ++j) {
      std::vector<std::uint32_t> row(n, 0);
      for (const auto& [k, c] : alg.multiply(i, j)) row[static_cast<std::size_t>(k)] = f.add(row[static_cast<std::size_t>(k)], c);
      for (const auto& [k, c] : alg.multiply(j, i)) row[static_cast<std::size_t>(k)] = f.sub(row[static_cast<std::size_t>(k)], c);
      if (std::any_of(row.begin(), row.end(), [](auto x) { return x != 0; })) rows.push_back(std::move(row));
    }
  }
  ff::Matrix eq(rows.size(), n, alg.prime());
  for (std::size_t i = 0; i < rows.size(); ++i) std::copy(rows[i].begin(), rows[i].end(), eq.row(i).begin());
  const auto sols = ff::nullspace(eq);
  if (sols.cols() == 0) return r;
  // Products b_i b_j as sparse vectors, reused across candidate functionals.
  std::vector<std::vector<SparseVec>> prod(n, std::vector<SparseVec>(n));
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = 0; j < alg.dim(); ++j) prod[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = alg.multiply(i, j);
  std::mt19937_64 rng(0x5eed1ull);
  std::uniform_int_distribution<std::uint32_t> dist(0, alg.prime() - 1);
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::vector<std::uint32_t> lambda(n, 0);
    for (std::size_t c = 0; c < sols.cols(); ++c) {
      const auto coef = attempt == 0 && sols.cols() == 1 ? 1u : dist(rng);
      for (std::size_t k = 0; k < n; ++k) lambda[k] = f.add(lambda[k], f.mul(coef, sols(k, c)));
    }
    ff::Matrix gram(n, n, alg.prime());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::uint32_t s = 0;
        for (const auto& [k, c] : prod[i][j]) s = f.add(s, f.mul(c, lambda[static_cast<std::size_t>(k)]));
        gram(i, j) = s;
      }
    if (ff::is_invertible(gram)) {
      r.symmetric_form = std::move(lambda);
      break;
    }
  }
  return r;
}

const SelfInjectivityReport& Algebra::selfinjectivity() const {
  std::call_once(selfinj_once_, [&] {
    selfinj_ = std::make_shared<const SelfInjectivityReport>(selfinjectivity_report(*this));
  });
  return *selfinj_;
}

}  // namespace qlab
