#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "qlab/bqa/algebra.hpp"
#include "qlab/ff/matrix.hpp"

namespace qlab {

using ff::Matrix;

// Projective presentation data of a module M, built on first use.
//   generators g_k in M_{v_k} span a complement of rad M (so the cover is minimal);
//   pi[w] has one column per pair (k, basis path p: v_k -> w), the column being M_p g_k;
//   right_inverse[w] satisfies pi[w] * right_inverse[w] = I;
//   kernel[w] spans ker pi[w].
struct Presentation {
  std::vector<int> gen_vertex;
  std::vector<std::vector<std::uint32_t>> gen_vector;
  std::vector<std::vector<std::pair<int, int>>> cols;  // per w: (generator k, basis index)
  std::vector<Matrix> pi;
  std::vector<Matrix> right_inverse;
  std::vector<Matrix> kernel;
};

// A finite-dimensional left module given as a representation of the quiver.
// Arrow a: u -> v acts by a dims(v) x dims(u) matrix; a path a1*...*ak acts by M_ak ... M_a1.
// Immutable; copies share lazily built caches.
class Rep {
 public:
  Rep() = default;
  // Throws Internal on shape mismatches; relations are not checked here.
  Rep(AlgebraPtr alg, std::vector<std::size_t> dims, std::vector<Matrix> mats);
  static Rep zero(AlgebraPtr alg);

  const AlgebraPtr& algebra_ptr() const noexcept { return alg_; }
  const Algebra& algebra() const { return *alg_; }
  std::uint32_t prime() const { return alg_->prime(); }

  std::size_t dim(int v) const { return dims_.at(static_cast<std::size_t>(v)); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t total_dim() const noexcept { return total_; }
  bool is_zero() const noexcept { return total_ == 0; }
  std::size_t offset(int v) const { return offsets_.at(static_cast<std::size_t>(v)); }

  const Matrix& mat(int a) const { return mats_.at(static_cast<std::size_t>(a)); }
  const std::vector<Matrix>& mats() const noexcept { return mats_; }

  // Action of basis path i (dims(target) x dims(source)); cached.
  const Matrix& basis_action(int i) const;
  Matrix path_action(const Path& p) const;
  // Action of an algebra element e_v A e_w given in the path basis.
  Matrix element_action(const SparseVec& x, int source, int target) const;

  bool satisfies_relations() const;
  const Presentation& presentation() const;

  friend bool operator==(const Rep& a, const Rep& b) {
    return a.alg_ == b.alg_ && a.dims_ == b.dims_ && a.mats_ == b.mats_;
  }

 private:
  struct Cache;
  Cache& cache() const;

  AlgebraPtr alg_;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
  std::vector<Matrix> mats_;
  mutable std::shared_ptr<Cache> cache_;
};

// A module map; comps[v] has shape target.dim(v) x source.dim(v).
struct Morphism {
  std::vector<Matrix> comps;
  friend bool operator==(const Morphism&, const Morphism&) = default;
};

Morphism identity_map(const Rep& m);
Morphism zero_map(const Rep& m, const Rep& n);
Morphism compose(const Morphism& g, const Morphism& f);  // g after f
Morphism add(const Morphism& f, const Morphism& g);
Morphism scaled(const Morphism& f, std::uint32_t c);
bool is_zero(const Morphism& f);
bool is_homomorphism(const Rep& m, const Rep& n, const Morphism& f);
bool is_injective(const Morphism& f);
bool is_surjective(const Morphism& f);
bool is_isomorphism(const Morphism& f);
// Whole-space matrix (total_dim(N) x total_dim(M)), block diagonal over vertices.
Matrix total_matrix(const Rep& m, const Rep& n, const Morphism& f);
Morphism from_total_matrix(const Rep& m, const Rep& n, const Matrix& t);

void require_same_algebra(const Rep& m, const Rep& n);

Rep simple_module(const AlgebraPtr& alg, int v);
// P(v) on the basis paths starting at v, grouped by target in basis order.
Rep projective_module(const AlgebraPtr& alg, int v);
// A as a left module over itself.
Rep regular_module(const AlgebraPtr& alg);

struct SumData {
  Rep sum;
  std::vector<Morphism> inclusions;
  std::vector<Morphism> projections;
};
SumData direct_sum_data(const std::vector<Rep>& parts);
Rep direct_sum(const std::vector<Rep>& parts);
Rep direct_sum(const Rep& a, const Rep& b);

// Submodule spanned per vertex by the columns of span[v] (need not be independent; must be
// closed under the arrows). Returns the submodule and its inclusion.
struct SubData {
  Rep module;
  Morphism map;  // inclusion (sub) or projection (quotient)
};
SubData submodule(const Rep& m, const std::vector<Matrix>& span);
SubData quotient(const Rep& m, const std::vector<Matrix>& span);
SubData kernel(const Rep& m, const Rep& n, const Morphism& f);
SubData cokernel(const Rep& m, const Rep& n, const Morphism& f);
SubData image(const Rep& m, const Rep& n, const Morphism& f);
// Smallest submodule containing the given vectors (per-vertex column spans).
std::vector<Matrix> generated_submodule(const Rep& m, const std::vector<Matrix>& gens);

// Projection onto the coordinates complementary to span(u) (rows), for u with d rows.
Matrix complement_projection(const Matrix& u, std::size_t d);

// Radical, socle and the corresponding layers.
std::vector<Matrix> radical_span(const Rep& m);
std::vector<Matrix> socle_span(const Rep& m);

struct Layers {
  Rep top;
  Rep radical;
  Rep socle;
};
Layers layers(const Rep& m);

// Isomorphism invariants: dimension vector, then the dimension vectors of the radical
// layers and of the socle layers.
struct Fingerprint {
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::size_t>> radical_layers;
  std::vector<std::vector<std::size_t>> socle_layers;
  friend auto operator<=>(const Fingerprint&, const Fingerprint&) = default;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};
Fingerprint fingerprint(const Rep& m);
std::string to_string(const Fingerprint& f);
std::string dims_string(const Rep& m);

}  // namespace qlab
