#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qlab/rep/decompose.hpp"

namespace qlab {

enum class CoverSide { Projective, Injective };

// Projective side: cover ->> module with kernel_or_cokernel = Omega(module) and
//   side_map: kernel -> cover the inclusion.
// Injective side: module >-> cover with kernel_or_cokernel = Omega^{-1}(module) and
//   side_map: cover -> cokernel the projection.
struct CoverData {
  Rep module;
  Rep cover;
  Morphism map;
  Rep kernel_or_cokernel;
  Morphism side_map;
  std::vector<int> summand_vertices;  // cover = (+)_k P(summand_vertices[k])
};

// Minimal projective cover built from the presentation; the injective side needs a
// self-injective algebra (NotSelfInjective otherwise).
CoverData cover(const Rep& m, CoverSide side);

// Map out of the projective cover of m determined by the images of its generators
// (one column per generator k, living in target_{v_k}).
Morphism map_from_cover(const Rep& m, const Rep& target, const std::vector<Matrix>& images);

// k-linear duality D: modules over A <-> modules over A^op.
Rep dual(const Rep& m);

void require_self_injective(const Algebra& alg);
bool is_projective(const Rep& m);
// Removes projective(-injective) summands: P(v) splits off iff some m in M_v has nonzero
// image under the socle element of P(v).
Rep strip_projective(const Rep& m);

Rep syzygy(const Rep& m, int k = 1);

// nu(M)_v = Hom(M, P(v))^*.
Rep nakayama_functor(const Rep& m);
// nu(f) for f: M -> N, as a map nu(M) -> nu(N).
Morphism nakayama_on_map(const Rep& m, const Rep& n, const Morphism& f);
// nu^{-1}(M)_v = Hom(nu P(v), M).
Rep nakayama_inverse(const Rep& m);

// tau = nu Omega^2, tau^{-1} = Omega^{-2} nu^{-1}. Errors: NotSelfInjective, ProjectiveInput.
Rep tau(const Rep& m, int sign = 1);
Rep tau_power(const Rep& m, int k);

// Stable Hom in generator coordinates of Hom(M, N).
struct StableHom {
  HomSpace hom;
  Matrix proj_span;      // coordinate columns spanning the maps factoring through projectives
  Matrix stable_basis;   // coordinate columns, coset representatives
  std::size_t full_dim = 0;
  std::size_t proj_factor_dim = 0;
  std::size_t stable_dim = 0;

  bool factors_through_projective(const Matrix& coords) const;
  // Coordinates of the class of `coords` in stable_basis.
  Matrix stable_coordinates(const Matrix& coords) const;
};

StableHom sthom(const Rep& m, const Rep& n);
std::size_t sthom_dim(const Rep& m, const Rep& n);

// Ext^1(N, X) = stHom(Omega N, X). Classes are materialized as pushouts.
struct Ext1 {
  CoverData cover_of_n;  // P0 ->> N, kernel Omega N with inclusion iota
  StableHom classes;     // stHom(Omega N, X)
  std::size_t dim() const noexcept { return classes.stable_dim; }
};
Ext1 ext1(const Rep& n, const Rep& x);

struct Extension {
  Rep middle;
  Morphism left;   // X -> E
  Morphism right;  // E -> N
};
// 0 -> X -> E -> N -> 0 for the class phi: Omega N -> X (generator coordinates).
Extension extension(const Ext1& e, const Rep& n, const Rep& x, const Matrix& phi_coords);

// Cocone of psi: M -> T: the module N in 0 -> N -> M (+) P_T -> T -> 0, projectives stripped.
Rep cocone(const Rep& m, const Rep& t, const Morphism& psi);

// Ω of an endomorphism g of N: restriction of a lift P0 -> P0 to Omega N.
Morphism syzygy_of_map(const CoverData& c, const Morphism& g);

struct SemibrickReport {
  std::vector<std::vector<std::size_t>> stable_dims;  // [i][j] = dim stHom(S_i, S_j)
  bool semibrick = false;
  std::string reason;
};
// Errors: ProjectiveInput (a member is projective), NonSplitResidue.
SemibrickReport semibrick_check(const std::vector<Rep>& set);

}  // namespace qlab
