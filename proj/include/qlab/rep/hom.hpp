#pragma once

#include "qlab/rep/rep.hpp"

namespace qlab {

// Hom_A(M, N). A map f is recorded by the images f(g_k) of the generators of M's
// presentation, stacked into one column ("generator coordinates").
struct HomSpace {
  std::vector<Morphism> basis;
  Matrix coords;  // one column per basis element
  std::size_t dim() const noexcept { return basis.size(); }
};

// Deterministic basis: the nullspace of the generator-image equations in RREF order.
HomSpace hom_space(const Rep& m, const Rep& n);
std::size_t hom_dim(const Rep& m, const Rep& n);
// Just the coordinate columns of hom_space(m, n).basis.
Matrix hom_coordinate_basis(const Rep& m, const Rep& n);

// Number of generator coordinates of maps M -> N.
std::size_t hom_coordinate_count(const Rep& m, const Rep& n);
Matrix hom_coordinates(const Rep& m, const Rep& n, const Morphism& f);
// Map with the given generator images; the column must satisfy the Hom equations.
Morphism hom_from_coordinates(const Rep& m, const Rep& n, const Matrix& column);

// Linear combination of basis morphisms with coefficients in `column` (length dim()).
Morphism combine(const HomSpace& h, const Rep& m, const Rep& n, const Matrix& column);

}  // namespace qlab
