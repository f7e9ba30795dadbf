#pragma once

#include <utility>
#include <vector>

#include "qlab/rep/hom.hpp"

namespace qlab {

// End(M) with its Jacobson radical, found as the kernel of the trace form
// (x, y) -> Tr_M(x y). Needs p > dim M, else FieldTooSmall.
struct EndData {
  HomSpace end;
  Matrix radical;  // columns: coefficient vectors over end.basis spanning rad End(M)
  std::size_t residue_dim = 0;
  bool local = false;
};

EndData end_with_radical(const Rep& m);
bool is_indecomposable(const Rep& m);

struct Decomposition {
  std::vector<std::pair<Rep, int>> summands;  // pairwise non-isomorphic, with multiplicities
  std::size_t count() const;
  std::vector<Rep> flat() const;  // each summand repeated by multiplicity
};

// Splits by Fitting decompositions of random endomorphisms (fixed seed).
// Errors: FieldTooSmall, NonSplitResidue.
std::vector<Rep> indecomposable_summands(const Rep& m);
Decomposition decompose(const Rep& m);

bool is_isomorphic(const Rep& m, const Rep& n);
// Both arguments known to be indecomposable.
bool is_isomorphic_indecomposable(const Rep& m, const Rep& n);

}  // namespace qlab
