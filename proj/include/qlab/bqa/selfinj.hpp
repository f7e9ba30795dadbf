#pragma once

#include <optional>
#include <vector>

#include "qlab/bqa/algebra.hpp"

namespace qlab {

struct SelfInjectivityReport {
  bool is_self_injective = false;
  // Socle vertex of P(v); present iff self-injective.
  std::vector<int> nakayama_perm;
  // Element of e_v A spanning soc P(v) (only when soc P(v) is simple).
  std::vector<SparseVec> socle_elements;
  // lambda on the path basis with <a,b> = lambda(ab) symmetric, associative and nondegenerate.
  std::optional<std::vector<std::uint32_t>> symmetric_form;

  bool weakly_symmetric() const;
  bool symmetric() const { return symmetric_form.has_value(); }
};

SelfInjectivityReport selfinjectivity_report(const Algebra& alg);
// <b_i, b_j> under the report's form.
std::uint32_t form_value(const Algebra& alg, const std::vector<std::uint32_t>& lambda, int i, int j);

}  // namespace qlab
