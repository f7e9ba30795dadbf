#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlab/stable/stable.hpp"

namespace qlab {

struct ARSequence {
  Rep left;   // tau N
  Rep right;  // N
  Extension ext;
  Decomposition middle;
  Matrix class_coords;  // generator coordinates in Hom(Omega N, tau N)
  std::size_t ext_dim = 0;
  std::size_t socle_dim = 0;
};

// Errors: ProjectiveInput, BadParameter (N decomposable), SocleNotLine, NonSplitResidue.
ARSequence ar_sequence(const Rep& n);

struct ARCheck {
  bool exact = false;
  bool non_split = false;
  bool additive = false;
  bool lifting = false;
  std::string detail;
  bool ok() const noexcept { return exact && non_split && additive && lifting; }
};
// Exactness, non-splitness and the right almost-split property tested against `universe`
// (indecomposables): every non-isomorphism X -> N factors through the middle.
ARCheck check_ar_sequence(const ARSequence& s, const std::vector<Rep>& universe);

struct ComponentNode {
  Rep module;
  Fingerprint fp;
  bool projective = false;
  std::optional<std::size_t> tau, tau_inv;
  bool mesh = false;  // AR sequence ending here knitted
  std::vector<std::pair<std::size_t, int>> middle;
};

struct ComponentArrow {
  std::size_t from = 0, to = 0;
  int mult = 1;
  friend bool operator==(const ComponentArrow&, const ComponentArrow&) = default;
};

struct KnitBounds {
  std::size_t max_dim = 24;
  std::size_t max_nodes = 200;
};

struct Component {
  AlgebraPtr algebra;
  std::vector<ComponentNode> nodes;
  std::vector<ComponentArrow> arrows;
  std::vector<std::size_t> frontier;
  std::size_t seed = 0;
  bool complete = false;  // nothing left unexpanded

  std::optional<std::size_t> find(const Rep& m) const;
  std::size_t stable_size() const;
  // Non-projective summands of the mesh ending at node k, with multiplicity.
  std::vector<std::pair<std::size_t, int>> stable_middle(std::size_t k) const;
};

// Breadth-first knitting around `seed` (indecomposable). Nodes larger than max_dim stay on
// the frontier.
Component knit_component(const Rep& seed, const KnitBounds& bounds);
// Continues knitting with new bounds.
void extend_component(Component& c, const KnitBounds& bounds);

struct TubeInfo {
  Component component;
  int rank = 0;
  int verified_depth = 0;
  // grid[r-1][i-1] = node of X_i(r), 1 <= r <= verified_depth.
  std::vector<std::vector<std::size_t>> grid;
  std::optional<std::pair<int, int>> coords(std::size_t node) const;  // (i, r)
  std::size_t node(int i, int r) const;  // indices taken mod rank; BoundExceeded past the depth
  int wrap(int i) const;                 // into 1..rank
};

// Errors: NotQuasiSerial.
TubeInfo tube_info(const Component& c);

// Knits around `seed` until the tube pattern is verified to `depth` (or the node cap stops it).
TubeInfo knit_tube(const Rep& seed, int depth, std::size_t max_nodes = 400);

enum class TubeStyle { Up, Down };  // X_i(r) or [r]X_i
Rep tube_module(const TubeInfo& t, int i, int r, TubeStyle style = TubeStyle::Up);

struct Wing {
  int j = 0, l = 0;
  std::vector<std::pair<int, int>> members;  // (i, r)
};
Wing wing_members(const TubeInfo& t, int j, int l);
bool in_wing(const TubeInfo& t, const Wing& w, int i, int r);

struct TriangleWitness {
  bool found = false;
  Matrix class_coords;
  std::size_t ext_dim = 0;
  std::size_t classes_tried = 0;
  std::vector<Fingerprint> middle;  // non-projective summands
};
// 0 -> X_i(r) -> X_i(r+j) (+) X_{i+l}(r-l) (+) P -> X_{i+l}(r-l+j) -> 0 with 1 <= l <= r;
// l == r is the two-term case. Errors: NotFound, CapExceeded.
TriangleWitness sectional_triangle_check(const TubeInfo& t, int i, int r, int l, int j);

// max_depth > 0 (with a tube): only the stable grid up to that quasi-length.
std::string component_to_dot(const Component& c, const TubeInfo* tube = nullptr, int max_depth = 0);
std::string component_to_json(const Component& c, const TubeInfo* tube = nullptr, int max_depth = 0);

// Enumerates the nonzero vectors of F_p^d up to scalar, first nonzero entry 1, in a fixed
// order. Errors: CapExceeded when the count exceeds cap.
std::vector<Matrix> projective_points(std::size_t d, std::uint32_t p, std::size_t cap);

}  // namespace qlab
