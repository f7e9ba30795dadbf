#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlab/ff/field.hpp"

namespace qlab {

struct SelfInjectivityReport;

struct Arrow {
  std::string id;
  int source = 0;
  int target = 0;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

class Quiver {
 public:
  Quiver() = default;
  // Throws UnknownVertex / BadParameter on duplicate ids or undeclared endpoints.
  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

  int num_vertices() const noexcept { return static_cast<int>(vertices_.size()); }
  int num_arrows() const noexcept { return static_cast<int>(arrows_.size()); }
  const std::string& vertex_name(int v) const { return vertices_.at(static_cast<std::size_t>(v)); }
  const std::vector<std::string>& vertex_names() const noexcept { return vertices_; }
  const Arrow& arrow(int a) const { return arrows_.at(static_cast<std::size_t>(a)); }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  const std::vector<int>& out_arrows(int v) const { return out_.at(static_cast<std::size_t>(v)); }
  const std::vector<int>& in_arrows(int v) const { return in_.at(static_cast<std::size_t>(v)); }

  std::optional<int> find_vertex(const std::string& name) const;
  std::optional<int> find_arrow(const std::string& id) const;
  int vertex_index(const std::string& name) const;  // throws UnknownVertex

  Quiver opposite() const;

  friend bool operator==(const Quiver& a, const Quiver& b) {
    return a.vertices_ == b.vertices_ && a.arrows_ == b.arrows_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<int>> out_, in_;
};

// A path in left-to-right composition: arrows[0] is traversed first.
// The trivial path e_v has no arrows and source == target == v.
struct Path {
  int source = 0;
  int target = 0;
  std::vector<int> arrows;

  std::size_t length() const noexcept { return arrows.size(); }
  static Path trivial(int v) { return {v, v, {}}; }
  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

// Path order used for orienting rules: length first, then lexicographic on arrow ids.
bool path_less(const Quiver& q, const Path& a, const Path& b);
std::string path_to_string(const Quiver& q, const Path& p);
// Builds a path from left-to-right arrow ids; throws NonComposable / UnknownVertex.
Path make_path(const Quiver& q, const std::vector<std::string>& arrow_ids);
Path concat(const Path& a, const Path& b);
Path reversed(const Path& p);

// lead + coeff * other = 0, with lead the larger path in path order (rule lead -> -coeff*other).
struct Binomial {
  Path lead;
  Path other;
  std::uint32_t coeff = 0;
  friend bool operator==(const Binomial&, const Binomial&) = default;
};

struct RelationSet {
  std::vector<Path> monomials;
  std::vector<Binomial> binomials;
  friend bool operator==(const RelationSet&, const RelationSet&) = default;
};

enum class Composition { LeftToRight, RightToLeft };

struct AlgebraSpec {
  std::string name = "A";
  std::uint32_t field = 101;
  Composition composition = Composition::LeftToRight;
  Quiver quiver;
  RelationSet relations;                // stored left-to-right
  std::optional<int> nilpotency;        // declared bound N, if any
  friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

// Sparse vector over the path basis: (basis index, coefficient), sorted by index, no zeros.
using SparseVec = std::vector<std::pair<int, std::uint32_t>>;

// Finite-dimensional algebra kQ/I with a normal-form path basis.
// Immutable once built; instances are always owned by shared_ptr.
class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  struct PrivateTag {};
  Algebra(PrivateTag, AlgebraSpec spec);

  // Validates the spec and builds the basis. Errors: NonAdmissible, NonComposable, BoundExceeded.
  static std::shared_ptr<const Algebra> build(AlgebraSpec spec);

  const AlgebraSpec& spec() const noexcept { return spec_; }
  const Quiver& quiver() const noexcept { return spec_.quiver; }
  const std::string& name() const noexcept { return spec_.name; }
  std::uint32_t prime() const noexcept { return spec_.field; }
  ff::Field field() const { return ff::Field(spec_.field); }
  int num_vertices() const noexcept { return spec_.quiver.num_vertices(); }

  int dim() const noexcept { return static_cast<int>(basis_.size()); }
  const Path& basis(int i) const { return basis_.at(static_cast<std::size_t>(i)); }
  const std::vector<Path>& basis() const noexcept { return basis_; }
  std::optional<int> basis_index(const Path& p) const;
  // Basis indices of paths starting at v (resp. from v to w), in basis order.
  const std::vector<int>& basis_from(int v) const { return from_.at(static_cast<std::size_t>(v)); }
  std::vector<int> basis_between(int v, int w) const;
  // Position of basis element i among basis_from(source(i)).
  int position_in_source(int i) const { return pos_in_source_.at(static_cast<std::size_t>(i)); }

  // Verified nilpotency bound N: every path of length N is zero.
  int nilpotency() const noexcept { return nilpotency_; }
  int loewy_length() const noexcept { return loewy_; }

  // Normal form of b_i * arrow (zero vector if not composable).
  const SparseVec& times_arrow(int basis_idx, int arrow) const;
  SparseVec normal_form(const Path& p) const;
  SparseVec multiply(int i, int j) const;
  SparseVec multiply(const SparseVec& x, const SparseVec& y) const;

  // The opposite algebra (reversed quiver and relations); its opposite() is this object.
  std::shared_ptr<const Algebra> opposite() const;

  // Computed on first use; see selfinj.hpp.
  const SelfInjectivityReport& selfinjectivity() const;

  // Same presentation (used for AlgebraMismatch checks across separately built copies).
  bool same_as(const Algebra& other) const { return this == &other || spec_ == other.spec_; }

 private:
  static std::shared_ptr<Algebra> build_mutable(AlgebraSpec spec);
  void build_basis();

  AlgebraSpec spec_;
  std::vector<Path> basis_;
  std::map<Path, int> index_;
  std::vector<std::vector<int>> from_;
  std::vector<int> pos_in_source_;
  std::vector<std::vector<SparseVec>> times_arrow_;  // [basis][arrow]
  int nilpotency_ = 0;
  int loewy_ = 0;

  mutable std::once_flag selfinj_once_;
  mutable std::shared_ptr<const SelfInjectivityReport> selfinj_;

  mutable std::mutex op_mutex_;
  mutable std::shared_ptr<const Algebra> op_strong_;
  mutable std::weak_ptr<const Algebra> op_weak_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

}  // namespace qlab
