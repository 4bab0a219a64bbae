#pragma once

#include "epw/matrix.hpp"

namespace epw {

/// Linear subspace of a coordinate space, canonicalized to an RREF basis at
/// construction so that equality of subspaces is entrywise basis equality.
class Subspace {
 public:
  Subspace() = default;
  /// Span of the rows of `gens` inside k^ambient.
  Subspace(const Field& F, size_t ambient, const Matrix& gens);
  static Subspace zero(size_t ambient);
  static Subspace full(const Field& F, size_t ambient);
  static Subspace span_of(const Field& F, const std::vector<std::vector<Fel>>& vectors);

  size_t ambient_dim() const { return ambient_; }
  size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  std::vector<Fel> basis_row(size_t i) const;

  bool contains(const Field& F, const std::vector<Fel>& v) const;
  bool contains(const Field& F, const Subspace& other) const;
  bool equals(const Field& F, const Subspace& o) const;

  /// Coordinates of v in this basis; nullopt if v is outside the subspace.
  std::optional<std::vector<Fel>> coordinates(const Field& F, const std::vector<Fel>& v) const;

 private:
  size_t ambient_ = 0;
  Matrix basis_;  // RREF, rows independent
};

Subspace intersect(const Field& F, const Subspace& u, const Subspace& v);
Subspace sum(const Field& F, const Subspace& u, const Subspace& v);
/// Annihilator in the dual space: {phi : phi(u) = 0 for all u}.
Subspace annihilator(const Field& F, const Subspace& u);

}  // namespace epw
