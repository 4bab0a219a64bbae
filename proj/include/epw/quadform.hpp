#pragma once

#include "epw/subspace.hpp"

namespace epw {

/// Quadratic form on k^dim via its symmetric Gram matrix (characteristic != 2,
/// so quadratic and symmetric-bilinear data are interchangeable).
class QuadraticForm {
 public:
  QuadraticForm() = default;
  QuadraticForm(const Field& F, Matrix gram);

  size_t dim() const { return gram_.rows(); }
  const Matrix& gram() const { return gram_; }

  Fel evaluate(const Field& F, const std::vector<Fel>& v) const;          // q(v)
  Fel pairing(const Field& F, const std::vector<Fel>& v, const std::vector<Fel>& w) const;

  size_t rank(const Field& F) const;
  size_t corank(const Field& F) const { return dim() - rank(F); }
  Subspace kernel(const Field& F) const;

  /// Restriction to a subspace, in the subspace's basis coordinates.
  QuadraticForm restrict_to(const Field& F, const Subspace& s) const;
  /// Gram under the substitution x = B^T y for rows of B (basis change / pullback).
  QuadraticForm pullback(const Field& F, const Matrix& rows) const;

  bool vanishes_on(const Field& F, const Subspace& s) const;

 private:
  Matrix gram_;
};

/// (kernel, induced nondegenerate form on a complement of the kernel).
std::pair<Subspace, QuadraticForm> corank_reduce(const Field& F, const QuadraticForm& q);

}  // namespace epw
