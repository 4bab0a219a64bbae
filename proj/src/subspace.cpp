#include "epw/subspace.hpp"

namespace epw {

Subspace::Subspace(const Field& F, size_t ambient, const Matrix& gens) : ambient_(ambient) {
  if (gens.cols() != ambient && gens.rows() != 0)
    throw error("subspace generator width does not match ambient dimension");
  Matrix m = gens;
  size_t rk = rref_inplace(F, m);
  basis_ = m.row_slice(0, rk);
  basis_.cols_ = ambient;
  if (basis_.rows() == 0) basis_ = Matrix(0, ambient);
}

Subspace Subspace::zero(size_t ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix(0, ambient);
  return s;
}

Subspace Subspace::full(const Field& F, size_t ambient) {
  return Subspace(F, ambient, Matrix::identity(F, ambient));
}

Subspace Subspace::span_of(const Field& F, const std::vector<std::vector<Fel>>& vectors) {
  if (vectors.empty()) throw error("span_of needs at least one vector");
  Matrix m(vectors.size(), vectors[0].size());
  for (size_t i = 0; i < vectors.size(); ++i)
    for (size_t j = 0; j < vectors[i].size(); ++j) m.at(i, j) = vectors[i][j];
  return Subspace(F, vectors[0].size(), m);
}

std::vector<Fel> Subspace::basis_row(size_t i) const {
  std::vector<Fel> v(ambient_);
  for (size_t j = 0; j < ambient_; ++j) v[j] = basis_.at(i, j);
  return v;
}

bool Subspace::contains(const Field& F, const std::vector<Fel>& v) const {
  return coordinates(F, v).has_value();
}

std::optional<std::vector<Fel>> Subspace::coordinates(const Field& F,
                                                      const std::vector<Fel>& v) const {
  if (v.size() != ambient_) throw error("vector/ambient mismatch");
  // reduce v against the RREF basis; residual must vanish
  std::vector<Fel> w = v;
  std::vector<Fel> coef(dim(), F.zero());
  for (size_t i = 0; i < dim(); ++i) {
    size_t pc = 0;
    while (pc < ambient_ && F.is_zero(basis_.at(i, pc))) ++pc;
    if (pc == ambient_) continue;
    if (F.is_zero(w[pc])) continue;
    Fel f = w[pc];  // pivot entries are 1 in RREF
    coef[i] = f;
    for (size_t j = pc; j < ambient_; ++j) w[j] = F.sub(w[j], F.mul(f, basis_.at(i, j)));
  }
  for (const Fel& x : w)
    if (!F.is_zero(x)) return std::nullopt;
  return coef;
}

bool Subspace::contains(const Field& F, const Subspace& other) const {
  for (size_t i = 0; i < other.dim(); ++i)
    if (!contains(F, other.basis_row(i))) return false;
  return true;
}

bool Subspace::equals(const Field& F, const Subspace& o) const {
  return ambient_ == o.ambient_ && basis_.equals(F, o.basis_);
}

Subspace intersect(const Field& F, const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw error("intersect: ambient mismatch");
  // rows of u.basis stacked on v.basis; kernel of the transpose pairing trick:
  // x in U cap V  <=>  x = a . Bu = b . Bv, solve [Bu^T | -Bv^T] (a,b)^T = 0.
  size_t n = u.ambient_dim(), du = u.dim(), dv = v.dim();
  Matrix sys(n, du + dv);
  for (size_t j = 0; j < n; ++j) {
    for (size_t i = 0; i < du; ++i) sys.at(j, i) = u.basis().at(i, j);
    for (size_t i = 0; i < dv; ++i) sys.at(j, du + i) = F.neg(v.basis().at(i, j));
  }
  Matrix K = kernel_basis(F, sys);
  Matrix gens(K.rows(), n);
  for (size_t r = 0; r < K.rows(); ++r)
    for (size_t j = 0; j < n; ++j) {
      Fel acc = F.zero();
      for (size_t i = 0; i < du; ++i) acc = F.add(acc, F.mul(K.at(r, i), u.basis().at(i, j)));
      gens.at(r, j) = acc;
    }
  return Subspace(F, n, gens);
}

Subspace sum(const Field& F, const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw error("sum: ambient mismatch");
  Matrix m = u.basis();
  m.append_rows(v.basis());
  return Subspace(F, u.ambient_dim(), m);
}

Subspace annihilator(const Field& F, const Subspace& u) {
  // phi with  B phi^T = 0, i.e. right kernel of the basis matrix
  return Subspace(F, u.ambient_dim(), kernel_basis(F, u.basis()));
}

}  // namespace epw
