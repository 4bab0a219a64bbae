#include "epw/quadform.hpp"

namespace epw {

QuadraticForm::QuadraticForm(const Field& F, Matrix gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols()) throw error("gram matrix must be square");
  if (!gram_.is_symmetric(F)) throw error("gram matrix must be symmetric");
}

Fel QuadraticForm::evaluate(const Field& F, const std::vector<Fel>& v) const {
  return pairing(F, v, v);
}

Fel QuadraticForm::pairing(const Field& F, const std::vector<Fel>& v,
                           const std::vector<Fel>& w) const {
  if (v.size() != dim() || w.size() != dim()) throw error("quadratic form arity mismatch");
  Fel acc = F.zero();
  for (size_t i = 0; i < dim(); ++i) {
    if (F.is_zero(v[i])) continue;
    Fel row = F.zero();
    for (size_t j = 0; j < dim(); ++j)
      if (!F.is_zero(w[j])) row = F.add(row, F.mul(gram_.at(i, j), w[j]));
    acc = F.add(acc, F.mul(v[i], row));
  }
  return acc;
}

size_t QuadraticForm::rank(const Field& F) const { return epw::rank(F, gram_); }

Subspace QuadraticForm::kernel(const Field& F) const {
  return Subspace(F, dim(), kernel_basis(F, gram_));
}

QuadraticForm QuadraticForm::pullback(const Field& F, const Matrix& rows) const {
  if (rows.cols() != dim()) throw error("pullback shape mismatch");
  Matrix g = rows.mul(F, gram_).mul(F, rows.transpose());
  return QuadraticForm(F, g);
}

QuadraticForm QuadraticForm::restrict_to(const Field& F, const Subspace& s) const {
  if (s.ambient_dim() != dim()) throw error("restriction ambient mismatch");
  return pullback(F, s.basis());
}

bool QuadraticForm::vanishes_on(const Field& F, const Subspace& s) const {
  return restrict_to(F, s).gram().is_zero(F);
}

std::pair<Subspace, QuadraticForm> corank_reduce(const Field& F, const QuadraticForm& q) {
  Subspace K = q.kernel(F);
  // a coordinate complement of the kernel: skip the kernel's pivot columns
  std::vector<bool> in_piv(q.dim(), false);
  for (size_t i = 0; i < K.dim(); ++i) {
    size_t pc = 0;
    while (pc < q.dim() && F.is_zero(K.basis().at(i, pc))) ++pc;
    in_piv[pc] = true;
  }
  std::vector<size_t> comp;
  for (size_t j = 0; j < q.dim(); ++j)
    if (!in_piv[j]) comp.push_back(j);
  Matrix rows(comp.size(), q.dim());
  for (size_t i = 0; i < comp.size(); ++i) rows.at(i, comp[i]) = F.one();
  QuadraticForm reduced = q.pullback(F, rows);
  if (reduced.corank(F) != 0) throw error("corank_reduce: reduction left a degenerate form");
  return {K, reduced};
}

}  // namespace epw
