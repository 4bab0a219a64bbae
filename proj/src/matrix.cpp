#include "epw/matrix.hpp"

namespace epw {

Matrix Matrix::identity(const Field& F, size_t n) {
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = F.one();
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::mul(const Field& F, const Matrix& o) const {
  if (cols_ != o.rows_) throw error("matrix product shape mismatch");
  Matrix r(rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const Fel& x = at(i, k);
      if (F.is_zero(x)) continue;
      for (size_t j = 0; j < o.cols_; ++j)
        r.at(i, j) = F.add(r.at(i, j), F.mul(x, o.at(k, j)));
    }
  return r;
}

Matrix Matrix::add(const Field& F, const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw error("matrix sum shape mismatch");
  Matrix r(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = F.add(e_[i], o.e_[i]);
  return r;
}

Matrix Matrix::sub(const Field& F, const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw error("matrix difference shape mismatch");
  Matrix r(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = F.sub(e_[i], o.e_[i]);
  return r;
}

Matrix Matrix::scale(const Field& F, const Fel& c) const {
  Matrix r(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = F.mul(e_[i], c);
  return r;
}

std::vector<Fel> Matrix::apply(const Field& F, const std::vector<Fel>& x) const {
  if (x.size() != cols_) throw error("matrix apply shape mismatch");
  std::vector<Fel> y(rows_, F.zero());
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (!F.is_zero(at(i, j))) y[i] = F.add(y[i], F.mul(at(i, j), x[j]));
  return y;
}

bool Matrix::is_zero(const Field& F) const {
  for (const Fel& x : e_)
    if (!F.is_zero(x)) return false;
  return true;
}

bool Matrix::equals(const Field& F, const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < e_.size(); ++i)
    if (!F.eq(e_[i], o.e_[i])) return false;
  return true;
}

bool Matrix::is_symmetric(const Field& F) const {
  if (rows_ != cols_) return false;
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = i + 1; j < cols_; ++j)
      if (!F.eq(at(i, j), at(j, i))) return false;
  return true;
}

Matrix Matrix::row_slice(size_t lo, size_t hi) const {
  Matrix r(hi - lo, cols_);
  for (size_t i = lo; i < hi; ++i)
    for (size_t j = 0; j < cols_; ++j) r.at(i - lo, j) = at(i, j);
  return r;
}

void Matrix::append_rows(const Matrix& o) {
  if (rows_ == 0 && cols_ == 0) cols_ = o.cols_;
  if (o.cols_ != cols_) throw error("append_rows shape mismatch");
  e_.insert(e_.end(), o.e_.begin(), o.e_.end());
  rows_ += o.rows_;
}

size_t rref_inplace(const Field& F, Matrix& m, std::vector<size_t>* pivots) {
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t piv = r;
    while (piv < m.rows() && F.is_zero(m.at(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (size_t j = c; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
    Fel d = F.inv(m.at(r, c));
    for (size_t j = c; j < m.cols(); ++j) m.at(r, j) = F.mul(m.at(r, j), d);
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || F.is_zero(m.at(i, c))) continue;
      Fel f = m.at(i, c);
      for (size_t j = c; j < m.cols(); ++j)
        m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(r, j)));
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

std::pair<Matrix, size_t> rref(const Field& F, const Matrix& m) {
  Matrix r = m;
  size_t rk = rref_inplace(F, r);
  return {r, rk};
}

size_t rank(const Field& F, const Matrix& m) {
  Matrix r = m;
  return rref_inplace(F, r);
}

Matrix kernel_basis(const Field& F, const Matrix& m) {
  Matrix r = m;
  std::vector<size_t> piv;
  rref_inplace(F, r, &piv);
  std::vector<bool> is_piv(m.cols(), false);
  for (size_t c : piv) is_piv[c] = true;
  std::vector<size_t> free_cols;
  for (size_t c = 0; c < m.cols(); ++c)
    if (!is_piv[c]) free_cols.push_back(c);
  Matrix K(free_cols.size(), m.cols());
  for (size_t k = 0; k < free_cols.size(); ++k) {
    size_t fc = free_cols[k];
    K.at(k, fc) = F.one();
    for (size_t i = 0; i < piv.size(); ++i) K.at(k, piv[i]) = F.neg(r.at(i, fc));
  }
  // already echelon up to row order; normalize to RREF for canonical output
  rref_inplace(F, K);
  return K;
}

std::optional<std::vector<Fel>> solve(const Field& F, const Matrix& m, const std::vector<Fel>& b) {
  if (b.size() != m.rows()) throw error("solve shape mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  std::vector<size_t> piv;
  size_t rk = rref_inplace(F, aug, &piv);
  for (size_t i = 0; i < rk; ++i)
    if (piv[i] == m.cols()) return std::nullopt;  // inconsistent
  std::vector<Fel> x(m.cols(), F.zero());
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug.at(i, m.cols());
  return x;
}

Matrix inverse(const Field& F, const Matrix& m) {
  if (m.rows() != m.cols()) throw error("inverse of non-square matrix");
  size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = F.one();
  }
  size_t rk = rref_inplace(F, aug);
  if (rk != n) throw error("matrix not invertible");
  Matrix r(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) r.at(i, j) = aug.at(i, n + j);
  return r;
}

Fel Matrix::det(const Field& F) const {
  if (rows_ != cols_) throw error("det of non-square matrix");
  Matrix m = *this;
  Fel d = F.one();
  size_t n = rows_;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && F.is_zero(m.at(piv, c))) ++piv;
    if (piv == n) return F.zero();
    if (piv != c) {
      for (size_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(c, j));
      d = F.neg(d);
    }
    d = F.mul(d, m.at(c, c));
    Fel dv = F.inv(m.at(c, c));
    for (size_t i = c + 1; i < n; ++i) {
      if (F.is_zero(m.at(i, c))) continue;
      Fel f = F.mul(m.at(i, c), dv);
      for (size_t j = c; j < n; ++j) m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(c, j)));
    }
  }
  return d;
}

}  // namespace epw
