#pragma once

#include <unordered_map>

#include "epw/subspace.hpp"

namespace epw {

/// Monomials of fixed total degree in nvars variables, lex-enumerated, with
/// index lookup by packed exponent key.
class MonomialBasis {
 public:
  MonomialBasis(int nvars, int deg);

  size_t size() const { return exps_.size(); }
  const std::vector<uint8_t>& exponents(size_t i) const { return exps_[i]; }
  size_t index_of(const std::vector<uint8_t>& e) const;

  static uint64_t pack(const std::vector<uint8_t>& e);

 private:
  int nvars_, deg_;
  std::vector<std::vector<uint8_t>> exps_;
  std::unordered_map<uint64_t, size_t> pos_;
};

/// Homogeneous form: degree plus dense coefficients over MonomialBasis(nvars, degree).
struct Form {
  int degree = 0;
  std::vector<Fel> coeffs;
};

/// Finitely generated homogeneous ideal in nvars variables (coordinates on a
/// linear space such as a P^4 or P^5 fiber), with Hilbert-function evaluation
/// by graded linear algebra.
struct HomogeneousIdeal {
  int nvars = 0;
  std::vector<Form> gens;

  void add_generator(const Field& F, const Form& f);
};

/// Quadratic form on the coordinates as a degree-2 Form.
Form form_of_quadric(const Field& F, const Matrix& gram);
/// Linear form from a coefficient vector.
Form form_of_linear(const Field& F, const std::vector<Fel>& coeffs);

Fel evaluate_form(const Field& F, int nvars, const Form& f, const std::vector<Fel>& point);

/// Basis matrix of the degree-t piece I_t (rows = reduced spanning set).
Matrix ideal_degree_piece(const Field& F, const HomogeneousIdeal& I, int t);
size_t ideal_dim_in_degree(const Field& F, const HomogeneousIdeal& I, int t);

/// h(t) = dim S_t - dim I_t for t = 0..t_max.  Requires nvars <= 10 and
/// t_max <= 6 (size bound).
std::vector<long> hilbert_function(const Field& F, const HomogeneousIdeal& I, int t_max);

/// Degreewise span containment I_t subset J_t for t <= t_max.
bool ideal_contained_in(const Field& F, const HomogeneousIdeal& I, const HomogeneousIdeal& J,
                        int t_max);

/// Whether every generator vanishes on the parameterized linear subspace
/// im(rows): substitute the parameterization and test the zero form.
bool vanishes_on_linear(const Field& F, const HomogeneousIdeal& I, const Matrix& rows);

/// Restriction of a form along the linear parameterization x = y . rows.
Form restrict_form(const Field& F, int nvars_out, const Form& f, const Matrix& rows);

/// Degree-d piece of the colon (I : (l_1, ..., l_r)) for linear forms l_i:
/// {f in S_d : f l_i in I_{d+1} for all i}, as a row basis.
Matrix colon_by_linear_degree(const Field& F, const HomogeneousIdeal& I,
                              const std::vector<Form>& linears, int d);

}  // namespace epw
