#include "epw/ideals.hpp"

#include <functional>

namespace epw {

MonomialBasis::MonomialBasis(int nvars, int deg) : nvars_(nvars), deg_(deg) {
  if (nvars < 1 || nvars > 10) throw error("monomial basis supports 1..10 variables");
  if (deg < 0 || deg > 7) throw error("monomial basis supports degrees 0..7");
  std::vector<uint8_t> cur(nvars, 0);
  // lex enumeration by recursive distribution of the degree
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == nvars - 1) {
      cur[var] = uint8_t(left);
      exps_.push_back(cur);
      return;
    }
    for (int d = left; d >= 0; --d) {
      cur[var] = uint8_t(d);
      rec(var + 1, left - d);
    }
  };
  rec(0, deg);
  for (size_t i = 0; i < exps_.size(); ++i) pos_[pack(exps_[i])] = i;
}

uint64_t MonomialBasis::pack(const std::vector<uint8_t>& e) {
  uint64_t k = 0;
  for (uint8_t x : e) k = (k << 3) | uint64_t(x & 7);
  return k;
}

size_t MonomialBasis::index_of(const std::vector<uint8_t>& e) const {
  auto it = pos_.find(pack(e));
  if (it == pos_.end()) throw error("monomial not in basis");
  return it->second;
}

void HomogeneousIdeal::add_generator(const Field& F, const Form& f) {
  MonomialBasis mb(nvars, f.degree);
  if (f.coeffs.size() != mb.size()) throw error("form coefficient count mismatch");
  for (const Fel& c : f.coeffs)
    if (!F.is_zero(c)) {
      gens.push_back(f);
      return;
    }
  // zero forms are dropped
}

Form form_of_quadric(const Field& F, const Matrix& gram) {
  int n = int(gram.rows());
  MonomialBasis mb(n, 2);
  Form f;
  f.degree = 2;
  f.coeffs.assign(mb.size(), F.zero());
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::vector<uint8_t> e(n, 0);
      e[i] += 1;
      e[j] += 1;
      Fel c = gram.at(i, j);
      if (i != j) c = F.add(c, gram.at(j, i));
      f.coeffs[mb.index_of(e)] = c;
    }
  return f;
}

Form form_of_linear(const Field& F, const std::vector<Fel>& coeffs) {
  (void)F;
  Form f;
  f.degree = 1;
  f.coeffs = coeffs;
  return f;
}

Fel evaluate_form(const Field& F, int nvars, const Form& f, const std::vector<Fel>& point) {
  MonomialBasis mb(nvars, f.degree);
  Fel acc = F.zero();
  for (size_t i = 0; i < mb.size(); ++i) {
    if (F.is_zero(f.coeffs[i])) continue;
    Fel m = f.coeffs[i];
    const auto& e = mb.exponents(i);
    for (int v = 0; v < nvars; ++v)
      for (int k = 0; k < e[v]; ++k) m = F.mul(m, point[v]);
    acc = F.add(acc, m);
  }
  return acc;
}

namespace {

// multiply a form by a monomial, landing in the target basis
void add_monomial_multiple(const Field& F, int nvars, const Form& g,
                           const std::vector<uint8_t>& mono, const MonomialBasis& target,
                           Matrix& out, size_t row) {
  MonomialBasis mb(nvars, g.degree);
  for (size_t i = 0; i < mb.size(); ++i) {
    if (F.is_zero(g.coeffs[i])) continue;
    std::vector<uint8_t> e = mb.exponents(i);
    for (int v = 0; v < nvars; ++v) e[v] = uint8_t(e[v] + mono[v]);
    out.at(row, target.index_of(e)) = g.coeffs[i];
  }
}

}  // namespace

Matrix ideal_degree_piece(const Field& F, const HomogeneousIdeal& I, int t) {
  MonomialBasis target(I.nvars, t);
  size_t nrows = 0;
  for (size_t g = 0; g < I.gens.size(); ++g) {
    int md = t - I.gens[g].degree;
    if (md < 0) continue;
    MonomialBasis mons(I.nvars, md);
    nrows += mons.size();
  }
  Matrix m(nrows, target.size());
  size_t r = 0;
  for (size_t g = 0; g < I.gens.size(); ++g) {
    int md = t - I.gens[g].degree;
    if (md < 0) continue;
    MonomialBasis mons(I.nvars, md);
    for (size_t k = 0; k < mons.size(); ++k)
      add_monomial_multiple(F, I.nvars, I.gens[g], mons.exponents(k), target, m, r++);
  }
  size_t rk = rref_inplace(F, m);
  return m.row_slice(0, rk);
}

size_t ideal_dim_in_degree(const Field& F, const HomogeneousIdeal& I, int t) {
  return ideal_degree_piece(F, I, t).rows();
}

std::vector<long> hilbert_function(const Field& F, const HomogeneousIdeal& I, int t_max) {
  if (I.nvars > 10) throw error("hilbert_function size bound: ambient dimension 9");
  if (t_max > 6) throw error("hilbert_function size bound: t_max 6");
  std::vector<long> h;
  for (int t = 0; t <= t_max; ++t) {
    MonomialBasis mb(I.nvars, t);
    h.push_back(long(mb.size()) - long(ideal_dim_in_degree(F, I, t)));
  }
  return h;
}

bool ideal_contained_in(const Field& F, const HomogeneousIdeal& I, const HomogeneousIdeal& J,
                        int t_max) {
  for (int t = 0; t <= t_max; ++t) {
    Matrix ji = ideal_degree_piece(F, J, t);
    Matrix both = ji;
    both.append_rows(ideal_degree_piece(F, I, t));
    if (rank(F, both) != ji.rows()) return false;
  }
  return true;
}

Form restrict_form(const Field& F, int nvars_out, const Form& f, const Matrix& rows) {
  // substitute x_i = sum_j y_j rows(j, i); expand by distributing over the
  // monomials of f
  int nin = int(rows.cols());
  MonomialBasis src(nin, f.degree);
  MonomialBasis dst(nvars_out, f.degree);
  Form out;
  out.degree = f.degree;
  out.coeffs.assign(dst.size(), F.zero());
  // expand each source monomial as a product of linear forms in y
  for (size_t i = 0; i < src.size(); ++i) {
    if (F.is_zero(f.coeffs[i])) continue;
    const auto& e = src.exponents(i);
    // polynomial in y built by repeated multiplication
    std::vector<std::pair<std::vector<uint8_t>, Fel>> poly = {
        {std::vector<uint8_t>(nvars_out, 0), f.coeffs[i]}};
    for (int v = 0; v < nin; ++v)
      for (int k = 0; k < e[v]; ++k) {
        std::vector<std::pair<std::vector<uint8_t>, Fel>> next;
        for (const auto& term : poly)
          for (int j = 0; j < nvars_out; ++j) {
            if (F.is_zero(rows.at(j, v))) continue;
            auto e2 = term.first;
            e2[j] += 1;
            next.push_back({std::move(e2), F.mul(term.second, rows.at(j, v))});
          }
        poly = std::move(next);
      }
    for (const auto& term : poly) {
      size_t idx = dst.index_of(term.first);
      out.coeffs[idx] = F.add(out.coeffs[idx], term.second);
    }
  }
  return out;
}

bool vanishes_on_linear(const Field& F, const HomogeneousIdeal& I, const Matrix& rows) {
  for (const Form& g : I.gens) {
    Form r = restrict_form(F, int(rows.rows()), g, rows);
    for (const Fel& c : r.coeffs)
      if (!F.is_zero(c)) return false;
  }
  return true;
}

Matrix colon_by_linear_degree(const Field& F, const HomogeneousIdeal& I,
                              const std::vector<Form>& linears, int d) {
  MonomialBasis md(I.nvars, d);
  MonomialBasis md1(I.nvars, d + 1);
  // I_{d+1} as an RREF row space with pivot bookkeeping for reduction
  Matrix Ipiece = ideal_degree_piece(F, I, d + 1);
  std::vector<size_t> piv(Ipiece.rows());
  for (size_t i = 0; i < Ipiece.rows(); ++i) {
    size_t c = 0;
    while (c < Ipiece.cols() && F.is_zero(Ipiece.at(i, c))) ++c;
    piv[i] = c;
  }
  auto reduce = [&](std::vector<Fel>& vec) {
    for (size_t i = 0; i < Ipiece.rows(); ++i) {
      Fel f = vec[piv[i]];
      if (F.is_zero(f)) continue;
      for (size_t c = piv[i]; c < md1.size(); ++c)
        vec[c] = F.sub(vec[c], F.mul(f, Ipiece.at(i, c)));
    }
  };
  // condition matrix: for each monomial m of degree d, concatenate the
  // residuals of m * l_i modulo I_{d+1}
  size_t ncond = linears.size() * md1.size();
  Matrix cond(ncond, md.size());
  for (size_t k = 0; k < md.size(); ++k) {
    const auto& e = md.exponents(k);
    for (size_t li = 0; li < linears.size(); ++li) {
      std::vector<Fel> prod(md1.size(), F.zero());
      for (int v = 0; v < I.nvars; ++v) {
        if (F.is_zero(linears[li].coeffs[v])) continue;
        auto e2 = e;
        e2[v] += 1;
        prod[md1.index_of(e2)] = linears[li].coeffs[v];
      }
      reduce(prod);
      for (size_t c = 0; c < md1.size(); ++c) cond.at(li * md1.size() + c, k) = prod[c];
    }
  }
  return kernel_basis(F, cond);
}

}  // namespace epw
