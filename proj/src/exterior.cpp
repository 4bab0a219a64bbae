#include "epw/exterior.hpp"

#include <bit>
#include <map>

namespace epw {

namespace ext {

static SubsetTables build_tables(int n) {
  SubsetTables t;
  t.n = n;
  for (int k = 0; k <= n; ++k)
    for (auto& row : t.pos[k]) row = -1;
  for (uint8_t m = 0; m < (1u << n); ++m) {
    int k = std::popcount(m);
    t.masks[k].push_back(m);
  }
  // within fixed popcount, numeric order of masks equals lex order of the
  // increasing index tuples? it does not (e.g. {0,3} = 9 > {1,2} = 6), so sort.
  for (int k = 0; k <= n; ++k) {
    auto key = [](uint8_t m) {
      // pack indices most-significant-first for tuple-lex comparison
      uint32_t v = 0;
      for (int i = 0; i < 8; ++i)
        if (m & (1 << i)) v = (v << 3) | uint32_t(i + 1);
      return v;
    };
    std::sort(t.masks[k].begin(), t.masks[k].end(),
              [&](uint8_t a, uint8_t b) { return key(a) < key(b); });
    for (size_t i = 0; i < t.masks[k].size(); ++i) t.pos[k][t.masks[k][i]] = int16_t(i);
  }
  return t;
}

const SubsetTables& SubsetTables::get(int n) {
  static const SubsetTables t5 = build_tables(5);
  static const SubsetTables t6 = build_tables(6);
  if (n == 5) return t5;
  if (n == 6) return t6;
  throw error("subset tables only built for n = 5, 6");
}

int wedge_sign(uint8_t a, uint8_t b) {
  if (a & b) return 0;
  // count pairs (i in a, j in b) with i > j
  int inv = 0;
  for (int j = 0; j < 8; ++j)
    if (b & (1 << j)) inv += std::popcount(uint8_t(a >> (j + 1)));
  return (inv & 1) ? -1 : 1;
}

}  // namespace ext

using ext::SubsetTables;

Multivector::Multivector(int degree, std::vector<Fel> coeffs)
    : degree_(degree), c_(std::move(coeffs)) {
  if (degree < 1 || degree > 6) throw error("multivector degree out of range");
  if (c_.size() != ext::binom(6, degree)) throw error("multivector coefficient count mismatch");
}

Multivector Multivector::basis(const Field& F, std::initializer_list<int> idx) {
  uint8_t m = 0;
  for (int i : idx) {
    if (i < 0 || i > 5 || (m & (1 << i))) throw error("bad basis index set");
    m |= 1 << i;
  }
  Multivector v(int(idx.size()), F);
  v.c_[SubsetTables::get(6).pos[idx.size()][m]] = F.one();
  return v;
}

Multivector Multivector::from_vector(const Field& F, const std::vector<Fel>& v6) {
  if (v6.size() != 6) throw error("from_vector expects 6 coordinates");
  Multivector v(1, F);
  v.c_ = v6;
  return v;
}

bool Multivector::is_zero(const Field& F) const {
  for (const Fel& x : c_)
    if (!F.is_zero(x)) return false;
  return true;
}

Multivector Multivector::add(const Field& F, const Multivector& o) const {
  if (degree_ != o.degree_) throw error("degree mismatch in multivector sum");
  Multivector r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = F.add(c_[i], o.c_[i]);
  return r;
}

Multivector Multivector::scale(const Field& F, const Fel& s) const {
  Multivector r = *this;
  for (Fel& x : r.c_) x = F.mul(x, s);
  return r;
}

Multivector wedge(const Field& F, const Multivector& a, const Multivector& b) {
  int k = a.degree(), l = b.degree();
  if (k + l > 6) throw error("wedge degree overflow");
  const auto& T = SubsetTables::get(6);
  Multivector r(k + l, F);
  for (size_t i = 0; i < a.dim(); ++i) {
    if (F.is_zero(a[i])) continue;
    uint8_t ma = T.masks[k][i];
    for (size_t j = 0; j < b.dim(); ++j) {
      if (F.is_zero(b[j])) continue;
      uint8_t mb = T.masks[l][j];
      int s = ext::wedge_sign(ma, mb);
      if (!s) continue;
      Fel term = F.mul(a[i], b[j]);
      if (s < 0) term = F.neg(term);
      size_t p = T.pos[k + l][ma | mb];
      r[p] = F.add(r[p], term);
    }
  }
  return r;
}

Fel volume6(const Field& F, const Multivector& top) {
  if (top.degree() != 6) throw error("volume of non-top-degree element");
  (void)F;
  return top[0];
}

Fel symplectic_pairing(const Field& F, const Multivector& a, const Multivector& b) {
  if (a.degree() != 3 || b.degree() != 3) throw error("symplectic pairing needs degree 3");
  const auto& T = SubsetTables::get(6);
  Fel acc = F.zero();
  for (size_t i = 0; i < 20; ++i) {
    if (F.is_zero(a[i])) continue;
    uint8_t ma = T.masks[3][i];
    uint8_t mc = uint8_t(0x3f & ~ma);
    size_t j = T.pos[3][mc];
    if (F.is_zero(b[j])) continue;
    Fel term = F.mul(a[i], b[j]);
    if (ext::wedge_sign(ma, mc) < 0) term = F.neg(term);
    acc = F.add(acc, term);
  }
  return acc;
}

Matrix omega_gram(const Field& F) {
  const auto& T = SubsetTables::get(6);
  Matrix g(20, 20);
  for (size_t i = 0; i < 20; ++i) {
    uint8_t ma = T.masks[3][i];
    uint8_t mc = uint8_t(0x3f & ~ma);
    size_t j = T.pos[3][mc];
    g.at(i, j) = ext::wedge_sign(ma, mc) > 0 ? F.one() : F.neg(F.one());
  }
  return g;
}

Subspace wedge_map_image(const Field& F, const std::vector<Fel>& v) {
  if (v.size() != 6) throw error("wedge_map_image expects a vector of V6");
  bool nz = false;
  for (const Fel& x : v) nz = nz || !F.is_zero(x);
  if (!nz) throw error("wedge_map_image of the zero vector");
  const auto& T = SubsetTables::get(6);
  Matrix gens(15, 20);
  for (size_t j = 0; j < 15; ++j) {
    uint8_t mb = T.masks[2][j];
    for (int l = 0; l < 6; ++l) {
      if (mb & (1 << l)) continue;
      if (F.is_zero(v[l])) continue;
      int s = ext::wedge_sign(uint8_t(1 << l), mb);
      Fel c = s > 0 ? v[l] : F.neg(v[l]);
      gens.at(j, T.pos[3][mb | (1 << l)]) = c;
    }
  }
  return Subspace(F, 20, gens);
}

std::vector<Fel> wedge3_rows(const Field& F, const std::vector<Fel>& r0,
                             const std::vector<Fel>& r1, const std::vector<Fel>& r2) {
  const auto& T = SubsetTables::get(6);
  std::vector<Fel> out(20, F.zero());
  for (size_t t = 0; t < 20; ++t) {
    uint8_t m = T.masks[3][t];
    int idx[3], c = 0;
    for (int i = 0; i < 6; ++i)
      if (m & (1 << i)) idx[c++] = i;
    // 3x3 minor determinant on columns idx
    const std::vector<Fel>* R[3] = {&r0, &r1, &r2};
    Fel det = F.zero();
    static const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
    for (int p = 0; p < 6; ++p) {
      Fel term = F.mul(F.mul((*R[0])[idx[perm[p][0]]], (*R[1])[idx[perm[p][1]]]),
                       (*R[2])[idx[perm[p][2]]]);
      det = p < 3 ? F.add(det, term) : F.sub(det, term);
    }
    out[t] = det;
  }
  return out;
}

Subspace wedge3_of_hyperplane(const Field& F, const std::vector<Fel>& phi) {
  if (phi.size() != 6) throw error("wedge3_of_hyperplane expects a dual vector of V6");
  bool nz = false;
  for (const Fel& x : phi) nz = nz || !F.is_zero(x);
  if (!nz) throw error("wedge3_of_hyperplane of the zero functional");
  Matrix m(1, 6);
  for (size_t j = 0; j < 6; ++j) m.at(0, j) = phi[j];
  Matrix ker = kernel_basis(F, m);  // 5 x 6
  if (ker.rows() != 5) throw error("hyperplane kernel has unexpected dimension");
  Matrix gens(10, 20);
  std::vector<std::vector<Fel>> rows(5);
  for (size_t i = 0; i < 5; ++i) {
    rows[i].resize(6);
    for (size_t j = 0; j < 6; ++j) rows[i][j] = ker.at(i, j);
  }
  size_t g = 0;
  for (size_t i = 0; i < 5; ++i)
    for (size_t j = i + 1; j < 5; ++j)
      for (size_t k = j + 1; k < 5; ++k) {
        auto w = wedge3_rows(F, rows[i], rows[j], rows[k]);
        for (size_t c = 0; c < 20; ++c) gens.at(g, c) = w[c];
        ++g;
      }
  return Subspace(F, 20, gens);
}

DecomposabilityResult is_decomposable(const Field& F, const Multivector& omega) {
  if (omega.degree() != 3) throw error("decomposability test expects degree 3");
  if (omega.is_zero(F)) throw error("decomposability test on the zero vector");
  const auto& T = SubsetTables::get(6);
  // rows: e_l ^ omega in wedge^4 coordinates
  Matrix m(6, 15);
  for (int l = 0; l < 6; ++l)
    for (size_t t = 0; t < 20; ++t) {
      if (F.is_zero(omega[t])) continue;
      uint8_t mt = T.masks[3][t];
      if (mt & (1 << l)) continue;
      int s = ext::wedge_sign(uint8_t(1 << l), mt);
      Fel c = s > 0 ? omega[t] : F.neg(omega[t]);
      m.at(l, T.pos[4][mt | (1 << l)]) = c;
    }
  Matrix mt = m.transpose();  // kernel of v -> v ^ omega means rows as variables
  Subspace ker(F, 6, kernel_basis(F, mt));
  DecomposabilityResult r;
  r.kernel = ker;
  r.decomposable = (ker.dim() == 3);
  return r;
}

}  // namespace epw
