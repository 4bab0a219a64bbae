#include "epw/lagrangian.hpp"

#include "epw/projective.hpp"
#include "epw/rng.hpp"

#include <array>
#include <optional>
#include <sstream>

namespace epw {

namespace chart {

size_t L_coord(size_t r) { return r; }  // triples containing index 0 come first in lex order

std::pair<size_t, int> Lprime_dual_coord(size_t r) {
  const auto& T = ext::SubsetTables::get(6);
  uint8_t m = T.masks[3][r];
  uint8_t c = uint8_t(0x3f & ~m);
  return {size_t(T.pos[3][c]), ext::wedge_sign(m, c)};
}

}  // namespace chart

LagrangianInstance graph_lagrangian(const Field& F, const Matrix& m) {
  if (m.rows() != 10 || m.cols() != 10) throw error("graph chart expects a 10x10 matrix");
  if (!m.is_symmetric(F)) throw error("graph chart expects a symmetric matrix");
  Matrix gens(10, 20);
  for (size_t r = 0; r < 10; ++r) {
    gens.at(r, chart::L_coord(r)) = F.one();
    for (size_t s = 0; s < 10; ++s) {
      auto [pos, sig] = chart::Lprime_dual_coord(s);
      Fel v = m.at(r, s);
      if (sig < 0) v = F.neg(v);
      gens.at(r, pos) = F.add(gens.at(r, pos), v);
    }
  }
  LagrangianInstance inst(F, Subspace(F, 20, gens));
  if (!validate_lagrangian(F, inst.A))
    throw error("graph chart produced a non-Lagrangian subspace (internal)");
  inst.is_lagrangian = true;
  inst.provenance = "graph";
  return inst;
}

bool validate_lagrangian(const Field& F, const Subspace& A) {
  if (A.ambient_dim() != 20 || A.dim() != 10)
    throw error("validate_lagrangian expects a 10-dimensional subspace of a 20-dimensional space");
  const auto& T = ext::SubsetTables::get(6);
  for (size_t i = 0; i < 10; ++i)
    for (size_t j = i + 1; j < 10; ++j) {
      Fel acc = F.zero();
      for (size_t t = 0; t < 20; ++t) {
        const Fel& u = A.basis().at(i, t);
        if (F.is_zero(u)) continue;
        uint8_t mc = uint8_t(0x3f & ~T.masks[3][t]);
        size_t tc = size_t(T.pos[3][mc]);
        Fel term = F.mul(u, A.basis().at(j, tc));
        if (ext::wedge_sign(T.masks[3][t], mc) < 0) term = F.neg(term);
        acc = F.add(acc, term);
      }
      if (!F.is_zero(acc)) return false;
    }
  return true;
}

DualLagrangian dual(const LagrangianInstance& inst) {
  if (!inst.is_lagrangian && !validate_lagrangian(inst.field, inst.A))
    throw error("dual() of a non-validated Lagrangian");
  return DualLagrangian{annihilator(inst.field, inst.A)};
}

Subspace omega_identification(const Field& F, const Subspace& dual_subspace) {
  if (dual_subspace.ambient_dim() != 20) throw error("omega identification expects a dual 20-space");
  const auto& T = ext::SubsetTables::get(6);
  // z = Omega . phi: z_T = sign(T, T^c) phi_{T^c}
  Matrix gens(dual_subspace.dim(), 20);
  for (size_t i = 0; i < dual_subspace.dim(); ++i)
    for (size_t t = 0; t < 20; ++t) {
      uint8_t mc = uint8_t(0x3f & ~T.masks[3][t]);
      size_t tc = size_t(T.pos[3][mc]);
      Fel v = dual_subspace.basis().at(i, tc);
      if (ext::wedge_sign(T.masks[3][t], mc) < 0) v = F.neg(v);
      gens.at(i, t) = v;
    }
  return Subspace(F, 20, gens);
}

LagrangianInstance random_instance(uint64_t seed, const Field& F) {
  SplitMix64 rng(seed);
  Matrix m(10, 10);
  for (size_t i = 0; i < 10; ++i)
    for (size_t j = i; j < 10; ++j) {
      Fel v;
      if (F.finite()) {
        v = F.element_from_index(rng.below(F.size()));
      } else {
        v = F.from_int(long(rng.below(19)) - 9);
      }
      m.at(i, j) = v;
      m.at(j, i) = v;
    }
  LagrangianInstance inst = graph_lagrangian(F, m);
  inst.seed = seed;
  inst.seeded = true;
  inst.provenance = "seed:" + std::to_string(seed);
  return inst;
}

// ---------------------------------------------------------------- NDV scan

namespace {

// Local GF(p^3) arithmetic for the effort-3 scan.  Elements are cubic
// residues a0 + a1 x + a2 x^2 modulo a monic irreducible found by scanning.
struct Fp3 {
  uint32_t p;
  uint32_t c0, c1, c2;  // x^3 = c0 + c1 x + c2 x^2

  using E = std::array<uint32_t, 3>;

  explicit Fp3(uint32_t p_) : p(p_) {
    for (uint32_t a2 = 0;; ++a2)
      for (uint32_t a1 = 0; a1 < p; ++a1)
        for (uint32_t a0 = 1; a0 < p; ++a0) {
          // x^3 + a2 x^2 + a1 x + a0 irreducible iff it has no root mod p
          bool root = false;
          for (uint32_t t = 0; t < p && !root; ++t) {
            uint64_t v = ((uint64_t(t) * t % p) * t + uint64_t(a2) * t % p * t + uint64_t(a1) * t + a0) % p;
            root = (v == 0);
          }
          if (!root) {
            c0 = (p - a0) % p;
            c1 = (p - a1) % p;
            c2 = (p - a2) % p;
            return;
          }
        }
  }

  E zero() const { return {0, 0, 0}; }
  E from(uint32_t a) const { return {a % p, 0, 0}; }
  bool is_zero(const E& a) const { return !a[0] && !a[1] && !a[2]; }
  E add(const E& a, const E& b) const {
    return {(a[0] + b[0]) % p, (a[1] + b[1]) % p, (a[2] + b[2]) % p};
  }
  E neg(const E& a) const {
    return {a[0] ? p - a[0] : 0, a[1] ? p - a[1] : 0, a[2] ? p - a[2] : 0};
  }
  E sub(const E& a, const E& b) const { return add(a, neg(b)); }
  E mul(const E& a, const E& b) const {
    uint64_t d[5] = {0, 0, 0, 0, 0};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) d[i + j] += uint64_t(a[i]) * b[j];
    // reduce x^4, x^3
    d[1] += d[4] % p * c0 % p;  // x^4 = x * x^3
    d[2] += d[4] % p * c1 % p;
    d[3] += d[4] % p * c2 % p;
    d[0] += d[3] % p * c0 % p;
    d[1] += d[3] % p * c1 % p;
    d[2] += d[3] % p * c2 % p;
    return {uint32_t(d[0] % p), uint32_t(d[1] % p), uint32_t(d[2] % p)};
  }
  E pow(E a, uint64_t e) const {
    E r = from(1);
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  E inv(const E& a) const {
    uint64_t q = uint64_t(p) * p * p;
    return pow(a, q - 2);
  }
};

// rank of a small matrix over Fp3
size_t rank_fp3(const Fp3& K, std::vector<Fp3::E>& m, size_t rows, size_t cols) {
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && K.is_zero(m[piv * cols + c])) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (size_t j = 0; j < cols; ++j) std::swap(m[piv * cols + j], m[r * cols + j]);
    Fp3::E d = K.inv(m[r * cols + c]);
    for (size_t j = c; j < cols; ++j) m[r * cols + j] = K.mul(m[r * cols + j], d);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || K.is_zero(m[i * cols + c])) continue;
      Fp3::E f = m[i * cols + c];
      for (size_t j = c; j < cols; ++j)
        m[i * cols + j] = K.sub(m[i * cols + j], K.mul(f, m[r * cols + j]));
    }
    ++r;
  }
  return r;
}

// decomposability over Fp3 by the same kernel-dimension criterion
bool decomposable_fp3(const Fp3& K, const std::array<Fp3::E, 20>& omega) {
  const auto& T = ext::SubsetTables::get(6);
  std::vector<Fp3::E> m(6 * 15, K.zero());
  bool nonzero = false;
  for (size_t t = 0; t < 20; ++t) nonzero = nonzero || !K.is_zero(omega[t]);
  if (!nonzero) return false;
  for (int l = 0; l < 6; ++l)
    for (size_t t = 0; t < 20; ++t) {
      if (K.is_zero(omega[t])) continue;
      uint8_t mt = T.masks[3][t];
      if (mt & (1 << l)) continue;
      int s = ext::wedge_sign(uint8_t(1 << l), mt);
      size_t col = size_t(T.pos[4][mt | (1 << l)]);
      m[size_t(l) * 15 + col] = s > 0 ? omega[t] : K.neg(omega[t]);
    }
  return rank_fp3(K, m, 6, 15) == 3;
}

struct ScanLevel {
  uint64_t checked = 0;
  bool exhaustive = false;
  bool found = false;
  std::vector<Fel> coeffs;  // witness in A-basis coordinates (over the scan field)
};

Multivector mv_from_A(const Field& Fe, const Matrix& Abasis, const std::vector<Fel>& coeffs) {
  Multivector w(3, Fe);
  for (size_t r = 0; r < 10; ++r) {
    if (Fe.is_zero(coeffs[r])) continue;
    for (size_t t = 0; t < 20; ++t)
      w[t] = Fe.add(w[t], Fe.mul(coeffs[r], Abasis.at(r, t)));
  }
  return w;
}

// scan over a Fel-backed field (the instance field or its quadratic extension)
ScanLevel scan_level_fel(const Field& Fe, const Matrix& Abasis, uint64_t sample_budget,
                         uint64_t seed) {
  ScanLevel out;
  uint64_t q = Fe.size();
  uint64_t npoints = 1, total = 0;
  for (int i = 0; i < 10; ++i) { total += npoints; npoints *= q; }
  auto test = [&](const std::vector<Fel>& coeffs) -> bool {
    Multivector w = mv_from_A(Fe, Abasis, coeffs);
    ++out.checked;
    if (is_decomposable(Fe, w).decomposable) {
      out.found = true;
      out.coeffs = coeffs;
      return true;
    }
    return false;
  };
  if (total <= sample_budget) {
    out.exhaustive = true;
    ProjectivePoints pts(Fe, 10);
    bool found = false;
    pts.for_each([&](const std::vector<Fel>& c) {
      if (found) return;
      found = test(c);
    });
    return out;
  }
  // structured slices first: the 10 coordinate lines span(a_i, a_{i+1 mod 10})
  for (size_t i = 0; i < 10 && !out.found; ++i) {
    std::vector<Fel> c(10, Fe.zero());
    c[i] = Fe.one();
    if (test(c)) break;
    for (uint64_t t = 0; t < q && !out.found; ++t) {
      std::vector<Fel> c2(10, Fe.zero());
      c2[i] = Fe.element_from_index(t);
      c2[(i + 1) % 10] = Fe.one();
      test(c2);
    }
  }
  // seeded pseudorandom sample (with repetition)
  SplitMix64 rng(seed);
  for (uint64_t s = 0; s < sample_budget && !out.found; ++s) {
    std::vector<Fel> c(10, Fe.zero());
    bool nz = false;
    for (size_t i = 0; i < 10; ++i) {
      c[i] = Fe.element_from_index(rng.below(q));
      nz = nz || !Fe.is_zero(c[i]);
    }
    if (!nz) continue;
    test(normalize_point(Fe, c));
  }
  return out;
}

ScanLevel scan_level_fp3(uint32_t p, const Matrix& Abasis, const Field& Fbase,
                         uint64_t sample_budget, uint64_t seed) {
  ScanLevel out;
  Fp3 K(p);
  std::array<std::array<Fp3::E, 20>, 10> rows;
  for (size_t r = 0; r < 10; ++r)
    for (size_t t = 0; t < 20; ++t) rows[r][t] = K.from(Abasis.at(r, t).a);
  (void)Fbase;
  auto test = [&](const std::array<Fp3::E, 10>& coeffs) {
    std::array<Fp3::E, 20> w;
    for (auto& x : w) x = K.zero();
    for (size_t r = 0; r < 10; ++r) {
      if (K.is_zero(coeffs[r])) continue;
      for (size_t t = 0; t < 20; ++t) w[t] = K.add(w[t], K.mul(coeffs[r], rows[r][t]));
    }
    ++out.checked;
    if (decomposable_fp3(K, w)) out.found = true;
  };
  uint64_t q = uint64_t(p) * p * p;
  // coordinate lines
  for (size_t i = 0; i < 10 && !out.found; ++i) {
    std::array<Fp3::E, 10> c;
    for (auto& x : c) x = K.zero();
    c[i] = K.from(1);
    test(c);
    for (uint64_t t = 0; t < q && !out.found; ++t) {
      std::array<Fp3::E, 10> c2;
      for (auto& x : c2) x = K.zero();
      c2[i] = {uint32_t(t % p), uint32_t(t / p % p), uint32_t(t / p / p % p)};
      c2[(i + 1) % 10] = K.from(1);
      test(c2);
    }
  }
  SplitMix64 rng(seed);
  for (uint64_t s = 0; s < sample_budget && !out.found; ++s) {
    std::array<Fp3::E, 10> c;
    bool nz = false;
    for (size_t i = 0; i < 10; ++i) {
      uint64_t t = rng.below(q);
      c[i] = {uint32_t(t % p), uint32_t(t / p % p), uint32_t(t / p / p % p)};
      nz = nz || !K.is_zero(c[i]);
    }
    if (nz) test(c);
  }
  return out;
}

Matrix lift_basis(const Field& Fsrc, const Field& Fdst, const Matrix& m) {
  Matrix r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      if (Fsrc.kind() == FieldKind::rationals) throw error("cannot lift rational entries");
      Fel x;
      x.a = m.at(i, j).a;
      x.b = m.at(i, j).b;
      r.at(i, j) = x;
    }
  (void)Fdst;
  return r;
}

std::optional<Matrix> reduce_mod(const Field& Q, const Matrix& m, const Field& Fp) {
  Matrix r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      const mpq_t& v = m.at(i, j).r.raw();
      unsigned long den = mpz_fdiv_ui(mpq_denref(v), Fp.p());
      if (den == 0) return std::nullopt;  // bad reduction at this prime
      unsigned long num = mpz_fdiv_ui(mpq_numref(v), Fp.p());
      Fel x = Fp.mul(Fp.from_residue(uint32_t(num)), Fp.inv(Fp.from_residue(uint32_t(den))));
      r.at(i, j) = x;
    }
  (void)Q;
  return r;
}

}  // namespace

NdvScanResult decomposable_search(LagrangianInstance& inst, int effort, uint64_t sample_budget) {
  if (effort < 1 || effort > 3) throw error("decomposable_search effort must be 1, 2, or 3");
  const Field& F = inst.field;
  NdvScanResult res;
  std::ostringstream desc;

  if (F.kind() == FieldKind::rationals) {
    // reductions mod the working primes; a mod-p witness is only a warning
    int witnesses = 0, usable = 0;
    for (uint32_t p : {7u, 11u, 13u}) {
      Field Fp = Field::prime(p);
      auto red = reduce_mod(F, inst.A.basis(), Fp);
      if (!red) {
        desc << "p=" << p << ": bad reduction; ";
        continue;
      }
      ++usable;
      Matrix basis = *red;
      rref_inplace(Fp, basis);
      ScanLevel lvl = scan_level_fel(Fp, basis, sample_budget,
                                     (inst.seeded ? inst.seed : 0) ^ (0x5ca1eull + p));
      res.points_checked += lvl.checked;
      desc << "p=" << p << ": " << (lvl.exhaustive ? "exhaustive" : "sampled") << " "
           << lvl.checked << (lvl.found ? " WITNESS" : " clean") << "; ";
      if (lvl.found) ++witnesses;
    }
    if (usable > 0 && witnesses == usable)
      desc << "warning: decomposable witness in every usable reduction";
    inst.ndv = NdvStatus::unknown;
    res.exhaustive = false;
    res.scanned = desc.str();
    return res;
  }

  if (F.kind() == FieldKind::prime_square && effort >= 2)
    throw error("enumeration budget exceeded: extensions beyond F_{p^2} are not representable");

  bool all_exhaustive = true;
  for (int e = 1; e <= effort && !res.witness_found; ++e) {
    if (e == 3) {
      ScanLevel lvl = scan_level_fp3(F.p(), inst.A.basis(), F, sample_budget,
                                     (inst.seeded ? inst.seed : 0) ^ 0xe3ull);
      res.points_checked += lvl.checked;
      all_exhaustive = false;
      desc << "e=3: sampled " << lvl.checked << (lvl.found ? " WITNESS" : " clean") << "; ";
      if (lvl.found) {
        // re-locate over the reported level is not representable in Fel; record found flag only
        res.witness_found = true;
        res.witness_extension_degree = 3;
      }
      continue;
    }
    Field Fe = (e == 1) ? F : Field::prime_square(F.p());
    Matrix basis = (e == 1) ? inst.A.basis() : lift_basis(F, Fe, inst.A.basis());
    ScanLevel lvl =
        scan_level_fel(Fe, basis, sample_budget, (inst.seeded ? inst.seed : 0) ^ uint64_t(e));
    res.points_checked += lvl.checked;
    all_exhaustive = all_exhaustive && lvl.exhaustive;
    desc << "e=" << e << ": " << (lvl.exhaustive ? "exhaustive" : "sampled") << " " << lvl.checked
         << (lvl.found ? " WITNESS" : " clean") << "; ";
    if (lvl.found) {
      res.witness_found = true;
      res.witness_extension_degree = e;
      res.witness_in_A = lvl.coeffs;
      res.witness = mv_from_A(Fe, basis, lvl.coeffs);
    }
    if (e == 1) res.exhaustive = lvl.exhaustive;
  }
  res.scanned = desc.str();
  if (res.witness_found) {
    inst.ndv = NdvStatus::witness_found;
  } else if (res.exhaustive) {
    inst.ndv = NdvStatus::verified_over_field;
  } else {
    inst.ndv = NdvStatus::unknown;
  }
  return res;
}

}  // namespace epw
