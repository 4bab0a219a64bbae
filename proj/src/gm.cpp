#include "epw/gm.hpp"

#include "epw/projective.hpp"

namespace epw {

namespace {

const ext::SubsetTables& T5() { return ext::SubsetTables::get(5); }

// vol5(e_T ^ e_P): +-1 when T and P partition {0..4}, else 0
int triple_pair_sign(uint8_t t_mask, uint8_t p_mask) {
  if ((t_mask | p_mask) != 0x1f || (t_mask & p_mask)) return 0;
  return ext::wedge_sign(t_mask, p_mask);
}

// vol5 pairing of a triple-coordinate vector with a pair-coordinate vector
Fel pair5(const Field& F, const std::vector<Fel>& x3, const std::vector<Fel>& w2) {
  const auto& T = T5();
  Fel acc = F.zero();
  for (size_t t = 0; t < 10; ++t) {
    if (F.is_zero(x3[t])) continue;
    uint8_t tm = T.masks[3][t];
    uint8_t pm = uint8_t(0x1f & ~tm);
    size_t p = size_t(T.pos[2][pm]);
    if (F.is_zero(w2[p])) continue;
    Fel term = F.mul(x3[t], w2[p]);
    if (triple_pair_sign(tm, pm) < 0) term = F.neg(term);
    acc = F.add(acc, term);
  }
  return acc;
}

// decomposition of the A basis with respect to wedge^3 V6 = wedge^3 V5 + v ^ wedge^2 V5:
// returns (X, B) with a_r = X_r (triple coords) + v ^ B_r (pair coords)
std::pair<Matrix, Matrix> decompose_A(const GMInstance& gm, const std::vector<Fel>& v) {
  const Field& F = gm.field();
  // 20x20 system: columns 0..9 the b-triples in wedge^3 V6 coordinates,
  // columns 10..19 the vectors v ^ (b_i ^ b_j)
  Matrix D(20, 30);
  const auto& T = T5();
  std::vector<std::vector<Fel>> brow(5);
  for (size_t i = 0; i < 5; ++i) brow[i] = gm.V5.basis_row(i);
  for (size_t t = 0; t < 10; ++t) {
    uint8_t m = T.masks[3][t];
    int idx[3], c = 0;
    for (int i = 0; i < 5; ++i)
      if (m & (1 << i)) idx[c++] = i;
    auto col = wedge3_rows(F, brow[idx[0]], brow[idx[1]], brow[idx[2]]);
    for (size_t r = 0; r < 20; ++r) D.at(r, t) = col[r];
  }
  for (size_t p = 0; p < 10; ++p) {
    uint8_t m = T.masks[2][p];
    int idx[2], c = 0;
    for (int i = 0; i < 5; ++i)
      if (m & (1 << i)) idx[c++] = i;
    auto col = wedge3_rows(F, v, brow[idx[0]], brow[idx[1]]);
    for (size_t r = 0; r < 20; ++r) D.at(r, 10 + p) = col[r];
  }
  // solve simultaneously for the 10 rows of A
  for (size_t j = 0; j < 10; ++j)
    for (size_t r = 0; r < 20; ++r) D.at(r, 20 + j) = gm.lag.A.basis().at(j, r);
  std::vector<size_t> piv;
  size_t rk = rref_inplace(F, D, &piv);
  if (rk != 20 || piv.back() != 19)
    throw error("quadric_at: direct sum decomposition is singular (internal)");
  Matrix X(10, 10), B(10, 10);
  for (size_t j = 0; j < 10; ++j)
    for (size_t t = 0; t < 10; ++t) {
      X.at(j, t) = D.at(t, 20 + j);
      B.at(j, t) = D.at(10 + t, 20 + j);
    }
  return {X, B};
}

// Gram (in the W basis) of the reduced form at v: the graph of the image of
// A in the isotropic reduction by I
Matrix family_gram(const GMInstance& gm, const std::vector<Fel>& v) {
  const Field& F = gm.field();
  auto [X, B] = decompose_A(gm, v);
  // beta parts lie in W and span it
  size_t dw = gm.W.dim();
  Matrix Bt(10, 10);  // columns = beta parts
  for (size_t r = 0; r < 10; ++r)
    for (size_t p = 0; p < 10; ++p) Bt.at(p, r) = B.at(r, p);
  if (rank(F, Bt) != dw)
    throw error("quadric_at: A does not project onto W (invalid GM data)");
  Matrix G(dw, dw);
  for (size_t j = 0; j < dw; ++j) {
    auto wj = gm.W.basis_row(j);
    auto coef = solve(F, Bt, wj);
    if (!coef) throw error("quadric_at: W vector outside the beta image (internal)");
    // x(w_j) = sum_r coef_r X_r
    std::vector<Fel> xw(10, F.zero());
    for (size_t r = 0; r < 10; ++r) {
      if (F.is_zero((*coef)[r])) continue;
      for (size_t t = 0; t < 10; ++t) xw[t] = F.add(xw[t], F.mul((*coef)[r], X.at(r, t)));
    }
    for (size_t k = 0; k < dw; ++k) {
      auto wk = gm.W.basis_row(k);
      G.at(j, k) = F.neg(pair5(F, xw, wk));
    }
  }
  if (!G.is_symmetric(F)) throw error("quadric_at: reduced form is not symmetric (internal)");
  return G;
}

}  // namespace

std::vector<Fel> wedge2_b(const Field& F, const std::vector<Fel>& a, const std::vector<Fel>& b) {
  const auto& T = T5();
  std::vector<Fel> out(10, F.zero());
  for (size_t p = 0; p < 10; ++p) {
    uint8_t m = T.masks[2][p];
    int i = -1, j = -1;
    for (int c = 0; c < 5; ++c)
      if (m & (1 << c)) (i < 0 ? i : j) = c;
    out[p] = F.sub(F.mul(a[i], b[j]), F.mul(a[j], b[i]));
  }
  return out;
}

GMInstance build_gm(const LagrangianInstance& inst, const std::vector<Fel>& phi) {
  const Field& F = inst.field;
  if (phi.size() != 6) throw error("build_gm expects a dual point of V6");
  if (!inst.is_lagrangian && !validate_lagrangian(F, inst.A))
    throw error("build_gm requires a validated Lagrangian");
  GMInstance gm(inst, phi);

  Matrix pm(1, 6);
  for (size_t j = 0; j < 6; ++j) pm.at(0, j) = phi[j];
  Matrix ker = kernel_basis(F, pm);
  if (ker.rows() != 5) throw error("build_gm: phi does not cut a hyperplane");
  gm.V5 = Subspace(F, 6, ker);

  // I = A cap wedge^3 V5, then ell and the GM dimension
  Subspace w3v5 = wedge3_of_hyperplane(F, phi);
  Subspace Ibig = intersect(F, inst.A, w3v5);
  gm.ell = Ibig.dim();
  if (gm.ell >= 4) throw error("build_gm: dim(A cap wedge^3 V5) = " + std::to_string(gm.ell) +
                               " >= 4 is not GM data");
  gm.n = 5 - gm.ell;

  // express I in triple coordinates
  std::vector<std::vector<Fel>> brow(5);
  for (size_t i = 0; i < 5; ++i) brow[i] = gm.V5.basis_row(i);
  const auto& T = T5();
  Matrix Tcols(20, 10);
  for (size_t t = 0; t < 10; ++t) {
    uint8_t m = T.masks[3][t];
    int idx[3], c = 0;
    for (int i = 0; i < 5; ++i)
      if (m & (1 << i)) idx[c++] = i;
    auto col = wedge3_rows(F, brow[idx[0]], brow[idx[1]], brow[idx[2]]);
    for (size_t r = 0; r < 20; ++r) Tcols.at(r, t) = col[r];
  }
  Matrix Igen(gm.ell, 10);
  for (size_t i = 0; i < gm.ell; ++i) {
    auto sol = solve(F, Tcols, Ibig.basis_row(i));
    if (!sol) throw error("build_gm: I is not inside wedge^3 V5 (internal)");
    for (size_t t = 0; t < 10; ++t) Igen.at(i, t) = (*sol)[t];
  }
  gm.I3 = Subspace(F, 10, Igen);

  // W = annihilator of I under the vol5 pairing of wedge^3 V5 with wedge^2 V5
  Matrix cond(gm.ell, 10);
  for (size_t i = 0; i < gm.ell; ++i)
    for (size_t p = 0; p < 10; ++p) {
      uint8_t pmask = T.masks[2][p];
      uint8_t tmask = uint8_t(0x1f & ~pmask);
      size_t t = size_t(T.pos[3][tmask]);
      int s = triple_pair_sign(tmask, pmask);
      Fel v = gm.I3.basis().at(i, t);
      cond.at(i, p) = s < 0 ? F.neg(v) : v;
    }
  gm.W = Subspace(F, 10, kernel_basis(F, cond));
  if (gm.W.dim() != 10 - gm.ell) throw error("build_gm: dim W mismatch (internal)");

  // v0: first standard basis vector outside V5
  gm.v0.assign(6, F.zero());
  size_t c0 = 0;
  while (c0 < 6 && F.is_zero(phi[c0])) ++c0;
  gm.v0[c0] = F.one();

  // Pluecker Grams for the V5 basis directions, on the full pair space
  for (size_t m = 0; m < 5; ++m) {
    Matrix g(10, 10);
    for (size_t p = 0; p < 10; ++p)
      for (size_t q = 0; q < 10; ++q) {
        uint8_t pm1 = T.masks[2][p], pm2 = T.masks[2][q];
        if (pm1 & pm2) continue;
        if ((pm1 | pm2 | (1u << m)) != 0x1f || ((pm1 | pm2) & (1u << m))) continue;
        int s = ext::wedge_sign(uint8_t(1u << m), pm1);
        s *= ext::wedge_sign(uint8_t((1u << m) | pm1), pm2);
        g.at(p, q) = F.from_int(s);
      }
    gm.plucker_gram_b[m] = g;
  }

  gm.q0_on_W = family_gram(gm, gm.v0);
  return gm;
}

std::vector<Fel> v5_coordinates(const GMInstance& gm, const std::vector<Fel>& v) {
  auto c = gm.V5.coordinates(gm.field(), v);
  if (!c) throw error("vector is not in V5");
  return *c;
}

std::vector<Fel> v6_of_b(const GMInstance& gm, const std::vector<Fel>& bcoords) {
  const Field& F = gm.field();
  std::vector<Fel> v(6, F.zero());
  for (size_t i = 0; i < 5; ++i) {
    if (F.is_zero(bcoords[i])) continue;
    for (size_t j = 0; j < 6; ++j)
      v[j] = F.add(v[j], F.mul(bcoords[i], gm.V5.basis().at(i, j)));
  }
  return v;
}

QuadraticForm plucker_quadric_full(const GMInstance& gm, const std::vector<Fel>& v_in_v6) {
  const Field& F = gm.field();
  bool nz = false;
  for (const Fel& x : v_in_v6) nz = nz || !F.is_zero(x);
  if (!nz) throw error("plucker_quadric of the zero vector");
  auto b = v5_coordinates(gm, v_in_v6);
  Matrix g(10, 10);
  for (size_t m = 0; m < 5; ++m) {
    if (F.is_zero(b[m])) continue;
    g = g.add(F, gm.plucker_gram_b[m].scale(F, b[m]));
  }
  return QuadraticForm(F, g);
}

QuadraticForm plucker_quadric(const GMInstance& gm, const std::vector<Fel>& v_in_v6) {
  return plucker_quadric_full(gm, v_in_v6).restrict_to(gm.field(), gm.W);
}

QuadraticForm quadric_at(const GMInstance& gm, const std::vector<Fel>& v) {
  const Field& F = gm.field();
  if (v.size() != 6) throw error("quadric_at expects a vector of V6");
  Fel ph = F.zero();
  for (size_t j = 0; j < 6; ++j) ph = F.add(ph, F.mul(gm.phi[j], v[j]));
  if (F.is_zero(ph)) throw error("quadric_at requires v outside V5");
  return QuadraticForm(F, family_gram(gm, v));
}

Subspace v_wedge_V5(const GMInstance& gm, const std::vector<Fel>& v_bcoords) {
  const Field& F = gm.field();
  Matrix gens(5, 10);
  for (size_t m = 0; m < 5; ++m) {
    std::vector<Fel> em(5, F.zero());
    em[m] = F.one();
    auto w = wedge2_b(F, v_bcoords, em);
    for (size_t p = 0; p < 10; ++p) gens.at(m, p) = w[p];
  }
  return Subspace(F, 10, gens);
}

Subspace to_w_coords(const GMInstance& gm, const Subspace& pair_sub) {
  const Field& F = gm.field();
  Matrix rows(pair_sub.dim(), gm.W.dim());
  for (size_t i = 0; i < pair_sub.dim(); ++i) {
    auto c = gm.W.coordinates(F, pair_sub.basis_row(i));
    if (!c) throw error("to_w_coords: subspace is not inside W");
    for (size_t j = 0; j < gm.W.dim(); ++j) rows.at(i, j) = (*c)[j];
  }
  return Subspace(F, gm.W.dim(), rows);
}

Subspace from_w_coords(const GMInstance& gm, const Subspace& w_sub) {
  const Field& F = gm.field();
  Matrix rows(w_sub.dim(), 10);
  for (size_t i = 0; i < w_sub.dim(); ++i) {
    auto c = w_sub.basis_row(i);
    for (size_t p = 0; p < 10; ++p) {
      Fel acc = F.zero();
      for (size_t j = 0; j < gm.W.dim(); ++j)
        acc = F.add(acc, F.mul(c[j], gm.W.basis().at(j, p)));
      rows.at(i, p) = acc;
    }
  }
  return Subspace(F, 10, rows);
}

Bivector5Support bivector5_support(const Field& F, const std::vector<Fel>& pair_coords) {
  const auto& T = T5();
  Matrix m(5, 10);
  for (int l = 0; l < 5; ++l)
    for (size_t p = 0; p < 10; ++p) {
      if (F.is_zero(pair_coords[p])) continue;
      uint8_t pm = T.masks[2][p];
      if (pm & (1 << l)) continue;
      int s = ext::wedge_sign(uint8_t(1 << l), pm);
      size_t t = size_t(T.pos[3][pm | (1 << l)]);
      Fel c = s > 0 ? pair_coords[p] : F.neg(pair_coords[p]);
      m.at(l, t) = c;
    }
  Bivector5Support out;
  out.kernel = Subspace(F, 5, kernel_basis(F, m.transpose()));
  out.decomposable = (out.kernel.dim() == 2);
  return out;
}

SampleReport sample_points(const GMInstance& gm) {
  const Field& F = gm.field();
  if (F.kind() != FieldKind::prime) throw error("sample_points requires a prime field");
  SampleReport rep;
  size_t dw = gm.W.dim();

  // all six family generators restricted to W, as Grams in the W basis
  std::vector<Matrix> grams;
  for (size_t m = 0; m < 5; ++m) {
    std::vector<Fel> bm(5, F.zero());
    bm[m] = F.one();
    grams.push_back(plucker_quadric(gm, v6_of_b(gm, bm)).gram());
  }
  grams.push_back(gm.q0_on_W);

  // row-reduced 2x5 representatives of Gr(2, V5)(F_q)
  uint64_t q = F.size();
  for (int c1 = 0; c1 < 5; ++c1)
    for (int c2 = c1 + 1; c2 < 5; ++c2) {
      std::vector<int> free_pos;  // (row, col) packed: row 0 entries after c1 (skipping c2), row 1 after c2
      for (int c = c1 + 1; c < 5; ++c)
        if (c != c2) free_pos.push_back(c);
      int nfree0 = int(free_pos.size());
      std::vector<int> free1;
      for (int c = c2 + 1; c < 5; ++c) free1.push_back(c);
      int nfree1 = int(free1.size());
      uint64_t total = 1;
      for (int i = 0; i < nfree0 + nfree1; ++i) total *= q;
      for (uint64_t code = 0; code < total; ++code) {
        std::vector<Fel> r0(5, F.zero()), r1(5, F.zero());
        r0[c1] = F.one();
        r1[c2] = F.one();
        uint64_t rest = code;
        for (int i = 0; i < nfree0; ++i) {
          r0[free_pos[i]] = F.element_from_index(rest % q);
          rest /= q;
        }
        for (int i = 0; i < nfree1; ++i) {
          r1[free1[i]] = F.element_from_index(rest % q);
          rest /= q;
        }
        ++rep.grassmannian_points;
        auto pl = wedge2_b(F, r0, r1);
        auto wc = gm.W.coordinates(F, pl);
        if (!wc) continue;
        ++rep.on_hull;
        // on X iff the non-Pluecker quadric also vanishes
        QuadraticForm q0(F, gm.q0_on_W);
        if (!F.is_zero(q0.evaluate(F, *wc))) continue;
        SampledPoint sp;
        sp.rep_rows.insert(sp.rep_rows.end(), r0.begin(), r0.end());
        sp.rep_rows.insert(sp.rep_rows.end(), r1.begin(), r1.end());
        sp.plucker = normalize_point(F, pl);
        sp.w_coords = *wc;
        // Jacobian rows: G_i . p in the W coordinates
        Matrix jac(6, dw);
        for (size_t g = 0; g < 6; ++g) {
          QuadraticForm qg(F, grams[g]);
          for (size_t j = 0; j < dw; ++j) {
            std::vector<Fel> ej(dw, F.zero());
            ej[j] = F.one();
            jac.at(g, j) = qg.pairing(F, *wc, ej);
          }
        }
        sp.jacobian_rank = rank(F, jac);
        sp.smooth = (sp.jacobian_rank == 4);
        rep.points.push_back(std::move(sp));
      }
    }
  return rep;
}

}  // namespace epw
