#include "epw/epw_strata.hpp"

#include "epw/projective.hpp"

#include <chrono>
#include <cstring>
#include <thread>

namespace epw {

namespace {

const ext::SubsetTables& T6() { return ext::SubsetTables::get(6); }

// generic pairing matrix N(v)_{ij} = omega(a_i, v ^ f_j), 10 x 15
Matrix pairing_matrix(const Field& F, const Matrix& Abasis, const std::vector<Fel>& v) {
  const auto& T = T6();
  Matrix N(10, 15);
  for (size_t j = 0; j < 15; ++j) {
    uint8_t mb = T.masks[2][j];
    for (int c = 0; c < 6; ++c) {
      if (mb & (1 << c)) continue;
      if (F.is_zero(v[c])) continue;
      int s1 = ext::wedge_sign(uint8_t(1 << c), mb);
      uint8_t mt = uint8_t(mb | (1 << c));          // v ^ f_j hits e_{mt}
      uint8_t mc = uint8_t(0x3f & ~mt);             // omega pairs with the complement
      int s2 = ext::wedge_sign(mc, mt);
      size_t col = size_t(T.pos[3][mc]);
      Fel coef = F.mul(v[c], F.from_int(s1 * s2));
      for (size_t i = 0; i < 10; ++i) {
        if (F.is_zero(Abasis.at(i, col))) continue;
        N.at(i, j) = F.add(N.at(i, j), F.mul(Abasis.at(i, col), coef));
      }
    }
  }
  return N;
}

size_t stratum_generic(const Field& F, const Subspace& A, const std::vector<Fel>& v) {
  size_t k1 = 10 - rank(F, pairing_matrix(F, A.basis(), v));
  size_t k2 = intersect(F, A, wedge_map_image(F, v)).dim();
  if (k1 != k2) throw error("stratum double-path disagreement (internal)");
  return k1;
}

// ---- fast prime-field kernels ------------------------------------------

struct FastCtx {
  uint32_t p = 0;
  uint32_t A[10][20];      // RREF basis
  size_t apiv[10];         // pivot columns
  // N(v) = sum_c v_c * M[c]
  uint32_t M[6][10 * 15];
  // nonzero pattern of the F_v generator rows
  struct GenEntry {
    uint8_t col;   // coordinate in wedge^3
    uint8_t vidx;  // which v coordinate feeds it
    int8_t sign;
  };
  GenEntry gen[15][4];
  uint8_t gen_n[15];

  FastCtx(const Field& F, const Subspace& As) {
    p = F.p();
    const auto& T = T6();
    for (size_t i = 0; i < 10; ++i) {
      for (size_t t = 0; t < 20; ++t) A[i][t] = As.basis().at(i, t).a;
      size_t c = 0;
      while (c < 20 && !A[i][c]) ++c;
      apiv[i] = c;
    }
    std::memset(M, 0, sizeof(M));
    for (size_t j = 0; j < 15; ++j) {
      uint8_t mb = T.masks[2][j];
      gen_n[j] = 0;
      for (int c = 0; c < 6; ++c) {
        if (mb & (1 << c)) continue;
        int s1 = ext::wedge_sign(uint8_t(1 << c), mb);
        uint8_t mt = uint8_t(mb | (1 << c));
        uint8_t mc = uint8_t(0x3f & ~mt);
        int s2 = ext::wedge_sign(mc, mt);
        size_t col = size_t(T.pos[3][mc]);
        for (size_t i = 0; i < 10; ++i) {
          int64_t add = int64_t(s1) * s2 * int64_t(A[i][col]);
          M[c][i * 15 + j] = uint32_t(((add % p) + p) % p);
        }
        gen[j][gen_n[j]] = {uint8_t(T.pos[3][mt]), uint8_t(c), int8_t(s1)};
        ++gen_n[j];
      }
    }
  }
};

size_t rank_mod_p(uint32_t* m, size_t rows, size_t cols, uint32_t p) {
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (size_t j = c; j < cols; ++j) std::swap(m[piv * cols + j], m[r * cols + j]);
    uint64_t inv = 1, base = m[r * cols + c], e = p - 2;
    while (e) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    for (size_t j = c; j < cols; ++j) m[r * cols + j] = uint32_t(m[r * cols + j] * inv % p);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      uint64_t f = m[i * cols + c];
      if (!f) continue;
      uint64_t fn = p - f;
      for (size_t j = c; j < cols; ++j)
        m[i * cols + j] = uint32_t((m[i * cols + j] + fn * m[r * cols + j]) % p);
    }
    ++r;
  }
  return r;
}

size_t stratum_fast(const FastCtx& ctx, const uint32_t v[6]) {
  const uint32_t p = ctx.p;
  // path 1: 10 - rank of the pairing matrix
  uint32_t N[10 * 15];
  std::memset(N, 0, sizeof(N));
  for (int c = 0; c < 6; ++c) {
    uint64_t vc = v[c];
    if (!vc) continue;
    const uint32_t* Mc = ctx.M[c];
    for (size_t t = 0; t < 150; ++t) N[t] = uint32_t((N[t] + vc * Mc[t]) % p);
  }
  size_t k1 = 10 - rank_mod_p(N, 10, 15, p);

  // path 2: dim(A cap F_v) from the F_v generators reduced modulo A
  uint32_t R[15 * 20];
  std::memset(R, 0, sizeof(R));
  for (size_t j = 0; j < 15; ++j)
    for (uint8_t t = 0; t < ctx.gen_n[j]; ++t) {
      const auto& g = ctx.gen[j][t];
      uint32_t val = v[g.vidx] % p;
      if (g.sign < 0) val = val ? p - val : 0;
      R[j * 20 + g.col] = val;
    }
  for (size_t j = 0; j < 15; ++j) {
    uint32_t* row = &R[j * 20];
    for (size_t i = 0; i < 10; ++i) {
      uint32_t f = row[ctx.apiv[i]];
      if (!f) continue;
      uint64_t fn = p - f;
      const uint32_t* arow = ctx.A[i];
      for (size_t c = ctx.apiv[i]; c < 20; ++c) row[c] = uint32_t((row[c] + fn * arow[c]) % p);
    }
  }
  size_t k2 = 10 - rank_mod_p(R, 15, 20, p);
  if (k1 != k2) throw error("stratum double-path disagreement (internal)");
  return k1;
}

// normalized points of P^{n-1}(F_p) on raw digit arrays, visiting the global
// index range [from, to) of the canonical enumeration
template <typename Fn>
void for_each_projective_raw_range(uint32_t p, size_t n, uint64_t from, uint64_t to, Fn&& f) {
  // block sizes per leading position: p^(n - lead - 1)
  std::vector<uint64_t> bsize(n);
  for (size_t lead = 0; lead < n; ++lead) {
    uint64_t s = 1;
    for (size_t i = 0; i < n - lead - 1; ++i) s *= p;
    bsize[lead] = s;
  }
  uint64_t idx = 0;
  std::vector<uint32_t> v(n, 0);
  for (size_t lead = 0; lead < n && idx < to; ++lead) {
    if (idx + bsize[lead] <= from) {
      idx += bsize[lead];
      continue;
    }
    std::fill(v.begin(), v.end(), 0u);
    v[lead] = 1;
    uint64_t inblock = (from > idx) ? from - idx : 0;
    // seed the free digits with the base-p representation of inblock
    uint64_t rest = inblock;
    for (size_t i = n; i-- > lead + 1;) {
      v[i] = uint32_t(rest % p);
      rest /= p;
    }
    idx += inblock;
    while (idx < to) {
      f(v.data());
      ++idx;
      size_t pos = n;
      while (pos > lead + 1) {
        if (++v[pos - 1] < p) break;
        v[pos - 1] = 0;
        --pos;
      }
      if (pos == lead + 1) break;
    }
  }
}

StratificationReport scan_instance(const LagrangianInstance& inst, const Subspace& space,
                                   bool dual_side, size_t witness_cap, unsigned jobs) {
  const Field& F = inst.field;
  if (F.kind() != FieldKind::prime) throw error("stratify requires a prime field");
  if (jobs == 0) jobs = 1;
  auto t0 = std::chrono::steady_clock::now();
  FastCtx ctx(F, space);
  StratificationReport rep;
  rep.field = F.spec();
  rep.instance_ref = inst.provenance;
  rep.dual = dual_side;
  rep.witness_cap = witness_cap;
  rep.witnesses.assign(11, {});

  uint64_t total = 0, t = 1;
  for (size_t i = 0; i < 6; ++i) { total += t; t *= F.p(); }

  struct Local {
    std::array<uint64_t, 11> counts{};
    std::vector<std::vector<std::vector<Fel>>> wit;
    std::string err;
  };
  std::vector<Local> locals(jobs);
  auto work = [&](unsigned w) {
    Local& loc = locals[w];
    loc.wit.assign(11, {});
    uint64_t from = total * w / jobs, to = total * (w + 1) / jobs;
    try {
      for_each_projective_raw_range(F.p(), 6, from, to, [&](const uint32_t* v) {
        size_t k = stratum_fast(ctx, v);
        ++loc.counts[k];
        if (loc.wit[k].size() < witness_cap) {
          std::vector<Fel> pt(6);
          for (size_t i = 0; i < 6; ++i) pt[i] = F.from_residue(v[i]);
          loc.wit[k].push_back(std::move(pt));
        }
      });
    } catch (const std::exception& e) {
      loc.err = e.what();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  // merge in range order: identical output for every jobs setting
  for (unsigned w = 0; w < jobs; ++w) {
    if (!locals[w].err.empty()) throw error(locals[w].err);
    for (size_t k = 0; k <= 10; ++k) {
      rep.counts[k] += locals[w].counts[k];
      for (auto& pt : locals[w].wit[k])
        if (rep.witnesses[k].size() < witness_cap) rep.witnesses[k].push_back(std::move(pt));
    }
  }
  rep.total = total;
  rep.exhaustive = true;
  rep.elapsed_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace

size_t stratum_of(const LagrangianInstance& inst, const std::vector<Fel>& v) {
  if (v.size() != 6) throw error("stratum_of expects a vector of V6");
  bool nz = false;
  for (const Fel& x : v) nz = nz || !inst.field.is_zero(x);
  if (!nz) throw error("stratum_of at the zero vector");
  return stratum_generic(inst.field, inst.A, v);
}

size_t dual_stratum_of(const LagrangianInstance& inst, const std::vector<Fel>& phi) {
  if (phi.size() != 6) throw error("dual_stratum_of expects a dual vector");
  const Field& F = inst.field;
  bool nz = false;
  for (const Fel& x : phi) nz = nz || !F.is_zero(x);
  if (!nz) throw error("dual_stratum_of at the zero functional");
  size_t l1 = intersect(F, inst.A, wedge3_of_hyperplane(F, phi)).dim();
  // two-representation check: the same number is the stratum of the
  // annihilator Lagrangian at [phi] in the dual space
  size_t l2 = stratum_generic(F, dual(inst).annihilator, phi);
  if (l1 != l2) throw error("dual stratum two-representation disagreement (internal)");
  return l1;
}

StratificationReport stratify(const LagrangianInstance& inst, size_t witness_cap, unsigned jobs) {
  return scan_instance(inst, inst.A, false, witness_cap, jobs);
}

StratificationReport dual_stratify(const LagrangianInstance& inst, size_t witness_cap,
                                   unsigned jobs) {
  return scan_instance(inst, dual(inst).annihilator, true, witness_cap, jobs);
}

std::vector<StratumPoint> hyperplane_slice(const LagrangianInstance& inst,
                                           const std::vector<Fel>& phi) {
  const Field& F = inst.field;
  if (!F.finite()) throw error("hyperplane_slice requires a finite field");
  Matrix pm(1, 6);
  for (size_t j = 0; j < 6; ++j) pm.at(0, j) = phi[j];
  Matrix ker = kernel_basis(F, pm);
  if (ker.rows() != 5) throw error("hyperplane_slice: phi does not cut a hyperplane");
  std::vector<StratumPoint> out;
  ProjectivePoints pts(F, 5);
  pts.for_each([&](const std::vector<Fel>& c) {
    std::vector<Fel> v(6, F.zero());
    for (size_t i = 0; i < 5; ++i) {
      if (F.is_zero(c[i])) continue;
      for (size_t j = 0; j < 6; ++j) v[j] = F.add(v[j], F.mul(c[i], ker.at(i, j)));
    }
    StratumPoint sp;
    sp.point = normalize_point(F, v);
    sp.k = stratum_of(inst, sp.point);
    out.push_back(std::move(sp));
  });
  return out;
}

// ---- the sextic ----------------------------------------------------------

namespace {

// columns indexed by the 10 bivectors supported away from the chart index
std::vector<size_t> chart_columns(size_t chart) {
  const auto& T = T6();
  std::vector<size_t> cols;
  for (size_t j = 0; j < 15; ++j)
    if (!(T.masks[2][j] & (1u << chart))) cols.push_back(j);
  return cols;
}

// the construction in a fixed chart; nullopt when the division leaves a
// remainder there
std::optional<Poly> sextic_in_chart(const Field& Fe, const Matrix& Abasis,
                                    const std::vector<Fel>& v0, const std::vector<Fel>& v1,
                                    size_t chart) {
  std::vector<size_t> cols = chart_columns(chart);
  Matrix M0 = pairing_matrix(Fe, Abasis, v0);
  Matrix M1 = pairing_matrix(Fe, Abasis, v1);
  // det M(t) has degree <= 10: evaluate at 11 nodes and interpolate
  std::vector<Fel> xs, ys;
  for (uint64_t i = 0; i < 11; ++i) {
    Fel t = Fe.finite() ? Fe.element_from_index(i) : Fe.from_int(long(i));
    Matrix Mt(10, 10);
    for (size_t r = 0; r < 10; ++r)
      for (size_t c = 0; c < 10; ++c)
        Mt.at(r, c) = Fe.add(M0.at(r, cols[c]), Fe.mul(t, M1.at(r, cols[c])));
    xs.push_back(t);
    ys.push_back(Mt.det(Fe));
  }
  Poly d = interpolate(Fe, xs, ys);
  // divide exactly by ell(t)^4, ell the chart coordinate of v(t); the chosen
  // column family drops rank by 4 on the chart hyperplane, which fixes the
  // exponent, and exactness is checked rather than assumed
  Poly ell;
  ell.c = {v0[chart], v1[chart]};
  trim(Fe, ell);
  if (ell.c.empty()) return std::nullopt;
  Poly q = d;
  for (int i = 0; i < 4; ++i) {
    auto [quo, rem] = divmod(Fe, q, ell);
    if (degree(Fe, rem) >= 0) return std::nullopt;
    q = quo;
  }
  if (degree(Fe, q) > 6) return std::nullopt;
  return q;
}

}  // namespace

SexticOnLine sextic_on_line(const LagrangianInstance& inst, const std::vector<Fel>& v0,
                            const std::vector<Fel>& v1, int force_chart) {
  const Field& F = inst.field;
  if (v0.size() != 6 || v1.size() != 6) throw error("sextic_on_line expects two vectors of V6");
  {
    Matrix two(2, 6);
    for (size_t j = 0; j < 6; ++j) {
      two.at(0, j) = v0[j];
      two.at(1, j) = v1[j];
    }
    if (rank(F, two) != 2) throw error("sextic_on_line: v0, v1 must be independent");
  }

  // interpolation needs 11 distinct nodes
  bool lift = F.finite() && F.size() < 11;
  Field Fe = F;
  if (lift) {
    if (F.kind() != FieldKind::prime || uint64_t(F.p()) * F.p() < 11)
      throw error(
          "sextic_on_line: fewer than 11 field points available, even in the quadratic extension");
    Fe = Field::prime_square(F.p());
  }
  auto lift_vec = [&](const std::vector<Fel>& v) {
    if (!lift) return v;
    std::vector<Fel> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i].a = v[i].a;
    return out;
  };
  Matrix Ab = inst.A.basis();
  if (lift) {
    Matrix L(10, 20);
    for (size_t i = 0; i < 10; ++i)
      for (size_t j = 0; j < 20; ++j) L.at(i, j).a = Ab.at(i, j).a;
    Ab = L;
  }
  std::vector<Fel> w0 = lift_vec(v0), w1 = lift_vec(v1);

  // chart preference: first coordinate not identically zero along the line
  for (size_t c = 0; c < 6; ++c) {
    if (force_chart >= 0 && c != size_t(force_chart)) continue;
    if (Fe.is_zero(w0[c]) && Fe.is_zero(w1[c])) continue;
    auto s = sextic_in_chart(Fe, Ab, w0, w1, c);
    if (!s) continue;
    SexticOnLine out;
    out.v0 = v0;
    out.v1 = v1;
    out.chart = c;
    out.used_extension = lift;
    if (lift) {
      Poly back;
      back.c.resize(s->c.size());
      for (size_t i = 0; i < s->c.size(); ++i) {
        if (s->c[i].b != 0)
          throw error("sextic_on_line: extension interpolation left a non-rational coefficient");
        back.c[i] = F.from_residue(s->c[i].a);
      }
      trim(F, back);
      out.s = back;
    } else {
      out.s = *s;
    }
    return out;
  }
  throw error("sextic_on_line: division left a remainder in every chart (degenerate line)");
}

}  // namespace epw
