#include "epw/quadric_fibers.hpp"

#include "epw/projective.hpp"

namespace epw {

namespace {

// projection of a vector along the kernel onto the coordinate complement used
// by corank_reduce (zero out the kernel's pivot coordinates)
std::vector<Fel> project_off(const Field& F, const Subspace& K, const std::vector<Fel>& v) {
  std::vector<Fel> w = v;
  for (size_t i = 0; i < K.dim(); ++i) {
    size_t pc = 0;
    while (pc < K.ambient_dim() && F.is_zero(K.basis().at(i, pc))) ++pc;
    Fel f = w[pc];
    if (F.is_zero(f)) continue;
    for (size_t j = 0; j < K.ambient_dim(); ++j) w[j] = F.sub(w[j], F.mul(f, K.basis().at(i, j)));
  }
  return w;
}

// canonical order on projective roots: compare normalized coordinate tuples
// by the canonical element index
bool root_less(const Field& F, const std::vector<Fel>& a, const std::vector<Fel>& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    uint64_t ia = F.index_of(a[i]), ib = F.index_of(b[i]);
    if (ia != ib) return ia < ib;
  }
  return false;
}

// maximal isotropic subspaces of a form of rank exactly 2 on dimension n:
// kernel (n-2) plus each isotropic line of the residual binary form
std::vector<Subspace> split_rank2(const Field& F, const QuadraticForm& q, bool* rational,
                                  bool* double_root) {
  size_t n = q.dim();
  if (q.rank(F) != 2) throw error("split_rank2 expects a form of rank 2");
  auto [K, red] = corank_reduce(F, q);
  std::vector<bool> in_piv(n, false);
  for (size_t i = 0; i < K.dim(); ++i) {
    size_t pc = 0;
    while (pc < n && F.is_zero(K.basis().at(i, pc))) ++pc;
    in_piv[pc] = true;
  }
  std::vector<size_t> comp;
  for (size_t j = 0; j < n; ++j)
    if (!in_piv[j]) comp.push_back(j);
  Fel g11 = red.gram().at(0, 0), g12 = red.gram().at(0, 1), g22 = red.gram().at(1, 1);
  std::vector<std::pair<Fel, Fel>> roots;
  *rational = true;
  *double_root = false;
  if (F.is_zero(g11)) {
    roots.push_back({F.one(), F.zero()});
    if (F.is_zero(g12))
      *double_root = true;
    else
      roots.push_back({g22, F.neg(F.add(g12, g12))});
  } else {
    Fel disc = F.sub(F.mul(g12, g12), F.mul(g11, g22));
    if (F.is_zero(disc)) {
      roots.push_back({F.neg(g12), g11});
      *double_root = true;
    } else {
      std::optional<Fel> r;
      if (F.finite()) {
        r = F.sqrt(disc);
      } else if (auto rq = Rat::exact_sqrt(disc.r)) {
        Fel root;
        root.r = *rq;
        r = root;
      }
      if (r) {
        roots.push_back({F.sub(*r, g12), g11});
        roots.push_back({F.sub(F.neg(*r), g12), g11});
      } else {
        *rational = false;
      }
    }
  }
  std::vector<std::vector<Fel>> rts;
  for (auto& [x, y] : roots) rts.push_back(normalize_point(F, {x, y}));
  if (rts.size() == 2 && root_less(F, rts[1], rts[0])) std::swap(rts[0], rts[1]);
  std::vector<Subspace> out;
  for (const auto& rt : rts) {
    Matrix gens(K.dim() + 1, n);
    for (size_t i = 0; i < K.dim(); ++i)
      for (size_t j = 0; j < n; ++j) gens.at(i, j) = K.basis().at(i, j);
    gens.at(K.dim(), comp[0]) = rt[0];
    gens.at(K.dim(), comp[1]) = rt[1];
    Subspace sp(F, n, gens);
    if (!q.vanishes_on(F, sp)) throw error("split_rank2: component is not isotropic (internal)");
    out.push_back(sp);
  }
  return out;
}

}  // namespace

TwoSpaces two_spaces_through(const Field& F, const QuadraticForm& q, const Subspace& pi) {
  size_t n = q.dim();
  if (n < 6 || n % 2 != 0) throw error("two_spaces_through expects a form of dimension 2s+6");
  size_t s = (n - 6) / 2;
  if (q.corank(F) != 2) throw error("two_spaces_through requires corank exactly 2");
  if (pi.dim() != s + 1) throw error("two_spaces_through: pi has the wrong dimension");
  if (!q.vanishes_on(F, pi)) throw error("two_spaces_through: pi is not isotropic");
  auto [K, qbar] = corank_reduce(F, q);
  if (intersect(F, pi, K).dim() != 0)
    throw error("two_spaces_through: pi meets the kernel (X cap Sing(Q) must be empty)");

  // coordinates of the reduction complement (non-pivot columns of K)
  std::vector<bool> in_piv(n, false);
  for (size_t i = 0; i < K.dim(); ++i) {
    size_t pc = 0;
    while (pc < n && F.is_zero(K.basis().at(i, pc))) ++pc;
    in_piv[pc] = true;
  }
  std::vector<size_t> comp;
  for (size_t j = 0; j < n; ++j)
    if (!in_piv[j]) comp.push_back(j);
  size_t nb = comp.size();  // 2s + 4

  // pi projected into the reduced coordinates
  Matrix pibar(pi.dim(), nb);
  for (size_t i = 0; i < pi.dim(); ++i) {
    auto w = project_off(F, K, pi.basis_row(i));
    for (size_t j = 0; j < nb; ++j) pibar.at(i, j) = w[comp[j]];
  }
  Subspace pib(F, nb, pibar);
  if (pib.dim() != s + 1) throw error("two_spaces_through: projection collapsed pi (internal)");

  // orthogonal complement of pibar for qbar
  Matrix cond = pib.basis().mul(F, qbar.gram());
  Subspace perp(F, nb, kernel_basis(F, cond));
  if (perp.dim() != s + 3) throw error("two_spaces_through: perp has unexpected dimension");
  if (!perp.contains(F, pib)) throw error("two_spaces_through: pibar not inside its perp");

  // two residual directions spanning perp / pibar
  std::vector<std::vector<Fel>> res;
  for (size_t i = 0; i < perp.dim() && res.size() < 2; ++i) {
    auto w = perp.basis_row(i);
    // reduce against pibar and previously accepted residuals
    Subspace cur = pib;
    for (const auto& r : res) {
      Matrix m = cur.basis();
      Matrix extra(1, nb);
      for (size_t j = 0; j < nb; ++j) extra.at(0, j) = r[j];
      m.append_rows(extra);
      cur = Subspace(F, nb, m);
    }
    if (!cur.contains(F, w)) res.push_back(w);
  }
  if (res.size() != 2) throw error("two_spaces_through: residual plane extraction failed");

  // induced nondegenerate binary form on the residual plane
  Fel g11 = qbar.pairing(F, res[0], res[0]);
  Fel g12 = qbar.pairing(F, res[0], res[1]);
  Fel g22 = qbar.pairing(F, res[1], res[1]);

  // isotropic lines of g11 x^2 + 2 g12 xy + g22 y^2
  std::vector<std::pair<Fel, Fel>> roots;  // (x, y)
  bool dbl = false, rational = true;
  if (F.is_zero(g11) && F.is_zero(g22) && F.is_zero(g12))
    throw error("two_spaces_through: residual form vanishes (corank was not 2)");
  if (F.is_zero(g11)) {
    roots.push_back({F.one(), F.zero()});
    if (F.is_zero(g12)) {
      dbl = true;  // g = g22 y^2, double root at y = 0
    } else {
      // y (2 g12 x + g22 y) = 0: second root
      roots.push_back({g22, F.neg(F.add(g12, g12))});
    }
  } else {
    // x/y = (-g12 +- sqrt(g12^2 - g11 g22)) / g11
    Fel disc = F.sub(F.mul(g12, g12), F.mul(g11, g22));
    if (F.is_zero(disc)) {
      roots.push_back({F.neg(g12), g11});
      dbl = true;
    } else {
      std::optional<Fel> r;
      if (F.finite()) {
        r = F.sqrt(disc);
      } else if (auto rq = Rat::exact_sqrt(disc.r)) {
        Fel root;
        root.r = *rq;
        r = root;
      }
      if (r) {
        roots.push_back({F.sub(*r, g12), g11});
        roots.push_back({F.sub(F.neg(*r), g12), g11});
      } else {
        rational = false;  // inert: the two spaces live over the quadratic extension
      }
    }
  }

  TwoSpaces out;
  out.rational = rational && !roots.empty();
  out.double_root = dbl;

  // canonical sheet order: normalized root tuples by element index
  std::vector<std::vector<Fel>> rts;
  for (auto& [x, y] : roots) rts.push_back(normalize_point(F, {x, y}));
  if (rts.size() == 2 && root_less(F, rts[1], rts[0])) std::swap(rts[0], rts[1]);

  for (const auto& rt : rts) {
    // lift pibar + root line back: embed the complement coordinates, add K
    std::vector<Fel> dir(nb, F.zero());
    for (size_t j = 0; j < nb; ++j)
      dir[j] = F.add(F.mul(rt[0], res[0][j]), F.mul(rt[1], res[1][j]));
    Matrix gens(pi.dim() + 1 + K.dim(), n);
    for (size_t i = 0; i < pi.dim(); ++i)
      for (size_t j = 0; j < n; ++j) gens.at(i, j) = pi.basis().at(i, j);
    for (size_t j = 0; j < nb; ++j) gens.at(pi.dim(), comp[j]) = dir[j];
    for (size_t i = 0; i < K.dim(); ++i)
      for (size_t j = 0; j < n; ++j) gens.at(pi.dim() + 1 + i, j) = K.basis().at(i, j);
    Subspace sp(F, n, gens);
    if (sp.dim() != s + 4) throw error("two_spaces_through: lifted space has wrong dimension");
    if (!q.vanishes_on(F, sp)) throw error("two_spaces_through: lifted space is not isotropic");
    if (!sp.contains(F, pi)) throw error("two_spaces_through: lifted space lost pi");
    out.spaces.push_back(sp);
  }
  return out;
}

TwoSpaces double_cover_fiber(const GMInstance& gm, const Subspace& pi0_w,
                             const std::vector<Fel>& v) {
  const Field& F = gm.field();
  size_t k = stratum_of(gm.lag, v);
  if (k != 2) throw error("double_cover_fiber requires a stratum-2 point, got k=" + std::to_string(k));
  Fel ph = F.zero();
  for (size_t j = 0; j < 6; ++j) ph = F.add(ph, F.mul(gm.phi[j], v[j]));
  if (F.is_zero(ph)) throw error("double_cover_fiber requires v outside P(V5)");
  // pi0 must lie on X: every family member vanishes on it
  for (size_t m = 0; m < 5; ++m) {
    std::vector<Fel> bm(5, F.zero());
    bm[m] = F.one();
    if (!plucker_quadric(gm, v6_of_b(gm, bm)).vanishes_on(F, pi0_w))
      throw error("double_cover_fiber: pi0 is not on the Grassmannian hull");
  }
  if (!QuadraticForm(F, gm.q0_on_W).vanishes_on(F, pi0_w))
    throw error("double_cover_fiber: pi0 is not on X");
  QuadraticForm qv = quadric_at(gm, v);
  return two_spaces_through(F, qv, pi0_w);
}

Subspace splitting_section(const GMInstance& gm, const Subspace& L0_pair,
                           const std::vector<Fel>& u0_bcoords,
                           const std::vector<Fel>& v_bcoords) {
  const Field& F = gm.field();
  if (gm.n != 3) throw error("splitting_section is defined for threefold data");
  // V2 = <u0, v> must be a plane
  Matrix two(2, 5);
  for (size_t j = 0; j < 5; ++j) {
    two.at(0, j) = u0_bcoords[j];
    two.at(1, j) = v_bcoords[j];
  }
  if (rank(F, two) != 2)
    throw error("splitting_section: [v] equals the sigma point of L0");
  // V2 ^ V5 inside the pair space
  Matrix gens(10, 10);
  for (size_t r = 0; r < 2; ++r) {
    std::vector<Fel> u(5);
    for (size_t j = 0; j < 5; ++j) u[j] = two.at(r, j);
    for (size_t m = 0; m < 5; ++m) {
      std::vector<Fel> em(5, F.zero());
      em[m] = F.one();
      auto w = wedge2_b(F, u, em);
      for (size_t p = 0; p < 10; ++p) gens.at(r * 5 + m, p) = w[p];
    }
  }
  Subspace v2v5(F, 10, gens);
  // the excluded configuration L_v cap L0 != 0 is exactly [u0 ^ v] in W
  {
    std::vector<Fel> u(5), w(5);
    for (size_t j = 0; j < 5; ++j) {
      u[j] = two.at(0, j);
      w[j] = two.at(1, j);
    }
    if (gm.W.contains(F, wedge2_b(F, u, w)))
      throw error("splitting_section: the line of [v] meets L0 (excluded configuration)");
  }
  Subspace S = intersect(F, gm.W, v2v5);
  if (S.dim() != 5) {
    // diagnose which nice-line hypothesis failed
    Subspace lv = intersect(F, gm.W, v_wedge_V5(gm, v_bcoords));
    Subspace l0chk = intersect(F, gm.W, v_wedge_V5(gm, u0_bcoords));
    std::string why;
    if (l0chk.dim() != 2)
      why = "W cap (u0 ^ V5) has dimension " + std::to_string(l0chk.dim()) + " (L0 is not a line)";
    else if (lv.dim() != 2)
      why = "W cap (v ^ V5) has dimension " + std::to_string(lv.dim()) + " ([v] lies on Sigma1)";
    else if (intersect(F, lv, L0_pair).dim() != 0)
      why = "the line of [v] meets L0";
    else
      why = "non-transverse configuration";
    throw error("splitting_section: dim(W cap (V2 ^ V5)) = " + std::to_string(S.dim()) +
                " != 5; " + why);
  }
  if (!S.contains(F, L0_pair)) throw error("splitting_section: section does not contain L0");
  // the section sits inside the Pluecker quadric of the pencil direction at v
  if (!plucker_quadric_full(gm, v6_of_b(gm, v_bcoords)).vanishes_on(F, S))
    throw error("splitting_section: section is not isotropic for Q_v");
  return S;
}

const char* fiber_label_name(FiberLabel l) {
  switch (l) {
    case FiberLabel::smooth_quadric: return "smooth_quadric";
    case FiberLabel::corank1_quadric: return "corank1_quadric";
    case FiberLabel::two_planes: return "two_planes";
    case FiberLabel::double_plane: return "double_plane";
    case FiberLabel::two_points: return "two_points";
    case FiberLabel::double_point: return "double_point";
    case FiberLabel::line: return "line";
    case FiberLabel::smooth_conic: return "smooth_conic";
    case FiberLabel::two_lines: return "two_lines";
    case FiberLabel::double_line: return "double_line";
  }
  return "?";
}

FiberLabel predicted_fiber_label(size_t n, size_t stratum, bool sigma1) {
  if (n == 5) {
    switch (stratum) {
      case 0: return FiberLabel::smooth_quadric;
      case 1: return FiberLabel::corank1_quadric;
      case 2: return FiberLabel::two_planes;
      case 3: return FiberLabel::double_plane;
    }
    throw error("fivefold fiber table has no row for k=" + std::to_string(stratum));
  }
  if (n == 3) {
    if (stratum == 0) return FiberLabel::two_points;
    if (stratum == 1) return sigma1 ? FiberLabel::smooth_conic : FiberLabel::double_point;
    if (stratum == 2) return sigma1 ? FiberLabel::two_lines : FiberLabel::line;
    if (stratum == 3) return FiberLabel::double_line;
    throw error("threefold fiber table has no row for k=" + std::to_string(stratum));
  }
  throw error("fiber tables cover n = 3 and n = 5 only");
}

bool sigma1_contains(const GMInstance& gm, const std::vector<Fel>& v_bcoords) {
  const Field& F = gm.field();
  if (gm.n != 3) throw error("Sigma1 is defined for threefold data");
  // [v] in Sigma1 iff the 5x2 matrix [Phi1 v | Phi2 v] has rank <= 1
  Subspace wperp = annihilator(F, gm.W);
  Matrix m(5, 2);
  const auto& T = ext::SubsetTables::get(5);
  for (size_t c = 0; c < 2; ++c) {
    // skew form Phi_c from the dual pair-coordinate functional
    for (size_t p = 0; p < 10; ++p) {
      Fel val = wperp.basis().at(c, p);
      if (F.is_zero(val)) continue;
      uint8_t pm = T.masks[2][p];
      int i = -1, j = -1;
      for (int q = 0; q < 5; ++q)
        if (pm & (1 << q)) (i < 0 ? i : j) = q;
      // Phi(v)_i += val * v_j, Phi(v)_j -= val * v_i
      m.at(i, c) = F.add(m.at(i, c), F.mul(val, v_bcoords[j]));
      m.at(j, c) = F.sub(m.at(j, c), F.mul(val, v_bcoords[i]));
    }
  }
  return rank(F, m) <= 1;
}

FiberClassification rho1_fiber_classify(const GMInstance& gm, const std::vector<Fel>& v_bcoords) {
  const Field& F = gm.field();
  bool nz = false;
  for (const Fel& x : v_bcoords) nz = nz || !F.is_zero(x);
  if (!nz) throw error("rho1_fiber_classify at the zero vector");
  FiberClassification out;
  out.v_bcoords = normalize_point(F, v_bcoords);
  out.stratum = stratum_of(gm.lag, v6_of_b(gm, out.v_bcoords));
  Subspace vv5 = v_wedge_V5(gm, out.v_bcoords);

  if (gm.n == 5) {
    // restriction of the defining quadric to P(v ^ V5) = P^3
    QuadraticForm q0(F, gm.q0_on_W);
    // W is the whole pair space for fivefolds, so W coordinates = pair coords
    QuadraticForm qr = q0.restrict_to(F, vv5);
    out.corank = qr.corank(F);
    out.linear_section_dim = 4;
    switch (out.corank) {
      case 0: out.label = FiberLabel::smooth_quadric; break;
      case 1: out.label = FiberLabel::corank1_quadric; break;
      case 2: out.label = FiberLabel::two_planes; break;
      case 3: out.label = FiberLabel::double_plane; break;
      default: throw error("fivefold fiber with corank 4 (plane P^3 inside X)");
    }
    if (out.corank == 2) {
      // split the rank-2 restriction into the two planes
      bool dbl = false;
      auto planes = split_rank2(F, qr, &out.split_rational, &dbl);
      for (const auto& sp : planes) {
        // back to pair coordinates
        Matrix g(sp.dim(), 10);
        for (size_t i = 0; i < sp.dim(); ++i) {
          auto c = sp.basis_row(i);
          for (size_t p = 0; p < 10; ++p) {
            Fel acc = F.zero();
            for (size_t j = 0; j < 4; ++j) acc = F.add(acc, F.mul(c[j], vv5.basis().at(j, p)));
            g.at(i, p) = acc;
          }
        }
        out.components.push_back(Subspace(F, 10, g));
      }
    }
    if (out.corank == 3) {
      QuadraticForm qf(F, qr.gram());
      Subspace ker = qf.kernel(F);
      Matrix g(ker.dim(), 10);
      for (size_t i = 0; i < ker.dim(); ++i) {
        auto c = ker.basis_row(i);
        for (size_t p = 0; p < 10; ++p) {
          Fel acc = F.zero();
          for (size_t j = 0; j < 4; ++j) acc = F.add(acc, F.mul(c[j], vv5.basis().at(j, p)));
          g.at(i, p) = acc;
        }
      }
      out.components.push_back(Subspace(F, 10, g));
    }
    return out;
  }

  if (gm.n != 3) throw error("rho1_fiber_classify covers n = 3 and n = 5");
  out.sigma1 = sigma1_contains(gm, out.v_bcoords);
  Subspace lin = intersect(F, gm.W, vv5);
  out.linear_section_dim = lin.dim();
  if (lin.dim() != 2 && lin.dim() != 3)
    throw error("threefold fiber: W cap (v ^ V5) has dimension " +
                std::to_string(lin.dim()) + " (singular configuration)");
  // restrict the defining quadric: W coordinates of the linear section
  size_t dw = gm.W.dim();
  Matrix rows(lin.dim(), dw);
  for (size_t i = 0; i < lin.dim(); ++i) {
    auto c = gm.W.coordinates(F, lin.basis_row(i));
    if (!c) throw error("threefold fiber: section not inside W (internal)");
    for (size_t j = 0; j < dw; ++j) rows.at(i, j) = (*c)[j];
  }
  QuadraticForm qr = QuadraticForm(F, gm.q0_on_W).pullback(F, rows);
  size_t r = qr.rank(F);
  out.corank = lin.dim() - r;
  if (lin.dim() == 2) {
    if (r == 2) {
      out.label = FiberLabel::two_points;
      // rationality of the two points: binary form splits iff -det is a square
      Fel disc = F.sub(F.mul(qr.gram().at(0, 1), qr.gram().at(0, 1)),
                       F.mul(qr.gram().at(0, 0), qr.gram().at(1, 1)));
      out.split_rational = F.finite() ? F.sqrt(disc).has_value() : true;
    } else if (r == 1) {
      out.label = FiberLabel::double_point;
    } else {
      out.label = FiberLabel::line;
      out.components.push_back(lin);
    }
  } else {
    if (r == 3) {
      out.label = FiberLabel::smooth_conic;
    } else if (r == 2) {
      out.label = FiberLabel::two_lines;
      bool dbl = false;
      auto lines = split_rank2(F, qr, &out.split_rational, &dbl);
      for (const auto& sp : lines) {
        Matrix g(sp.dim(), 10);
        for (size_t i = 0; i < sp.dim(); ++i) {
          auto c = sp.basis_row(i);
          for (size_t p = 0; p < 10; ++p) {
            Fel acc = F.zero();
            for (size_t j = 0; j < 3; ++j) acc = F.add(acc, F.mul(c[j], lin.basis().at(j, p)));
            g.at(i, p) = acc;
          }
        }
        out.components.push_back(Subspace(F, 10, g));
      }
    } else if (r == 1) {
      out.label = FiberLabel::double_line;
      QuadraticForm qf(F, qr.gram());
      Subspace ker = qf.kernel(F);
      Matrix g(ker.dim(), 10);
      for (size_t i = 0; i < ker.dim(); ++i) {
        auto c = ker.basis_row(i);
        for (size_t p = 0; p < 10; ++p) {
          Fel acc = F.zero();
          for (size_t j = 0; j < 3; ++j) acc = F.add(acc, F.mul(c[j], lin.basis().at(j, p)));
          g.at(i, p) = acc;
        }
      }
      out.components.push_back(Subspace(F, 10, g));
    } else {
      throw error("threefold fiber: a full plane lies on X (singular data)");
    }
  }
  return out;
}

Sigma1Conic sigma1_conic(const GMInstance& gm) {
  const Field& F = gm.field();
  if (gm.n != 3) throw error("sigma1_conic is defined for ordinary threefold data");
  Sigma1Conic out;
  Subspace wperp = annihilator(F, gm.W);
  if (wperp.dim() != 2) throw error("sigma1_conic: W-perp is not a pencil (internal)");
  const auto& T = ext::SubsetTables::get(5);
  for (size_t c = 0; c < 2; ++c) {
    Matrix phi(5, 5);
    for (size_t p = 0; p < 10; ++p) {
      Fel val = wperp.basis().at(c, p);
      if (F.is_zero(val)) continue;
      uint8_t pm = T.masks[2][p];
      int i = -1, j = -1;
      for (int q = 0; q < 5; ++q)
        if (pm & (1 << q)) (i < 0 ? i : j) = q;
      phi.at(i, j) = F.add(phi.at(i, j), val);
      phi.at(j, i) = F.sub(phi.at(j, i), val);
    }
    out.pencil[c] = phi;
  }

  // kernel sampling over >= 7 pencil parameters; small fields borrow
  // parameters from the quadratic extension for the fit but the conic is
  // returned over the base field
  auto kernel_at = [&](const Field& Fe, const Matrix& A0, const Matrix& A1, const Fel& lam,
                       const Fel& mu) {
    Matrix m(5, 5);
    for (size_t i = 0; i < 5; ++i)
      for (size_t j = 0; j < 5; ++j)
        m.at(i, j) = Fe.add(Fe.mul(lam, A0.at(i, j)), Fe.mul(mu, A1.at(i, j)));
    Matrix k = kernel_basis(Fe, m);
    if (k.rows() != 1)
      throw error("sigma1_conic: a pencil member has kernel dimension " +
                  std::to_string(k.rows()) + " (singular X)");
    std::vector<Fel> v(5);
    for (size_t j = 0; j < 5; ++j) v[j] = k.at(0, j);
    return normalize_point(Fe, v);
  };

  uint64_t params_avail = F.finite() ? F.size() + 1 : 7;
  Field Fe = F;
  bool lifted = false;
  if (F.finite() && params_avail < 7) {
    Fe = Field::prime_square(F.p());
    lifted = true;
  }
  Matrix A0 = out.pencil[0], A1 = out.pencil[1];
  if (lifted) {
    Matrix L0(5, 5), L1(5, 5);
    for (size_t i = 0; i < 5; ++i)
      for (size_t j = 0; j < 5; ++j) {
        L0.at(i, j).a = A0.at(i, j).a;
        L1.at(i, j).a = A1.at(i, j).a;
      }
    A0 = L0;
    A1 = L1;
  }

  std::vector<std::vector<Fel>> samples;
  samples.push_back(kernel_at(Fe, A0, A1, Fe.one(), Fe.zero()));
  for (uint64_t i = 0; samples.size() < 7; ++i) {
    Fel mu = Fe.one();
    Fel lam = Fe.finite() ? Fe.element_from_index(i) : Fe.from_int(long(i));
    samples.push_back(kernel_at(Fe, A0, A1, lam, mu));
  }

  // the kernel points span a plane
  Matrix span(samples.size(), 5);
  for (size_t i = 0; i < samples.size(); ++i)
    for (size_t j = 0; j < 5; ++j) span.at(i, j) = samples[i][j];
  Subspace plane(Fe, 5, span);
  if (plane.dim() != 3) throw error("sigma1_conic: kernel points do not span a plane");

  // fit the conic through the first six samples in plane coordinates
  Matrix sys(6, 6);
  for (size_t i = 0; i < 6; ++i) {
    auto c = plane.coordinates(Fe, samples[i]);
    if (!c) throw error("sigma1_conic: sample off its own plane (internal)");
    const auto& x = *c;
    sys.at(i, 0) = Fe.mul(x[0], x[0]);
    sys.at(i, 1) = Fe.mul(x[0], x[1]);
    sys.at(i, 2) = Fe.mul(x[0], x[2]);
    sys.at(i, 3) = Fe.mul(x[1], x[1]);
    sys.at(i, 4) = Fe.mul(x[1], x[2]);
    sys.at(i, 5) = Fe.mul(x[2], x[2]);
  }
  Matrix ker6 = kernel_basis(Fe, sys);
  if (ker6.rows() != 1) throw error("sigma1_conic: conic fit rank deviation");
  Fel two = Fe.from_int(2);
  Matrix cg(3, 3);
  cg.at(0, 0) = ker6.at(0, 0);
  cg.at(1, 1) = ker6.at(0, 3);
  cg.at(2, 2) = ker6.at(0, 5);
  Fel half = Fe.inv(two);
  cg.at(0, 1) = cg.at(1, 0) = Fe.mul(ker6.at(0, 1), half);
  cg.at(0, 2) = cg.at(2, 0) = Fe.mul(ker6.at(0, 2), half);
  cg.at(1, 2) = cg.at(2, 1) = Fe.mul(ker6.at(0, 4), half);
  if (rank(Fe, cg) != 3) throw error("sigma1_conic: fitted conic is singular");
  // the 7th sample must satisfy the fitted conic
  {
    auto c = plane.coordinates(Fe, samples[6]);
    QuadraticForm qc(Fe, cg);
    if (!Fe.is_zero(qc.evaluate(Fe, *c)))
      throw error("sigma1_conic: overdetermination sample violates the fitted conic");
  }

  if (lifted) {
    // kernels at base-field parameters are base-rational; return those
    std::vector<std::vector<Fel>> bsample;
    for (uint64_t i = 0; i <= F.size(); ++i) {
      Fel lam, mu;
      if (i == F.size()) {
        lam = F.one();
        mu = F.zero();
      } else {
        lam = F.element_from_index(i);
        mu = F.one();
      }
      bsample.push_back(kernel_at(F, out.pencil[0], out.pencil[1], lam, mu));
    }
    Matrix sp(bsample.size(), 5);
    for (size_t i = 0; i < bsample.size(); ++i)
      for (size_t j = 0; j < 5; ++j) sp.at(i, j) = bsample[i][j];
    out.plane = Subspace(F, 5, sp);
    // store the extension-fitted conic projected back when its entries are
    // rational; otherwise keep the extension Gram (documented in the header)
    bool rationalg = true;
    for (const Fel& x : cg.e_) rationalg = rationalg && x.b == 0;
    if (rationalg && F.kind() == FieldKind::prime) {
      Matrix bg(3, 3);
      for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) bg.at(i, j) = F.from_residue(cg.at(i, j).a);
      out.conic_gram = bg;
    } else {
      out.conic_gram = cg;
    }
    out.kernel_samples = bsample;
    return out;
  }

  out.plane = plane;
  out.conic_gram = cg;
  out.kernel_samples = samples;
  return out;
}

Subspace line_of_point(const GMInstance& gm, const std::vector<Fel>& v_bcoords) {
  const Field& F = gm.field();
  if (gm.n != 3) throw error("line_of_point is defined for threefold data");
  size_t k = stratum_of(gm.lag, v6_of_b(gm, v_bcoords));
  if (k != 2) throw error("line_of_point requires a stratum-2 point of P(V5), got k=" +
                          std::to_string(k));
  if (sigma1_contains(gm, v_bcoords)) throw error("line_of_point: [v] lies on Sigma1");
  Subspace L = intersect(F, gm.W, v_wedge_V5(gm, v_bcoords));
  if (L.dim() != 2)
    throw error("line_of_point: dim(W cap (v ^ V5)) = " + std::to_string(L.dim()) + " != 2");
  return L;
}

SigmaOfLine sigma_of_line(const GMInstance& gm, const Subspace& L_pair) {
  const Field& F = gm.field();
  if (L_pair.dim() != 2 || L_pair.ambient_dim() != 10)
    throw error("sigma_of_line expects a 2-dimensional subspace of the pair space");
  auto s0 = bivector5_support(F, L_pair.basis_row(0));
  auto s1 = bivector5_support(F, L_pair.basis_row(1));
  if (!s0.decomposable || !s1.decomposable)
    throw error("sigma_of_line: a line point is not decomposable (not on the Grassmannian)");
  Subspace V1 = intersect(F, s0.kernel, s1.kernel);
  if (V1.dim() != 1) throw error("sigma_of_line: the two planes do not share a V1");
  SigmaOfLine out;
  out.v1_bcoords = normalize_point(F, V1.basis_row(0));
  out.V3_b = sum(F, s0.kernel, s1.kernel);
  if (out.V3_b.dim() != 3) throw error("sigma_of_line: flag V3 has the wrong dimension");
  return out;
}

bool is_nice_line(const GMInstance& gm, const Subspace& L_pair) {
  return !sigma1_contains(gm, sigma_of_line(gm, L_pair).v1_bcoords);
}

}  // namespace epw
