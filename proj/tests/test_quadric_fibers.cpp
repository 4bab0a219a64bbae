#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epw/quadric_fibers.hpp"
#include "epw/projective.hpp"
#include "epw/rng.hpp"

using namespace epw;

namespace {

GMInstance threefold_fixture(const Field& F, uint64_t seed) {
  auto inst = random_instance(seed, F);
  auto rep = dual_stratify(inst, 8);
  REQUIRE(!rep.witnesses[2].empty());
  return build_gm(inst, rep.witnesses[2][0]);
}

GMInstance fivefold_fixture(const Field& F, uint64_t seed) {
  auto inst = random_instance(seed, F);
  std::vector<Fel> phi(6, F.zero());
  phi[5] = F.one();
  auto gm = build_gm(inst, phi);
  REQUIRE(gm.ell == 0);
  return gm;
}

std::vector<FiberClassification> classified(const GMInstance& gm, FiberLabel want,
                                            bool need_split = false) {
  std::vector<FiberClassification> out;
  ProjectivePoints pts(gm.field(), 5);
  pts.for_each([&](const std::vector<Fel>& c) {
    auto fc = rho1_fiber_classify(gm, c);
    if (fc.label == want && (!need_split || fc.split_rational)) out.push_back(fc);
  });
  return out;
}

}  // namespace

TEST_CASE("two_spaces_through on an explicit split hyperbolic form") {
  // dim 8 (s = 1), corank 2: coordinates 0..5 hyperbolic, 6..7 the kernel
  Field F = Field::prime(7);
  Matrix g(8, 8);
  for (int i = 0; i < 3; ++i) {
    g.at(2 * i, 2 * i + 1) = F.one();
    g.at(2 * i + 1, 2 * i) = F.one();
  }
  QuadraticForm q(F, g);
  CHECK(q.corank(F) == 2);
  // pi = span{e0, e2} is isotropic of dimension s+1 = 2 avoiding the kernel
  Matrix pg(2, 8);
  pg.at(0, 0) = F.one();
  pg.at(1, 2) = F.one();
  Subspace pi(F, 8, pg);
  auto two = two_spaces_through(F, q, pi);
  CHECK(two.rational);
  CHECK(!two.double_root);
  REQUIRE(two.spaces.size() == 2);
  for (const auto& sp : two.spaces) {
    CHECK(sp.dim() == 5);  // linear dimension s+4, projective s+3
    CHECK(q.vanishes_on(F, sp));
    CHECK(sp.contains(F, pi));
    // the kernel rides along
    std::vector<Fel> k1(8, F.zero()), k2(8, F.zero());
    k1[6] = F.one();
    k2[7] = F.one();
    CHECK(sp.contains(F, k1));
    CHECK(sp.contains(F, k2));
  }
  // the two sheets differ
  CHECK(!two.spaces[0].equals(F, two.spaces[1]));
}

TEST_CASE("two_spaces_through: inert over F_7, two sheets over F_49") {
  // corank-2 form whose residual binary form has non-square discriminant
  Field F = Field::prime(7);
  Matrix g(8, 8);
  for (int i = 0; i < 2; ++i) {
    g.at(2 * i, 2 * i + 1) = F.one();
    g.at(2 * i + 1, 2 * i) = F.one();
  }
  // residual plane diag(1, -s) with s the smallest non-square: no isotropic
  // line over F_7
  g.at(4, 4) = F.one();
  g.at(5, 5) = F.neg(F.from_residue(smallest_nonsquare(7)));
  QuadraticForm q(F, g);
  CHECK(q.corank(F) == 2);
  Matrix pg(2, 8);
  pg.at(0, 0) = F.one();
  pg.at(1, 2) = F.one();
  Subspace pi(F, 8, pg);
  auto base = two_spaces_through(F, q, pi);
  CHECK(!base.rational);
  CHECK(base.spaces.empty());

  Field F49 = Field::prime_square(7);
  Matrix g2(8, 8);
  for (size_t i = 0; i < 8; ++i)
    for (size_t j = 0; j < 8; ++j) g2.at(i, j).a = g.at(i, j).a;
  Matrix pg2(2, 8);
  pg2.at(0, 0) = F49.one();
  pg2.at(1, 2) = F49.one();
  auto ext = two_spaces_through(F49, QuadraticForm(F49, g2), Subspace(F49, 8, pg2));
  CHECK(ext.rational);
  CHECK(ext.spaces.size() == 2);
}

TEST_CASE("two_spaces_through rejects bad inputs") {
  Field F = Field::prime(7);
  Matrix g(8, 8);
  for (int i = 0; i < 3; ++i) {
    g.at(2 * i, 2 * i + 1) = F.one();
    g.at(2 * i + 1, 2 * i) = F.one();
  }
  QuadraticForm q(F, g);
  // pi meeting the kernel
  Matrix bad(2, 8);
  bad.at(0, 0) = F.one();
  bad.at(1, 6) = F.one();
  CHECK_THROWS_WITH_AS(two_spaces_through(F, q, Subspace(F, 8, bad)),
                       doctest::Contains("kernel"), error);
  // wrong corank
  Matrix g3 = g;
  g3.at(6, 6) = F.one();
  g3.at(7, 7) = F.one();
  Matrix pg(2, 8);
  pg.at(0, 0) = F.one();
  pg.at(1, 2) = F.one();
  CHECK_THROWS_AS(two_spaces_through(F, QuadraticForm(F, g3), Subspace(F, 8, pg)), error);
  // non-isotropic pi
  Matrix pn(2, 8);
  pn.at(0, 0) = F.one();
  pn.at(0, 1) = F.one();
  pn.at(1, 2) = F.one();
  CHECK_THROWS_AS(two_spaces_through(F, q, Subspace(F, 8, pn)), error);
}

TEST_CASE("double cover fiber over stratum-2 points: threefold and fivefold") {
  Field F = Field::prime(11);
  auto gm3 = threefold_fixture(F, 0);
  auto gm5 = fivefold_fixture(F, 0);
  auto srep = stratify(gm3.lag, 64);

  auto lines = classified(gm3, FiberLabel::line);
  REQUIRE(!lines.empty());
  Subspace L0 = line_of_point(gm3, lines[0].v_bcoords);
  auto planes = classified(gm5, FiberLabel::two_planes, true);
  REQUIRE(!planes.empty());
  Subspace Pi0 = planes[0].components[0];

  int split3 = 0, split5 = 0;
  for (const auto& v : srep.witnesses[2]) {
    for (const GMInstance* gm : {&gm3, &gm5}) {
      Fel ph = F.zero();
      for (size_t j = 0; j < 6; ++j) ph = F.add(ph, F.mul(gm->phi[j], v[j]));
      if (F.is_zero(ph)) continue;
      const Subspace& pi0 = (gm->n == 3) ? L0 : Pi0;
      auto two = double_cover_fiber(*gm, to_w_coords(*gm, pi0), v);
      size_t s = (gm->n - 1) / 2;
      for (const auto& sp : two.spaces) {
        CHECK(sp.dim() == s + 4);
        CHECK(quadric_at(*gm, v).vanishes_on(F, sp));
      }
      if (two.rational) (gm->n == 3 ? split3 : split5) += 1;
    }
  }
  CHECK(split3 > 0);
  CHECK(split5 > 0);
}

TEST_CASE("double cover fiber preconditions") {
  Field F = Field::prime(11);
  auto gm3 = threefold_fixture(F, 0);
  auto lines = classified(gm3, FiberLabel::line);
  Subspace L0 = line_of_point(gm3, lines[0].v_bcoords);
  auto srep = stratify(gm3.lag, 8);
  // a stratum-1 point is rejected
  REQUIRE(!srep.witnesses[1].empty());
  for (const auto& v : srep.witnesses[1]) {
    Fel ph = F.zero();
    for (size_t j = 0; j < 6; ++j) ph = F.add(ph, F.mul(gm3.phi[j], v[j]));
    if (F.is_zero(ph)) continue;
    CHECK_THROWS_AS(double_cover_fiber(gm3, to_w_coords(gm3, L0), v), error);
    break;
  }
}

TEST_CASE("splitting section: containment, isotropy, and diagnosed failures") {
  Field F = Field::prime(11);
  auto gm = threefold_fixture(F, 0);
  auto lines = classified(gm, FiberLabel::line);
  REQUIRE(lines.size() >= 3);
  auto u0 = lines[0].v_bcoords;
  Subspace L0 = line_of_point(gm, u0);
  int ok = 0;
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto& vb = lines[i].v_bcoords;
    std::vector<Fel> u(5), w(5);
    for (size_t j = 0; j < 5; ++j) {
      u[j] = u0[j];
      w[j] = vb[j];
    }
    if (gm.W.contains(F, wedge2_b(F, u, w))) {
      // excluded: the two lines meet; the operation must say so
      CHECK_THROWS_WITH_AS(splitting_section(gm, L0, u0, vb), doctest::Contains("meets L0"),
                           error);
      continue;
    }
    Subspace S = splitting_section(gm, L0, u0, vb);
    CHECK(S.dim() == 5);
    CHECK(S.contains(F, L0));
    // also contains the line of v and sits inside the Pluecker quadric at v
    Subspace Lv = line_of_point(gm, vb);
    CHECK(S.contains(F, Lv));
    CHECK(plucker_quadric_full(gm, v6_of_b(gm, vb)).vanishes_on(F, S));
    ++ok;
  }
  CHECK(ok >= 2);
  // [v] = sigma point of L0 is rejected with its own message
  CHECK_THROWS_WITH_AS(splitting_section(gm, L0, u0, u0), doctest::Contains("sigma point"),
                       error);
}

TEST_CASE("exhaustive fiber coherence over F_5 for both tables") {
  Field F = Field::prime(5);
  // deterministic fixture search as in the battery
  std::optional<GMInstance> g3, g5;
  for (uint64_t s = 0; s < 50 && (!g3 || !g5); ++s) {
    auto inst = random_instance(s, F);
    if (!g5) {
      std::vector<Fel> phi(6, F.zero());
      phi[5] = F.one();
      try {
        auto cand = build_gm(inst, phi);
        if (cand.ell == 0) g5.emplace(std::move(cand));
      } catch (const error&) {}
    }
    if (!g3) {
      auto dr = dual_stratify(inst, 4);
      if (!dr.witnesses[2].empty()) g3.emplace(build_gm(inst, dr.witnesses[2][0]));
    }
  }
  REQUIRE((g3 && g5));
  size_t n3 = 0, n5 = 0;
  ProjectivePoints pts(F, 5);
  pts.for_each([&](const std::vector<Fel>& c) {
    auto fc3 = rho1_fiber_classify(*g3, c);
    CHECK(fc3.label == predicted_fiber_label(3, fc3.stratum, fc3.sigma1));
    ++n3;
    auto fc5 = rho1_fiber_classify(*g5, c);
    CHECK(fc5.label == predicted_fiber_label(5, fc5.stratum, false));
    ++n5;
  });
  CHECK(n3 == 781);
  CHECK(n5 == 781);
}

TEST_CASE("two-plane fibers carry isotropic planes on X") {
  Field F = Field::prime(11);
  auto gm5 = fivefold_fixture(F, 0);
  auto planes = classified(gm5, FiberLabel::two_planes, true);
  REQUIRE(!planes.empty());
  for (const auto& fc : planes) {
    REQUIRE(fc.components.size() == 2);
    for (const auto& K : fc.components) {
      CHECK(K.dim() == 3);
      // inside P(v ^ V5)
      CHECK(v_wedge_V5(gm5, fc.v_bcoords).contains(F, K));
      // on X: the defining quadric and all Pluecker quadrics vanish
      QuadraticForm q0(F, gm5.q0_on_W);
      CHECK(q0.vanishes_on(F, K));
    }
  }
}

TEST_CASE("sigma1 conic: kernels, smooth fit, finiteness shadow") {
  Field F = Field::prime(11);
  auto gm = threefold_fixture(F, 0);
  auto sc = sigma1_conic(gm);
  CHECK(sc.plane.dim() == 3);
  CHECK(rank(F, sc.conic_gram) == 3);
  // pencil members are skew with 1-dimensional kernels
  for (const Matrix& phi : sc.pencil) {
    CHECK(phi.add(F, phi.transpose()).is_zero(F));
    CHECK(kernel_basis(F, phi).rows() == 1);
  }
  // all sampled kernel points satisfy the fitted conic and lie on the plane
  QuadraticForm conic(F, sc.conic_gram);
  for (const auto& kp : sc.kernel_samples) {
    auto c = sc.plane.coordinates(F, kp);
    REQUIRE(c.has_value());
    CHECK(F.is_zero(conic.evaluate(F, *c)));
  }
  // membership test agrees with the parameterized kernels
  for (const auto& kp : sc.kernel_samples) CHECK(sigma1_contains(gm, kp));
  // finiteness shadow: not every conic point lies on Y2
  int on_y2 = 0;
  for (const auto& kp : sc.kernel_samples)
    if (stratum_of(gm.lag, v6_of_b(gm, kp)) >= 2) ++on_y2;
  CHECK(on_y2 < int(sc.kernel_samples.size()));
}

TEST_CASE("sigma1 conic over F_5 borrows extension parameters") {
  Field F = Field::prime(5);
  std::optional<GMInstance> g3;
  for (uint64_t s = 0; s < 50 && !g3; ++s) {
    auto inst = random_instance(s, F);
    auto dr = dual_stratify(inst, 4);
    if (!dr.witnesses[2].empty()) g3.emplace(build_gm(inst, dr.witnesses[2][0]));
  }
  REQUIRE(g3.has_value());
  auto sc = sigma1_conic(*g3);
  CHECK(sc.kernel_samples.size() == 6);  // the q+1 rational pencil parameters
  for (const auto& kp : sc.kernel_samples) CHECK(sigma1_contains(*g3, kp));
}

TEST_CASE("line of point and sigma of line are inverse") {
  Field F = Field::prime(11);
  auto gm = threefold_fixture(F, 0);
  auto lines = classified(gm, FiberLabel::line);
  REQUIRE(!lines.empty());
  for (const auto& fc : lines) {
    Subspace L = line_of_point(gm, fc.v_bcoords);
    CHECK(L.dim() == 2);
    auto so = sigma_of_line(gm, L);
    for (size_t j = 0; j < 5; ++j) CHECK(F.eq(so.v1_bcoords[j], fc.v_bcoords[j]));
    // the flag: L = P(V1 ^ V3) and V1 inside V3
    CHECK(so.V3_b.dim() == 3);
    CHECK(so.V3_b.contains(F, so.v1_bcoords));
    // niceness: sigma image off Sigma1 by construction of the label
    CHECK(is_nice_line(gm, L));
  }
  // errors: stratum-1 point
  auto dbl = classified(gm, FiberLabel::double_point);
  if (!dbl.empty()) CHECK_THROWS_AS(line_of_point(gm, dbl[0].v_bcoords), error);
  // two-line points sit on Sigma1
  auto two = classified(gm, FiberLabel::two_lines);
  if (!two.empty()) CHECK_THROWS_WITH_AS(line_of_point(gm, two[0].v_bcoords),
                                         doctest::Contains("Sigma1"), error);
}

TEST_CASE("predicted labels reject out-of-table strata") {
  CHECK_THROWS_AS(predicted_fiber_label(5, 4, false), error);
  CHECK_THROWS_AS(predicted_fiber_label(3, 4, false), error);
  CHECK_THROWS_AS(predicted_fiber_label(4, 0, false), error);
}
