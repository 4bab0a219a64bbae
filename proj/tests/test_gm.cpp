#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epw/gm.hpp"
#include "epw/projective.hpp"
#include "epw/rng.hpp"

using namespace epw;

namespace {

std::vector<Fel> rand_v6(const Field& F, SplitMix64& rng) {
  std::vector<Fel> v(6);
  bool nz = false;
  for (auto& x : v) {
    x = F.element_from_index(rng.below(F.size()));
    nz = nz || !F.is_zero(x);
  }
  if (!nz) v[0] = F.one();
  return v;
}

GMInstance fivefold_fixture(const Field& F, uint64_t seed) {
  auto inst = random_instance(seed, F);
  std::vector<Fel> phi(6, F.zero());
  phi[5] = F.one();
  return build_gm(inst, phi);
}

GMInstance threefold_fixture(const Field& F, uint64_t seed) {
  auto inst = random_instance(seed, F);
  auto rep = dual_stratify(inst, 8);
  REQUIRE(!rep.witnesses[2].empty());
  return build_gm(inst, rep.witnesses[2][0]);
}

}  // namespace

TEST_CASE("build_gm dimension bookkeeping") {
  Field F = Field::prime(11);
  auto gm5 = fivefold_fixture(F, 0);
  CHECK(gm5.ell == 0);
  CHECK(gm5.n == 5);
  CHECK(gm5.W.dim() == 10);

  auto gm3 = threefold_fixture(F, 0);
  CHECK(gm3.ell == 2);
  CHECK(gm3.n == 3);
  CHECK(gm3.W.dim() == 8);

  // ell >= 4 is rejected: wedge^3 V5 itself as A has ell = 10 at its V5
  Matrix gens(10, 20);
  for (size_t r = 0; r < 10; ++r) gens.at(r, 10 + r) = F.one();
  LagrangianInstance w3(F, Subspace(F, 20, gens));
  w3.is_lagrangian = true;
  std::vector<Fel> e1s(6, F.zero());
  e1s[0] = F.one();
  CHECK_THROWS_AS(build_gm(w3, e1s), error);
}

TEST_CASE("W is the annihilator of I under the vol5 pairing") {
  Field F = Field::prime(7);
  auto gm = threefold_fixture(F, 1);
  // every W vector pairs to zero with every I vector
  const auto& T = ext::SubsetTables::get(5);
  for (size_t i = 0; i < gm.I3.dim(); ++i)
    for (size_t w = 0; w < gm.W.dim(); ++w) {
      Fel acc = F.zero();
      for (size_t t = 0; t < 10; ++t) {
        uint8_t tm = T.masks[3][t];
        uint8_t pm = uint8_t(0x1f & ~tm);
        size_t p = size_t(T.pos[2][pm]);
        Fel term = F.mul(gm.I3.basis().at(i, t), gm.W.basis().at(w, p));
        if (ext::wedge_sign(tm, pm) < 0) term = F.neg(term);
        acc = F.add(acc, term);
      }
      CHECK(F.is_zero(acc));
    }
}

TEST_CASE("plucker quadric values from the contract") {
  Field Q = Field::rationals();
  auto inst = random_instance(0, Q);
  // V5 = <e2..e6> via phi = e1*
  std::vector<Fel> phi(6, Q.zero());
  phi[0] = Q.one();
  // this random instance may have ell >= 4 at that hyperplane over Q; build
  // directly over a field/seed combination where it works
  std::optional<GMInstance> gm;
  for (uint64_t s = 0; s < 6 && !gm; ++s) {
    auto cand = random_instance(s, Q);
    try {
      gm.emplace(build_gm(cand, phi));
    } catch (const error&) {}
  }
  REQUIRE(gm.has_value());
  // b basis of V5 = e2..e6 in RREF order; q_{e2}(e3^e4) = 0 and
  // q_{e2}(e3^e4 + e5^e6) = 2 vol5(e23456)
  const auto& T = ext::SubsetTables::get(5);
  // e2 = b_0; e3^e4 = pair {1,2}; e5^e6 = pair {3,4} in b-indices
  std::vector<Fel> e2(6, Q.zero());
  e2[1] = Q.one();
  auto qf = plucker_quadric_full(*gm, e2);
  std::vector<Fel> w(10, Q.zero());
  w[size_t(T.pos[2][(1 << 1) | (1 << 2)])] = Q.one();
  CHECK(Q.is_zero(qf.evaluate(Q, w)));
  w[size_t(T.pos[2][(1 << 3) | (1 << 4)])] = Q.one();
  CHECK(Q.eq(qf.evaluate(Q, w), Q.from_int(2)));
}

TEST_CASE("kernel of a pluecker quadric on the full pair space is v ^ V5") {
  Field F = Field::prime(11);
  auto gm = fivefold_fixture(F, 0);
  SplitMix64 rng(3);
  for (int t = 0; t < 10; ++t) {
    std::vector<Fel> b(5);
    bool nz = false;
    for (auto& x : b) {
      x = F.element_from_index(rng.below(11));
      nz = nz || !F.is_zero(x);
    }
    if (!nz) continue;
    auto q = plucker_quadric_full(gm, v6_of_b(gm, b));
    CHECK(q.rank(F) == 6);
    Subspace ker = q.kernel(F);
    CHECK(ker.dim() == 4);
    CHECK(ker.equals(F, v_wedge_V5(gm, b)));
  }
  // v outside V5 is rejected
  CHECK_THROWS_AS(plucker_quadric_full(gm, gm.v0), error);
}

TEST_CASE("kernel formula: corank(quadric_at) equals the stratum") {
  Field F = Field::prime(11);
  auto gm3 = threefold_fixture(F, 0);
  auto gm5 = fivefold_fixture(F, 0);
  SplitMix64 rng(8);
  int checked = 0;
  for (int t = 0; t < 80; ++t) {
    auto v = rand_v6(F, rng);
    for (const GMInstance* gm : {&gm3, &gm5}) {
      Fel ph = F.zero();
      for (size_t j = 0; j < 6; ++j) ph = F.add(ph, F.mul(gm->phi[j], v[j]));
      if (F.is_zero(ph)) continue;
      CHECK(quadric_at(*gm, v).corank(F) == stratum_of(gm->lag, v));
      ++checked;
    }
  }
  CHECK(checked >= 100);
  // v inside V5 is rejected
  std::vector<Fel> b0(5, F.zero());
  b0[0] = F.one();
  CHECK_THROWS_AS(quadric_at(gm3, v6_of_b(gm3, b0)), error);
}

TEST_CASE("quadric family is linear: affine chart and homogeneity") {
  Field F = Field::prime(13);
  auto gm = threefold_fixture(F, 2);
  auto q0 = quadric_at(gm, gm.v0);
  SplitMix64 rng(12);
  for (int t = 0; t < 25; ++t) {
    std::vector<Fel> ub(5);
    bool nz = false;
    for (auto& x : ub) {
      x = F.element_from_index(rng.below(13));
      nz = nz || !F.is_zero(x);
    }
    if (!nz) continue;
    auto u = v6_of_b(gm, ub);
    std::vector<Fel> v(6);
    for (size_t j = 0; j < 6; ++j) v[j] = F.add(gm.v0[j], u[j]);
    auto qv = quadric_at(gm, v);
    CHECK(qv.gram().sub(F, q0.gram()).equals(F, plucker_quadric(gm, u).gram()));
  }
  // scaling the reference vector scales the form
  Fel lam = F.from_int(5);
  std::vector<Fel> lv(6);
  for (size_t j = 0; j < 6; ++j) lv[j] = F.mul(lam, gm.v0[j]);
  CHECK(quadric_at(gm, lv).gram().equals(F, q0.gram().scale(F, lam)));
}

TEST_CASE("X(F_q) sampling: Grassmannian counts and smooth points") {
  Field F3 = Field::prime(3);
  std::optional<GMInstance> gm;
  for (uint64_t s = 1; s < 8 && !gm; ++s) {
    auto inst = random_instance(s, F3);
    std::vector<Fel> phi(6, F3.zero());
    phi[5] = F3.one();
    try {
      auto cand = build_gm(inst, phi);
      if (cand.ell == 0) gm.emplace(std::move(cand));
    } catch (const error&) {}
  }
  REQUIRE(gm.has_value());
  auto rep = sample_points(*gm);
  CHECK(rep.grassmannian_points == 1210);  // Gaussian binomial [5 choose 2]_3
  CHECK(!rep.points.empty());
  for (const auto& p : rep.points) {
    // every reported point satisfies the membership conditions by
    // construction; smoothness means Jacobian rank 4 of the six quadrics
    CHECK(p.jacobian_rank <= 4);
    CHECK(p.smooth == (p.jacobian_rank == 4));
  }
  uint64_t smooth = 0;
  for (const auto& p : rep.points) smooth += p.smooth;
  CHECK(smooth == rep.points.size());  // generic fivefold data is smooth
}

TEST_CASE("a fabricated instance with a decomposable vector shows a singular point") {
  // negative control: over F_5 some seeded graph instances contain a
  // decomposable vector (the scan certifies it), and their X exhibits a
  // rational point with deficient Jacobian rank when one exists
  Field F = Field::prime(5);
  bool exhibited = false;
  int with_witness = 0;
  for (uint64_t seed = 0; seed < 40 && !exhibited; ++seed) {
    auto inst = random_instance(seed, F);
    auto scan = decomposable_search(inst, 1, 3000);
    if (!scan.witness_found) continue;
    ++with_witness;
    std::vector<Fel> phi(6, F.zero());
    phi[5] = F.one();
    std::optional<GMInstance> gm;
    try {
      gm.emplace(build_gm(inst, phi));
    } catch (const error&) {
      continue;
    }
    auto rep = sample_points(*gm);
    for (const auto& p : rep.points)
      if (!p.smooth) exhibited = true;
  }
  CHECK(with_witness > 0);
  CHECK(exhibited);
}

TEST_CASE("hilbert polynomial of linear and quadric sections") {
  // P^4 linear section: the threefold curve fiber
  auto h3 = hilbert_polynomial(11, 0);
  CHECK(h3.table == std::vector<long>({1, 5, 10, 15, 20, 25, 30}));
  REQUIRE(h3.poly.size() == 2);
  CHECK(h3.poly[0] == Rat(0));
  CHECK(h3.poly[1] == Rat(5));

  // P^5 linear section: the fivefold surface fiber
  auto h5 = hilbert_polynomial(10, 0);
  CHECK(h5.table == std::vector<long>({1, 6, 16, 31, 51, 76, 106}));
  REQUIRE(h5.poly.size() == 3);
  CHECK(h5.poly[0] == Rat(1));
  CHECK(h5.poly[1] == Rat(5, 2));
  CHECK(h5.poly[2] == Rat(5, 2));

  // ordinary GM threefold (8 coordinates on P(W) = P^7 plus one quadric cut):
  // degree-3 polynomial with leading coefficient 10/3!, i.e. degree 10
  auto hgm3 = hilbert_polynomial(8, 1);
  REQUIRE(hgm3.poly.size() == 4);
  CHECK(hgm3.poly[3] == Rat(10, 6));
  // and the fivefold in P^9 cut by one quadric has degree 5 and leading 10/5!
  auto hgm5 = hilbert_polynomial(6, 1);
  REQUIRE(hgm5.poly.size() == 6);
  CHECK(hgm5.poly[5] == Rat(10, 120));
  // degree = dimension of the section
  auto hcgr = hilbert_polynomial(5, 0);  // the cone itself: dimension 7
  CHECK(hcgr.poly.size() == 8);
}

TEST_CASE("hilbert polynomial evaluates consistently with its table for large t") {
  for (auto [h, c] : {std::pair<int, int>{11, 0}, {10, 0}, {8, 1}, {6, 1}}) {
    auto hd = hilbert_polynomial(h, c);
    // the polynomial and the function agree at t = 5, 6 (past the regularity
    // of these small sections)
    for (long t = 5; t <= 6; ++t) CHECK(eval_hilbert_poly(hd, t) == Rat(hd.table[size_t(t)]));
  }
}

TEST_CASE("gm instances are consistent over the rationals") {
  Field Q = Field::rationals();
  std::optional<GMInstance> gm;
  for (uint64_t s = 0; s < 6 && !gm; ++s) {
    auto inst = random_instance(s, Q);
    std::vector<Fel> phi(6, Q.zero());
    phi[5] = Q.one();
    try {
      auto cand = build_gm(inst, phi);
      if (cand.ell == 0) gm.emplace(std::move(cand));
    } catch (const error&) {}
  }
  REQUIRE(gm.has_value());
  // kernel formula at a handful of rational points
  SplitMix64 rng(2);
  int checked = 0;
  for (int t = 0; t < 20 && checked < 5; ++t) {
    std::vector<Fel> v(6);
    for (auto& x : v) x = Q.from_int(long(rng.below(9)) - 4);
    Fel ph = Q.zero();
    for (size_t j = 0; j < 6; ++j) ph = Q.add(ph, Q.mul(gm->phi[j], v[j]));
    if (Q.is_zero(ph)) continue;
    CHECK(quadric_at(*gm, v).corank(Q) == stratum_of(gm->lag, v));
    ++checked;
  }
  CHECK(checked >= 3);
}
