#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epw/epw_strata.hpp"
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

}  // namespace

TEST_CASE("stratum examples on the coordinate Lagrangian L") {
  Field F = Field::prime(11);
  auto L = graph_lagrangian(F, Matrix::zero(10, 10));
  std::vector<Fel> e1(6, F.zero()), e2(6, F.zero());
  e1[0] = F.one();
  e2[1] = F.one();
  CHECK(stratum_of(L, e1) == 10);  // A = F_{e1}
  CHECK(stratum_of(L, e2) == 4);   // span{e_12j}
  CHECK_THROWS_AS(stratum_of(L, std::vector<Fel>(6, F.zero())), error);
}

TEST_CASE("stratum double path and scale invariance on random instances") {
  for (Field F : {Field::prime(7), Field::prime(13), Field::prime_square(3)}) {
    auto inst = random_instance(3, F);
    SplitMix64 rng(17);
    for (int t = 0; t < 40; ++t) {
      auto v = rand_v6(F, rng);
      size_t k = stratum_of(inst, v);  // double-path agreement asserted inside
      Fel c = F.element_from_index(1 + rng.below(F.size() - 1));
      auto vs = v;
      for (auto& x : vs) x = F.mul(x, c);
      CHECK(stratum_of(inst, vs) == k);
    }
  }
}

TEST_CASE("stratum over the rationals") {
  Field Q = Field::rationals();
  auto inst = random_instance(9, Q);
  SplitMix64 rng(5);
  for (int t = 0; t < 10; ++t) {
    std::vector<Fel> v(6);
    for (auto& x : v) x = Q.from_int(long(rng.below(19)) - 9);
    bool nz = false;
    for (auto& x : v) nz = nz || !Q.is_zero(x);
    if (!nz) continue;
    size_t k = stratum_of(inst, v);
    CHECK(k <= 10);
  }
}

TEST_CASE("stratify over F_3: totals and the L instance") {
  Field F3 = Field::prime(3);
  auto inst = random_instance(1, F3);
  auto rep = stratify(inst);
  CHECK(rep.total == 364);  // (3^6 - 1)/2
  uint64_t sum = 0;
  for (auto c : rep.counts) sum += c;
  CHECK(sum == 364);
  CHECK(rep.exhaustive);

  auto L = graph_lagrangian(F3, Matrix::zero(10, 10));
  auto repL = stratify(L);
  CHECK(repL.counts[10] == 1);
  CHECK(repL.count_at_least(4) > 0);
  // the unique k=10 witness is [e1]
  REQUIRE(repL.witnesses[10].size() == 1);
  auto w = repL.witnesses[10][0];
  CHECK(F3.eq(w[0], F3.one()));
  for (int i = 1; i < 6; ++i) CHECK(F3.is_zero(w[i]));
}

TEST_CASE("NDV instances over F_11 have empty fourth stratum") {
  Field F = Field::prime(11);
  auto inst = random_instance(0, F);
  auto scan = decomposable_search(inst, 1, 20000);
  REQUIRE(!scan.witness_found);
  auto rep = stratify(inst);
  CHECK(rep.total == 177156);
  CHECK(rep.count_at_least(4) == 0);
}

TEST_CASE("witness lists are canonical prefixes and capped") {
  Field F = Field::prime(5);
  auto inst = random_instance(2, F);
  auto rep4 = stratify(inst, 4);
  auto rep32 = stratify(inst, 32);
  CHECK(rep4.counts == rep32.counts);
  for (size_t k = 0; k <= 10; ++k) {
    CHECK(rep4.witnesses[k].size() == std::min<size_t>(4, rep32.witnesses[k].size()));
    for (size_t i = 0; i < rep4.witnesses[k].size(); ++i)
      for (size_t j = 0; j < 6; ++j)
        CHECK(F.eq(rep4.witnesses[k][i][j], rep32.witnesses[k][i][j]));
  }
}

TEST_CASE("stratify is jobs-independent") {
  Field F = Field::prime(5);
  auto inst = random_instance(7, F);
  auto a = stratify(inst, 8, 1);
  auto b = stratify(inst, 8, 4);
  CHECK(a.counts == b.counts);
  for (size_t k = 0; k <= 10; ++k) {
    REQUIRE(a.witnesses[k].size() == b.witnesses[k].size());
    for (size_t i = 0; i < a.witnesses[k].size(); ++i)
      for (size_t j = 0; j < 6; ++j) CHECK(F.eq(a.witnesses[k][i][j], b.witnesses[k][i][j]));
  }
}

TEST_CASE("dual stratum examples") {
  Field F = Field::prime(7);
  auto L = graph_lagrangian(F, Matrix::zero(10, 10));
  std::vector<Fel> e1s(6, F.zero());
  e1s[0] = F.one();
  // A = L = e1 ^ wedge^2<e2..e6> has no part inside wedge^3<e2..e6>
  CHECK(dual_stratum_of(L, e1s) == 0);

  // A = wedge^3 V5 itself: build the subspace spanned by triples avoiding e1
  Matrix gens(10, 20);
  for (size_t r = 0; r < 10; ++r) gens.at(r, 10 + r) = F.one();
  Subspace A(F, 20, gens);
  REQUIRE(validate_lagrangian(F, A));
  LagrangianInstance w3(F, A);
  w3.is_lagrangian = true;
  CHECK(dual_stratum_of(w3, e1s) == 10);
}

TEST_CASE("dual stratification agrees with the annihilator representation") {
  // dual_stratum_of checks the two representations against each other at
  // every call; exercise it across a sample and against dual_stratify counts
  Field F = Field::prime(5);
  auto inst = random_instance(0, F);
  auto rep = dual_stratify(inst);
  CHECK(rep.total == 3906);  // (5^6 - 1)/4
  CHECK(rep.dual);
  uint64_t c2 = 0;
  ProjectivePoints pts(F, 6);
  pts.for_each([&](const std::vector<Fel>& phi) {
    if (dual_stratum_of(inst, phi) == 2) ++c2;
  });
  CHECK(c2 == rep.counts[2]);
}

TEST_CASE("hyperplane slice: counts and agreement with stratum_of") {
  Field F = Field::prime(5);
  auto inst = random_instance(4, F);
  std::vector<Fel> phi(6, F.zero());
  phi[5] = F.one();
  auto pts = hyperplane_slice(inst, phi);
  CHECK(pts.size() == 781);  // (5^5 - 1)/4
  for (const auto& sp : pts) {
    CHECK(F.is_zero(sp.point[5]));  // lies in the hyperplane
    CHECK(sp.k == stratum_of(inst, sp.point));
  }
}

TEST_CASE("sextic on a line: degree, roots, and multiplicity at strata") {
  Field F = Field::prime(13);
  auto inst = random_instance(0, F);
  SplitMix64 rng(23);
  int deg6 = 0;
  for (int trial = 0; trial < 8; ++trial) {
    auto v0 = rand_v6(F, rng), v1 = rand_v6(F, rng);
    Matrix two(2, 6);
    for (size_t j = 0; j < 6; ++j) {
      two.at(0, j) = v0[j];
      two.at(1, j) = v1[j];
    }
    if (rank(F, two) != 2) continue;
    auto sx = sextic_on_line(inst, v0, v1);
    int d = degree(F, sx.s);
    CHECK(d <= 6);
    // degree drops exactly when the infinity point lies on the sextic
    CHECK((d == 6) == (stratum_of(inst, v1) == 0));
    if (d == 6) ++deg6;
    for (uint64_t t = 0; t < 13; ++t) {
      Fel tt = F.element_from_index(t);
      std::vector<Fel> v(6);
      for (size_t j = 0; j < 6; ++j) v[j] = F.add(v0[j], F.mul(tt, v1[j]));
      CHECK(F.is_zero(eval(F, sx.s, tt)) == (stratum_of(inst, v) >= 1));
    }
  }
  CHECK(deg6 >= 5);
}

TEST_CASE("sextic vanishes to order >= 2 at stratum-2 points of the line") {
  Field F = Field::prime(11);
  auto inst = random_instance(0, F);
  auto rep = stratify(inst, 8);
  REQUIRE(!rep.witnesses[2].empty());
  SplitMix64 rng(31);
  int checked = 0;
  for (const auto& w : rep.witnesses[2]) {
    // a line through the stratum-2 point w: v(t) = w + t u
    auto u = rand_v6(F, rng);
    Matrix two(2, 6);
    for (size_t j = 0; j < 6; ++j) {
      two.at(0, j) = w[j];
      two.at(1, j) = u[j];
    }
    if (rank(F, two) != 2) continue;
    auto sx = sextic_on_line(inst, w, u);
    // t = 0 is the point w with stratum 2: the root there has multiplicity >= 2
    auto roots = roots_with_multiplicity(F, sx.s);
    bool found = false;
    for (auto& [r, m] : roots)
      if (F.is_zero(r)) {
        found = true;
        CHECK(m >= 2);
      }
    CHECK(found);
    if (++checked >= 4) break;
  }
  CHECK(checked >= 2);
}

TEST_CASE("sextic chart independence") {
  Field F = Field::prime(13);
  auto inst = random_instance(5, F);
  SplitMix64 rng(77);
  auto v0 = rand_v6(F, rng), v1 = rand_v6(F, rng);
  std::optional<Poly> first;
  int charts = 0;
  for (int c = 0; c < 6; ++c) {
    try {
      auto sx = sextic_on_line(inst, v0, v1, c);
      ++charts;
      if (!first) {
        first = sx.s;
        continue;
      }
      int da = degree(F, *first), db = degree(F, sx.s);
      REQUIRE(da == db);
      Poly a = scale(F, *first, F.inv(first->c[size_t(da)]));
      Poly b = scale(F, sx.s, F.inv(sx.s.c[size_t(db)]));
      for (size_t i = 0; i < a.c.size(); ++i) CHECK(F.eq(a.c[i], b.c[i]));
    } catch (const error&) {
    }
  }
  CHECK(charts >= 2);
}

TEST_CASE("sextic over F_5 lifts to the quadratic extension; F_3 reports the node shortage") {
  Field F5 = Field::prime(5);
  auto inst5 = random_instance(2, F5);
  SplitMix64 rng(3);
  auto v0 = rand_v6(F5, rng), v1 = rand_v6(F5, rng);
  auto sx = sextic_on_line(inst5, v0, v1);
  CHECK(sx.used_extension);
  CHECK(degree(F5, sx.s) <= 6);
  // roots still match strata pointwise over the base field
  for (uint64_t t = 0; t < 5; ++t) {
    Fel tt = F5.element_from_index(t);
    std::vector<Fel> v(6);
    for (size_t j = 0; j < 6; ++j) v[j] = F5.add(v0[j], F5.mul(tt, v1[j]));
    CHECK(F5.is_zero(eval(F5, sx.s, tt)) == (stratum_of(inst5, v) >= 1));
  }

  Field F3 = Field::prime(3);
  auto inst3 = random_instance(2, F3);
  std::vector<Fel> a(6, F3.zero()), b(6, F3.zero());
  a[0] = F3.one();
  b[1] = F3.one();
  CHECK_THROWS_WITH_AS(sextic_on_line(inst3, a, b),
                       doctest::Contains("fewer than 11 field points"), error);
}

TEST_CASE("sextic rejects dependent lines") {
  Field F = Field::prime(13);
  auto inst = random_instance(0, F);
  std::vector<Fel> v(6, F.zero());
  v[2] = F.one();
  auto w = v;
  for (auto& x : w) x = F.mul(x, F.from_int(2));
  CHECK_THROWS_AS(sextic_on_line(inst, v, w), error);
}

TEST_CASE("strata nest: counts are single-k and consistent") {
  Field F = Field::prime(5);
  auto inst = random_instance(11, F);
  auto rep = stratify(inst);
  uint64_t total = 0;
  for (size_t k = 0; k <= 10; ++k) total += rep.counts[k];
  CHECK(total == rep.total);
  CHECK(rep.count_at_least(0) == rep.total);
  for (size_t k = 0; k < 10; ++k)
    CHECK(rep.count_at_least(k + 1) <= rep.count_at_least(k));
}
