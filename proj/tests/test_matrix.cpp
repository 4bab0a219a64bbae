#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epw/quadform.hpp"
#include "epw/rng.hpp"

using namespace epw;

namespace {

Matrix random_matrix(const Field& F, SplitMix64& rng, size_t r, size_t c) {
  Matrix m(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) m.at(i, j) = F.element_from_index(rng.below(F.size()));
  return m;
}

// independent oracle: determinant by cofactor expansion, no elimination
Fel det_minor_expansion(const Field& F, const Matrix& m) {
  size_t n = m.rows();
  if (n == 1) return m.at(0, 0);
  Fel acc = F.zero();
  for (size_t j = 0; j < n; ++j) {
    if (F.is_zero(m.at(0, j))) continue;
    Matrix sub(n - 1, n - 1);
    for (size_t i = 1; i < n; ++i) {
      size_t cc = 0;
      for (size_t k = 0; k < n; ++k) {
        if (k == j) continue;
        sub.at(i - 1, cc++) = m.at(i, k);
      }
    }
    Fel term = F.mul(m.at(0, j), det_minor_expansion(F, sub));
    acc = (j % 2 == 0) ? F.add(acc, term) : F.sub(acc, term);
  }
  return acc;
}

}  // namespace

TEST_CASE("rref trivial cases") {
  Field Q = Field::rationals();
  Matrix id = Matrix::identity(Q, 2);
  auto [r, rk] = rref(Q, id);
  CHECK(rk == 2);
  CHECK(r.equals(Q, id));

  Matrix m(2, 2);
  m.at(0, 0) = Q.from_int(1);
  m.at(0, 1) = Q.from_int(2);
  m.at(1, 0) = Q.from_int(2);
  m.at(1, 1) = Q.from_int(4);
  auto [r2, rk2] = rref(Q, m);
  CHECK(rk2 == 1);
  CHECK(Q.eq(r2.at(0, 0), Q.one()));
  CHECK(Q.eq(r2.at(0, 1), Q.from_int(2)));
  CHECK(Q.is_zero(r2.at(1, 0)));
  CHECK(Q.is_zero(r2.at(1, 1)));
}

TEST_CASE("random 10x15 over F_11 has rank 10; 4x4 minors agree with expansion oracle") {
  Field F = Field::prime(11);
  SplitMix64 rng(42);
  Matrix m = random_matrix(F, rng, 10, 15);
  CHECK(rank(F, m) == 10);
  // verify elimination-based rank detection of 4x4 submatrices against the
  // brute-force minor expansion
  for (int trial = 0; trial < 25; ++trial) {
    Matrix sub(4, 4);
    size_t r0 = rng.below(7), c0 = rng.below(12);
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = 0; j < 4; ++j) sub.at(i, j) = m.at(r0 + i, c0 + j);
    Fel d_fast = sub.det(F);
    Fel d_slow = det_minor_expansion(F, sub);
    CHECK(F.eq(d_fast, d_slow));
    CHECK((rank(F, sub) == 4) == !F.is_zero(d_slow));
  }
}

TEST_CASE("rref idempotence and rank-nullity on random matrices over all field kinds") {
  for (Field F : {Field::prime(7), Field::prime(13), Field::prime_square(5)}) {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      Matrix m = random_matrix(F, rng, 5 + rng.below(4), 6 + rng.below(5));
      auto [r1, rk] = rref(F, m);
      auto [r2, rk2] = rref(F, r1);
      CHECK(rk == rk2);
      CHECK(r1.equals(F, r2));
      Matrix K = kernel_basis(F, m);
      CHECK(rk + K.rows() == m.cols());
      // kernel rows actually annihilate
      for (size_t i = 0; i < K.rows(); ++i) {
        std::vector<Fel> x(m.cols());
        for (size_t j = 0; j < m.cols(); ++j) x[j] = K.at(i, j);
        auto y = m.apply(F, x);
        for (const Fel& v : y) CHECK(F.is_zero(v));
      }
    }
  }
}

TEST_CASE("kernel: identity and zero matrix") {
  Field F = Field::prime(7);
  CHECK(kernel_basis(F, Matrix::identity(F, 4)).rows() == 0);
  CHECK(kernel_basis(F, Matrix::zero(5, 5)).rows() == 5);
}

TEST_CASE("skew 5x5 over F_7 has odd-dimensional kernel; parity cross-checked by 4x4 principal minors") {
  Field F = Field::prime(7);
  SplitMix64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix m(5, 5);
    for (size_t i = 0; i < 5; ++i)
      for (size_t j = i + 1; j < 5; ++j) {
        Fel v = F.element_from_index(rng.below(7));
        m.at(i, j) = v;
        m.at(j, i) = F.neg(v);
      }
    size_t k = kernel_basis(F, m).rows();
    CHECK(k >= 1);
    CHECK(k % 2 == 1);
    // Pfaffian-style brute force: every odd-size skew determinant vanishes
    CHECK(F.is_zero(det_minor_expansion(F, m)));
  }
}

TEST_CASE("subspace modular law over every supported finite field") {
  for (Field F : {Field::prime(5), Field::prime(7), Field::prime_square(3)}) {
    SplitMix64 rng(3);
    for (int trial = 0; trial < 15; ++trial) {
      Matrix gu = random_matrix(F, rng, 10, 20), gv = random_matrix(F, rng, 10, 20);
      Subspace u(F, 20, gu), v(F, 20, gv);
      Subspace i = intersect(F, u, v), s = sum(F, u, v);
      CHECK(u.dim() + v.dim() == i.dim() + s.dim());
      CHECK(s.contains(F, u));
      CHECK(s.contains(F, v));
      CHECK(u.contains(F, i));
      CHECK(v.contains(F, i));
    }
  }
}

TEST_CASE("subspace trivial identities and annihilator involution") {
  Field F = Field::prime(7);
  SplitMix64 rng(5);
  Matrix g = random_matrix(F, rng, 4, 9);
  Subspace u(F, 9, g);
  CHECK(intersect(F, u, u).equals(F, u));
  CHECK(sum(F, u, u).equals(F, u));
  Subspace ann = annihilator(F, u);
  CHECK(ann.dim() == 9 - u.dim());
  CHECK(annihilator(F, ann).equals(F, u));

  // complementary coordinate subspaces
  Matrix a(2, 4), b(2, 4);
  a.at(0, 0) = a.at(1, 1) = F.one();
  b.at(0, 2) = b.at(1, 3) = F.one();
  Subspace sa(F, 4, a), sb(F, 4, b);
  CHECK(intersect(F, sa, sb).dim() == 0);
  CHECK(sum(F, sa, sb).dim() == 4);
  CHECK_THROWS_AS(intersect(F, sa, u), error);
}

TEST_CASE("corank_reduce contract") {
  Field F = Field::prime(7);
  // nondegenerate form: kernel 0, reduced = original
  Matrix g = Matrix::identity(F, 3);
  QuadraticForm q(F, g);
  auto [k, red] = corank_reduce(F, q);
  CHECK(k.dim() == 0);
  CHECK(red.gram().equals(F, g));
  // zero form on dim 3
  QuadraticForm z(F, Matrix::zero(3, 3));
  auto [kz, rz] = corank_reduce(F, z);
  CHECK(kz.dim() == 3);
  CHECK(rz.dim() == 0);
  // rank-2 form x.y on dim 4: kernel dim 2, reduced is a hyperbolic plane
  Matrix h(4, 4);
  h.at(0, 1) = h.at(1, 0) = F.one();
  QuadraticForm xy(F, h);
  auto [kh, rh] = corank_reduce(F, xy);
  CHECK(kh.dim() == 2);
  CHECK(rh.dim() == 2);
  CHECK(rh.corank(F) == 0);
  // hyperbolic <=> has a nonzero isotropic vector (2-dim nondegenerate case)
  bool isotropic = false;
  for (uint64_t i = 0; i < 49 && !isotropic; ++i) {
    std::vector<Fel> v = {F.element_from_index(i % 7), F.element_from_index(i / 7)};
    if (F.is_zero(v[0]) && F.is_zero(v[1])) continue;
    isotropic = F.is_zero(rh.evaluate(F, v));
  }
  CHECK(isotropic);
}

TEST_CASE("congruence invariance of corank") {
  // diagonalization by brute-force congruence: corank is invariant under
  // random invertible basis change
  for (Field F : {Field::prime(7), Field::prime(11)}) {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      size_t n = 4 + rng.below(3);
      Matrix g(n, n);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
          Fel v = F.element_from_index(rng.below(F.size()));
          g.at(i, j) = v;
          g.at(j, i) = v;
        }
      QuadraticForm q(F, g);
      Matrix t = random_matrix(F, rng, n, n);
      while (rank(F, t) < n) t = random_matrix(F, rng, n, n);
      QuadraticForm q2 = q.pullback(F, t);
      CHECK(q.corank(F) == q2.corank(F));
    }
  }
}

TEST_CASE("solve and inverse") {
  Field F = Field::prime(13);
  SplitMix64 rng(23);
  Matrix m = random_matrix(F, rng, 6, 6);
  while (rank(F, m) < 6) m = random_matrix(F, rng, 6, 6);
  std::vector<Fel> b(6);
  for (auto& x : b) x = F.element_from_index(rng.below(13));
  auto x = solve(F, m, b);
  REQUIRE(x.has_value());
  auto back = m.apply(F, *x);
  for (size_t i = 0; i < 6; ++i) CHECK(F.eq(back[i], b[i]));
  Matrix mi = inverse(F, m);
  CHECK(m.mul(F, mi).equals(F, Matrix::identity(F, 6)));
}
