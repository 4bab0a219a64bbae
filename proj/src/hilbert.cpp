#include "epw/hilbert.hpp"

namespace epw {

namespace {

// integer polynomial helpers on dense coefficient vectors (low degree first)
std::vector<long> poly_mul(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// exact division by (1 - s); requires divisibility
std::vector<long> divide_by_one_minus_s(const std::vector<long>& n) {
  // n(s) = (1-s) q(s): q_i = n_i + q_{i-1}
  std::vector<long> q(n.size() ? n.size() - 1 : 0, 0);
  long carry = 0;
  for (size_t i = 0; i + 1 < n.size(); ++i) {
    carry = n[i] + carry;
    q[i] = carry;
  }
  return q;
}

bool divisible_by_one_minus_s(const std::vector<long>& n) {
  long sum = 0;
  for (long c : n) sum += c;  // value at s = 1
  return sum == 0;
}

Rat binom_rat(long top_shift, int d) {
  // C(t + top_shift, d) with t symbolic is handled elsewhere; this evaluates
  // C(n, d) for integer n (zero when n < d in the combinatorial convention
  // used by series truncation: negative n gives 0 here because the series
  // coefficients below the valuation never appear)
  if (d < 0) return Rat(0);
  Rat r(1);
  for (int i = 0; i < d; ++i) r = r * Rat(top_shift - i) / Rat(i + 1);
  return r;
}

}  // namespace

HilbertData hilbert_polynomial(int h, int c) {
  int D = 16 - h;
  if (D < 0) throw error("hilbert_polynomial: too many hyperplane cuts");
  // numerator (1 - 5s^2 + 5s^3 - s^5)(1 - s^2)^c
  std::vector<long> num = {1, 0, -5, 5, 0, -1};
  for (int i = 0; i < c; ++i) num = poly_mul(num, {1, 0, -1});

  // cancel common (1-s) factors between numerator and denominator
  int d = D;
  std::vector<long> reduced = num;
  while (d > 0 && divisible_by_one_minus_s(reduced)) {
    reduced = divide_by_one_minus_s(reduced);
    --d;
  }

  HilbertData out;
  out.hyperplanes = h;
  out.quadrics = c;

  // table: h(t) = sum_i num_i * C(t - i + D - 1, D - 1), terms with t >= i
  for (long t = 0; t <= 6; ++t) {
    Rat v(0);
    for (size_t i = 0; i < num.size(); ++i) {
      if (t < long(i)) continue;
      if (D == 0) {
        // 1/(1-s)^0 = 1: only the i = t coefficient contributes
        if (long(i) == t) v = v + Rat(num[i]);
        continue;
      }
      v = v + Rat(num[i]) * binom_rat(t - long(i) + D - 1, D - 1);
    }
    // the table is integral
    mpz_t zi;
    mpz_init(zi);
    mpq_get_num(zi, v.raw());
    long numv = mpz_get_si(zi);
    mpq_get_den(zi, v.raw());
    if (mpz_cmp_si(zi, 1) != 0) {
      mpz_clear(zi);
      throw error("hilbert table value is not an integer (internal)");
    }
    mpz_clear(zi);
    out.table.push_back(numv);
  }

  // polynomial: for t large, h(t) = sum_i reduced_i * C(t - i + d - 1, d - 1),
  // a polynomial of degree d - 1; expand in the monomial basis
  if (d == 0) {
    out.poly = {Rat(0)};
    return out;
  }
  std::vector<Rat> poly(size_t(d), Rat(0));
  for (size_t i = 0; i < reduced.size(); ++i) {
    if (reduced[i] == 0) continue;
    // C(t - i + d - 1, d - 1) = prod_{j=1}^{d-1} (t - i + d - j) / (d - 1)!
    std::vector<Rat> term = {Rat(1)};
    for (int j = 1; j <= d - 1; ++j) {
      long shift = -long(i) + d - j;
      std::vector<Rat> next(term.size() + 1, Rat(0));
      for (size_t k = 0; k < term.size(); ++k) {
        next[k + 1] = next[k + 1] + term[k];            // * t
        next[k] = next[k] + term[k] * Rat(shift);       // * shift
      }
      term = next;
    }
    Rat fact(1);
    for (int j = 2; j <= d - 1; ++j) fact = fact * Rat(j);
    for (size_t k = 0; k < term.size(); ++k)
      poly[k] = poly[k] + Rat(reduced[i]) * term[k] / fact;
  }
  while (poly.size() > 1 && poly.back().is_zero()) poly.pop_back();
  out.poly = poly;
  return out;
}

Rat eval_hilbert_poly(const HilbertData& hd, long t) {
  Rat acc(0), tp(1);
  for (const Rat& cfe : hd.poly) {
    acc = acc + cfe * tp;
    tp = tp * Rat(t);
  }
  return acc;
}

}  // namespace epw
