#include "epw/polynomial.hpp"

namespace epw {

int degree(const Field& F, const Poly& p) {
  for (size_t i = p.c.size(); i-- > 0;)
    if (!F.is_zero(p.c[i])) return int(i);
  return -1;
}

void trim(const Field& F, Poly& p) { p.c.resize(size_t(degree(F, p) + 1)); }

Fel eval(const Field& F, const Poly& p, const Fel& t) {
  Fel acc = F.zero();
  for (size_t i = p.c.size(); i-- > 0;) acc = F.add(F.mul(acc, t), p.c[i]);
  return acc;
}

Poly add(const Field& F, const Poly& a, const Poly& b) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), F.zero());
  for (size_t i = 0; i < r.c.size(); ++i) {
    Fel x = i < a.c.size() ? a.c[i] : F.zero();
    Fel y = i < b.c.size() ? b.c[i] : F.zero();
    r.c[i] = F.add(x, y);
  }
  trim(F, r);
  return r;
}

Poly sub(const Field& F, const Poly& a, const Poly& b) {
  Poly nb = b;
  for (Fel& x : nb.c) x = F.neg(x);
  return add(F, a, nb);
}

Poly mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.c.empty() || b.c.empty()) return Poly::zero();
  Poly r;
  r.c.resize(a.c.size() + b.c.size() - 1, F.zero());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (F.is_zero(a.c[i])) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
  }
  trim(F, r);
  return r;
}

Poly scale(const Field& F, const Poly& a, const Fel& s) {
  Poly r = a;
  for (Fel& x : r.c) x = F.mul(x, s);
  trim(F, r);
  return r;
}

std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b) {
  int db = degree(F, b);
  if (db < 0) throw error("polynomial division by zero");
  Poly rem = a;
  trim(F, rem);
  Poly quo;
  int da = degree(F, rem);
  if (da < db) return {Poly::zero(), rem};
  quo.c.resize(size_t(da - db + 1), F.zero());
  Fel lead_inv = F.inv(b.c[db]);
  for (int d = da; d >= db; --d) {
    if (int(rem.c.size()) <= d || F.is_zero(rem.c[d])) continue;
    Fel f = F.mul(rem.c[d], lead_inv);
    quo.c[d - db] = f;
    for (int j = 0; j <= db; ++j)
      rem.c[d - db + j] = F.sub(rem.c[d - db + j], F.mul(f, b.c[j]));
  }
  trim(F, quo);
  trim(F, rem);
  return {quo, rem};
}

Poly interpolate(const Field& F, const std::vector<Fel>& xs, const std::vector<Fel>& ys) {
  if (xs.size() != ys.size()) throw error("interpolation arity mismatch");
  size_t n = xs.size();
  Poly r = Poly::zero();
  for (size_t i = 0; i < n; ++i) {
    // Lagrange basis polynomial through node i
    Poly li = Poly::constant(F.one());
    Fel denom = F.one();
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      Poly lin;  // (t - x_j)
      lin.c = {F.neg(xs[j]), F.one()};
      li = mul(F, li, lin);
      denom = F.mul(denom, F.sub(xs[i], xs[j]));
    }
    r = add(F, r, scale(F, li, F.div(ys[i], denom)));
  }
  trim(F, r);
  return r;
}

std::vector<std::pair<Fel, int>> roots_with_multiplicity(const Field& F, const Poly& p) {
  if (!F.finite()) throw error("root scan requires a finite field");
  std::vector<std::pair<Fel, int>> out;
  Poly q = p;
  trim(F, q);
  if (q.c.empty()) throw error("root scan of the zero polynomial");
  for (uint64_t i = 0; i < F.size(); ++i) {
    Fel t = F.element_from_index(i);
    int mult = 0;
    while (degree(F, q) >= 1 && F.is_zero(eval(F, q, t))) {
      Poly lin;
      lin.c = {F.neg(t), F.one()};
      auto [quo, rem] = divmod(F, q, lin);
      q = quo;
      ++mult;
    }
    if (mult > 0) out.push_back({t, mult});
  }
  return out;
}

}  // namespace epw
