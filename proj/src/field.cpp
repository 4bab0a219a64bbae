#include "epw/field.hpp"

#include <cctype>
#include <cstdlib>
#include <utility>
#include <vector>

namespace epw {

Rat::Rat(long n, long d) {
  if (d == 0) throw error("rational with zero denominator");
  mpq_init(v_);
  mpq_set_si(v_, n, 1);
  mpq_t den;
  mpq_init(den);
  mpq_set_si(den, d, 1);
  mpq_div(v_, v_, den);
  mpq_clear(den);
}

Rat operator/(const Rat& x, const Rat& y) {
  if (y.is_zero()) throw error("division by zero");
  Rat r;
  mpq_div(r.v_, x.v_, y.v_);
  return r;
}

std::string Rat::str() const {
  char* s = mpq_get_str(nullptr, 10, v_);
  std::string out(s);
  free(s);
  return out;
}

Rat Rat::parse(const std::string& s) {
  Rat r;
  if (mpq_set_str(r.v_, s.c_str(), 10) != 0) throw error("bad rational literal: " + s);
  mpq_canonicalize(r.v_);
  return r;
}

std::optional<Rat> Rat::exact_sqrt(const Rat& x) {
  if (x.sgn() < 0) return std::nullopt;
  if (!mpz_perfect_square_p(mpq_numref(x.v_)) || !mpz_perfect_square_p(mpq_denref(x.v_)))
    return std::nullopt;
  Rat r;
  mpz_sqrt(mpq_numref(r.v_), mpq_numref(x.v_));
  mpz_sqrt(mpq_denref(r.v_), mpq_denref(x.v_));
  return r;
}

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

uint32_t smallest_nonsquare(uint32_t p) {
  // mark all squares mod p, return first gap
  std::vector<bool> sq(p, false);
  for (uint64_t x = 0; x < p; ++x) sq[(x * x) % p] = true;
  for (uint32_t a = 1; a < p; ++a)
    if (!sq[a]) return a;
  throw error("no non-square found (p must be an odd prime)");
}

Field::Field(FieldSpec spec) : spec_(spec) {
  if (spec_.kind != FieldKind::rationals) {
    if (!is_prime_u32(spec_.p)) throw error("field modulus is not prime");
    if (spec_.p == 2) throw error("characteristic 2 is not supported");
    if (spec_.p >= (1u << 31)) throw error("prime too large");
    if (spec_.kind == FieldKind::prime_square) s_ = smallest_nonsquare(spec_.p);
  }
}

uint64_t Field::size() const {
  switch (spec_.kind) {
    case FieldKind::prime: return spec_.p;
    case FieldKind::prime_square: return uint64_t(spec_.p) * spec_.p;
    default: throw error("size() on an infinite field");
  }
}

Fel Field::from_int(long n) const {
  Fel x;
  if (spec_.kind == FieldKind::rationals) {
    x.r = Rat(n);
  } else {
    long m = n % long(spec_.p);
    if (m < 0) m += spec_.p;
    x.a = uint32_t(m);
  }
  return x;
}

Fel Field::from_residue(uint32_t a) const {
  if (spec_.kind == FieldKind::rationals) throw error("from_residue over Q");
  Fel x;
  x.a = a % spec_.p;
  return x;
}

Fel Field::add(const Fel& x, const Fel& y) const {
  Fel z;
  switch (spec_.kind) {
    case FieldKind::rationals: z.r = x.r + y.r; break;
    case FieldKind::prime_square: z.b = (x.b + y.b) % spec_.p; [[fallthrough]];
    case FieldKind::prime: z.a = (x.a + y.a) % spec_.p; break;
  }
  return z;
}

Fel Field::sub(const Fel& x, const Fel& y) const { return add(x, neg(y)); }

Fel Field::neg(const Fel& x) const {
  Fel z;
  switch (spec_.kind) {
    case FieldKind::rationals: z.r = -x.r; break;
    case FieldKind::prime_square: z.b = x.b ? spec_.p - x.b : 0; [[fallthrough]];
    case FieldKind::prime: z.a = x.a ? spec_.p - x.a : 0; break;
  }
  return z;
}

Fel Field::mul(const Fel& x, const Fel& y) const {
  Fel z;
  switch (spec_.kind) {
    case FieldKind::rationals:
      z.r = x.r * y.r;
      break;
    case FieldKind::prime:
      z.a = uint32_t(pm(x.a, y.a));
      break;
    case FieldKind::prime_square:
      // (a1 + b1 w)(a2 + b2 w) = a1 a2 + s b1 b2 + (a1 b2 + a2 b1) w
      z.a = uint32_t((pm(x.a, y.a) + pm(s_, pm(x.b, y.b))) % spec_.p);
      z.b = uint32_t((pm(x.a, y.b) + pm(x.b, y.a)) % spec_.p);
      break;
  }
  return z;
}

uint32_t Field::pinv(uint32_t x) const {
  // extended Euclid mod p
  int64_t a = x, b = spec_.p, u = 1, v = 0;
  while (b) {
    int64_t t = a / b;
    a -= t * b;
    std::swap(a, b);
    u -= t * v;
    std::swap(u, v);
  }
  if (a != 1) throw error("not invertible");
  int64_t r = u % int64_t(spec_.p);
  if (r < 0) r += spec_.p;
  return uint32_t(r);
}

Fel Field::inv(const Fel& x) const {
  if (is_zero(x)) throw error("division by zero");
  Fel z;
  switch (spec_.kind) {
    case FieldKind::rationals:
      z.r = Rat(1) / x.r;
      break;
    case FieldKind::prime:
      z.a = pinv(x.a);
      break;
    case FieldKind::prime_square: {
      // 1/(a+bw) = (a-bw)/(a^2 - s b^2); the norm is nonzero since w^2 = s is a non-square
      uint64_t n = (pm(x.a, x.a) + spec_.p - pm(s_, pm(x.b, x.b)) % spec_.p) % spec_.p;
      uint32_t ni = pinv(uint32_t(n));
      z.a = uint32_t(pm(x.a, ni));
      z.b = x.b ? uint32_t(pm(spec_.p - x.b, ni)) : 0;
      break;
    }
  }
  return z;
}

Fel Field::pow(Fel x, uint64_t e) const {
  Fel r = one();
  while (e) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

bool Field::is_zero(const Fel& x) const {
  if (spec_.kind == FieldKind::rationals) return x.r.is_zero();
  return x.a == 0 && x.b == 0;
}

bool Field::eq(const Fel& x, const Fel& y) const {
  if (spec_.kind == FieldKind::rationals) return x.r == y.r;
  return x.a == y.a && x.b == y.b;
}

std::optional<Fel> Field::sqrt(const Fel& x) const {
  if (spec_.kind == FieldKind::rationals)
    throw error("sqrt_in_field: unsupported field (rationals)");
  if (is_zero(x)) return zero();
  // Tonelli-Shanks over the multiplicative group of order q-1; works for both
  // F_p and F_{p^2} given any non-square of the respective field.
  uint64_t q = size();
  if (pow(x, (q - 1) / 2) != one()) {
    return std::nullopt;
  }
  // find a non-square of this field
  Fel g;
  if (spec_.kind == FieldKind::prime) {
    g = from_residue(smallest_nonsquare(spec_.p));
  } else {
    // w is a square in F_{p^2} iff s is a 4th-power issue; scan small elements instead
    for (uint64_t i = 1; i < q; ++i) {
      Fel c = element_from_index(i);
      if (pow(c, (q - 1) / 2) != one()) {
        g = c;
        break;
      }
    }
  }
  uint64_t m = q - 1;
  unsigned r = 0;
  while ((m & 1) == 0) { m >>= 1; ++r; }
  Fel c = pow(g, m);
  Fel t = pow(x, m);
  Fel z = pow(x, (m + 1) / 2);
  while (!eq(t, one())) {
    // find least i with t^(2^i) = 1
    unsigned i = 0;
    Fel t2 = t;
    while (!eq(t2, one())) { t2 = mul(t2, t2); ++i; }
    Fel b = c;
    for (unsigned j = 0; j + i + 1 < r; ++j) b = mul(b, b);
    z = mul(z, b);
    c = mul(b, b);
    t = mul(t, c);
    r = i;
  }
  return z;
}

Fel Field::element_from_index(uint64_t i) const {
  Fel x;
  switch (spec_.kind) {
    case FieldKind::rationals: throw error("element_from_index over Q");
    case FieldKind::prime: x.a = uint32_t(i % spec_.p); break;
    case FieldKind::prime_square:
      x.a = uint32_t(i % spec_.p);
      x.b = uint32_t((i / spec_.p) % spec_.p);
      break;
  }
  return x;
}

uint64_t Field::index_of(const Fel& x) const {
  switch (spec_.kind) {
    case FieldKind::rationals: throw error("index_of over Q");
    case FieldKind::prime: return x.a;
    default: return uint64_t(x.b) * spec_.p + x.a;
  }
}

std::string Field::str(const Fel& x) const {
  switch (spec_.kind) {
    case FieldKind::rationals: return x.r.str();
    case FieldKind::prime: return std::to_string(x.a);
    default:
      if (x.b == 0) return std::to_string(x.a);
      return std::to_string(x.a) + "+" + std::to_string(x.b) + "w";
  }
}

Fel Field::parse(const std::string& s) const {
  if (s.empty()) throw error("empty field element");
  switch (spec_.kind) {
    case FieldKind::rationals: {
      Fel x;
      x.r = Rat::parse(s);
      return x;
    }
    case FieldKind::prime: {
      Fel x;
      x.a = uint32_t(std::stoul(s) % spec_.p);
      return x;
    }
    default: {
      Fel x;
      auto wpos = s.find('w');
      if (wpos == std::string::npos) {
        x.a = uint32_t(std::stoul(s) % spec_.p);
        return x;
      }
      auto plus = s.find('+');
      std::string apart = (plus == std::string::npos) ? "0" : s.substr(0, plus);
      std::string bpart = s.substr(plus == std::string::npos ? 0 : plus + 1, wpos - (plus == std::string::npos ? 0 : plus + 1));
      if (bpart.empty()) bpart = "1";
      x.a = uint32_t(std::stoul(apart) % spec_.p);
      x.b = uint32_t(std::stoul(bpart) % spec_.p);
      return x;
    }
  }
}

std::string Field::describe() const {
  switch (spec_.kind) {
    case FieldKind::rationals: return "rationals";
    case FieldKind::prime: return "prime " + std::to_string(spec_.p);
    default: return "prime_square " + std::to_string(spec_.p);
  }
}

}  // namespace epw
