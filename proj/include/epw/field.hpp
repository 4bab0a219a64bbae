#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmp.h>

namespace epw {

/// Error type for contract violations (preconditions, format errors, integrity checks).
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class FieldKind { rationals, prime, prime_square };

/// Field description: Q, F_p, or F_{p^2} = F_p[w]/(w^2 - s) with s the
/// smallest positive non-square mod p.  Characteristic 2 is excluded.
struct FieldSpec {
  FieldKind kind = FieldKind::rationals;
  uint32_t p = 0;

  bool operator==(const FieldSpec&) const = default;
};

/// Arbitrary-precision rational, value-semantic wrapper over GMP mpq_t.
class Rat {
 public:
  Rat() { mpq_init(v_); }
  Rat(long n) { mpq_init(v_); mpq_set_si(v_, n, 1); }
  Rat(long n, long d);
  Rat(const Rat& o) { mpq_init(v_); mpq_set(v_, o.v_); }
  Rat(Rat&& o) noexcept { mpq_init(v_); mpq_swap(v_, o.v_); }
  Rat& operator=(const Rat& o) { mpq_set(v_, o.v_); return *this; }
  Rat& operator=(Rat&& o) noexcept { mpq_swap(v_, o.v_); return *this; }
  ~Rat() { mpq_clear(v_); }

  friend Rat operator+(const Rat& x, const Rat& y) { Rat r; mpq_add(r.v_, x.v_, y.v_); return r; }
  friend Rat operator-(const Rat& x, const Rat& y) { Rat r; mpq_sub(r.v_, x.v_, y.v_); return r; }
  friend Rat operator*(const Rat& x, const Rat& y) { Rat r; mpq_mul(r.v_, x.v_, y.v_); return r; }
  friend Rat operator/(const Rat& x, const Rat& y);
  Rat operator-() const { Rat r; mpq_neg(r.v_, v_); return r; }
  bool operator==(const Rat& o) const { return mpq_equal(v_, o.v_) != 0; }
  bool is_zero() const { return mpq_sgn(v_) == 0; }
  int sgn() const { return mpq_sgn(v_); }

  std::string str() const;
  static Rat parse(const std::string& s);
  /// Exact square root when the value is a perfect square of Q.
  static std::optional<Rat> exact_sqrt(const Rat& x);

  const mpq_t& raw() const { return v_; }

 private:
  mpq_t v_;
};

/// One field element.  The payload in use is determined by the Field that
/// produced it: (a) for prime fields, (a, b) ~ a + b*w for quadratic
/// extensions, r for the rationals.
class Fel {
 public:
  Fel() = default;

  uint32_t a = 0, b = 0;
  Rat r;

  bool operator==(const Fel& o) const { return a == o.a && b == o.b && r == o.r; }
};

/// Runtime field context.  All element arithmetic goes through this class;
/// elements of different fields must never be mixed.
class Field {
 public:
  explicit Field(FieldSpec spec);
  static Field rationals() { return Field({FieldKind::rationals, 0}); }
  static Field prime(uint32_t p) { return Field({FieldKind::prime, p}); }
  static Field prime_square(uint32_t p) { return Field({FieldKind::prime_square, p}); }

  const FieldSpec& spec() const { return spec_; }
  FieldKind kind() const { return spec_.kind; }
  uint32_t p() const { return spec_.p; }
  /// Extension generator constant: w^2 = s.
  uint32_t nonsquare() const { return s_; }
  bool finite() const { return spec_.kind != FieldKind::rationals; }
  /// Number of elements (finite fields only).
  uint64_t size() const;
  uint32_t characteristic() const { return spec_.p; }

  Fel zero() const { return Fel{}; }
  Fel one() const { return from_int(1); }
  Fel from_int(long n) const;
  /// Embeds an F_p value into this field (prime or prime_square).
  Fel from_residue(uint32_t a) const;

  Fel add(const Fel& x, const Fel& y) const;
  Fel sub(const Fel& x, const Fel& y) const;
  Fel mul(const Fel& x, const Fel& y) const;
  Fel neg(const Fel& x) const;
  Fel inv(const Fel& x) const;
  Fel div(const Fel& x, const Fel& y) const { return mul(x, inv(y)); }
  Fel pow(Fel x, uint64_t e) const;

  bool is_zero(const Fel& x) const;
  bool is_one(const Fel& x) const { return eq(x, one()); }
  bool eq(const Fel& x, const Fel& y) const;

  /// Square root when one exists in this field.  Unsupported over Q.
  std::optional<Fel> sqrt(const Fel& x) const;

  /// Canonical element <-> index bijection for finite fields
  /// (index = a for F_p, a + p*b for F_{p^2}); used by all enumerations.
  Fel element_from_index(uint64_t i) const;
  uint64_t index_of(const Fel& x) const;

  /// Serialization: "3/7" over Q, "5" over F_p, "5+2w" over F_{p^2}.
  std::string str(const Fel& x) const;
  Fel parse(const std::string& s) const;

  std::string describe() const;

  bool operator==(const Field& o) const { return spec_ == o.spec_; }

 private:
  FieldSpec spec_;
  uint32_t s_ = 0;  // extension generator square

  uint64_t pm(uint64_t x, uint64_t y) const { return (x * y) % spec_.p; }
  uint32_t pinv(uint32_t x) const;
};

bool is_prime_u32(uint32_t n);
/// Smallest positive non-square mod p (p an odd prime).
uint32_t smallest_nonsquare(uint32_t p);

}  // namespace epw
