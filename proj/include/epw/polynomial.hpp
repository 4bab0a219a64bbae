#pragma once

#include "epw/field.hpp"

#include <vector>

namespace epw {

/// Dense univariate polynomial, coefficients low degree first.
struct Poly {
  std::vector<Fel> c;

  static Poly zero() { return {}; }
  static Poly constant(const Fel& x) { return {{x}}; }
};

int degree(const Field& F, const Poly& p);  // -1 for the zero polynomial
void trim(const Field& F, Poly& p);
Fel eval(const Field& F, const Poly& p, const Fel& t);
Poly add(const Field& F, const Poly& a, const Poly& b);
Poly sub(const Field& F, const Poly& a, const Poly& b);
Poly mul(const Field& F, const Poly& a, const Poly& b);
Poly scale(const Field& F, const Poly& a, const Fel& s);
/// Quotient and remainder by a nonzero divisor.
std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b);
/// Unique interpolating polynomial of degree < xs.size() through (xs, ys).
Poly interpolate(const Field& F, const std::vector<Fel>& xs, const std::vector<Fel>& ys);
/// All roots in a finite field, with multiplicities, found by scanning.
std::vector<std::pair<Fel, int>> roots_with_multiplicity(const Field& F, const Poly& p);

}  // namespace epw
