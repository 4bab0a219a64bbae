#pragma once

#include <array>
#include <cstdint>

#include "epw/quadform.hpp"

namespace epw {

// ---- index combinatorics over bitmasks (shared by the V6 exterior algebra
// ---- and the V5 Pluecker coordinates used by the GM layer)
namespace ext {

/// Lex-ordered strictly increasing k-subsets of {0..n-1} as bitmasks, with
/// the inverse position lookup.  n <= 6.
struct SubsetTables {
  int n = 0;
  std::array<std::vector<uint8_t>, 7> masks;      // masks[k]
  std::array<std::array<int16_t, 64>, 7> pos{};   // pos[k][mask] = index or -1

  static const SubsetTables& get(int n);
};

/// Sign of e_A ^ e_B relative to e_{A|B}; 0 when the index sets overlap.
int wedge_sign(uint8_t a, uint8_t b);

inline size_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  size_t r = 1;
  for (int i = 0; i < k; ++i) r = r * size_t(n - i) / size_t(i + 1);
  return r;
}

}  // namespace ext

/// Homogeneous element of the exterior algebra on the 6-dimensional space V6.
/// Coefficients are indexed by strictly increasing k-subsets of {1..6} in
/// lexicographic order; dimensions 6, 15, 20, 15, 6, 1 for k = 1..6.
class Multivector {
 public:
  Multivector() = default;
  Multivector(int degree, const Field& F)
      : degree_(degree), c_(ext::binom(6, degree), F.zero()) {
    if (degree < 1 || degree > 6) throw error("multivector degree out of range");
  }
  Multivector(int degree, std::vector<Fel> coeffs);

  /// Basis vector e_{i1} ^ ... ^ e_{ik} for 0-based indices.
  static Multivector basis(const Field& F, std::initializer_list<int> idx);
  static Multivector from_vector(const Field& F, const std::vector<Fel>& v6);

  int degree() const { return degree_; }
  size_t dim() const { return c_.size(); }
  const std::vector<Fel>& coeffs() const { return c_; }
  std::vector<Fel>& coeffs() { return c_; }
  const Fel& operator[](size_t i) const { return c_[i]; }
  Fel& operator[](size_t i) { return c_[i]; }

  bool is_zero(const Field& F) const;
  Multivector add(const Field& F, const Multivector& o) const;
  Multivector scale(const Field& F, const Fel& s) const;

 private:
  int degree_ = 1;
  std::vector<Fel> c_;
};

Multivector wedge(const Field& F, const Multivector& a, const Multivector& b);

/// The fixed trivialization of wedge^6 V6: coefficient of e_123456.
Fel volume6(const Field& F, const Multivector& top);

/// omega(a, b) = volume(a ^ b) on degree-3 multivectors.
Fel symplectic_pairing(const Field& F, const Multivector& a, const Multivector& b);

/// 20x20 Gram matrix of omega in the lexicographic basis of wedge^3 V6.
Matrix omega_gram(const Field& F);

/// F_v = v ^ wedge^2 V6, a 10-dimensional Lagrangian subspace of wedge^3 V6.
Subspace wedge_map_image(const Field& F, const std::vector<Fel>& v);

/// wedge^3 of the hyperplane ker(phi), also 10-dimensional and Lagrangian.
Subspace wedge3_of_hyperplane(const Field& F, const std::vector<Fel>& phi);

/// wedge of three vectors of V6 expressed in wedge^3 coordinates.
std::vector<Fel> wedge3_rows(const Field& F, const std::vector<Fel>& r0,
                             const std::vector<Fel>& r1, const std::vector<Fel>& r2);

struct DecomposabilityResult {
  bool decomposable = false;
  /// Kernel of v -> v ^ omega; for a decomposable omega this is the 3-space
  /// whose wedge is omega (up to scale).
  Subspace kernel;
};

/// Kernel-dimension test: omega != 0 is decomposable iff the kernel of
/// v -> v ^ omega : V6 -> wedge^4 V6 has dimension 3.
DecomposabilityResult is_decomposable(const Field& F, const Multivector& omega);

}  // namespace epw
