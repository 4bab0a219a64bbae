#pragma once

#include "epw/lagrangian.hpp"
#include "epw/polynomial.hpp"

namespace epw {

/// Stratum index of [v]: k = dim(A cap (v ^ wedge^2 V6)).  Computed two ways
/// (dimension of the intersection, and 10 - rank of the omega pairing matrix
/// against v ^ f_j); the two answers are checked against each other at every
/// call.
size_t stratum_of(const LagrangianInstance& inst, const std::vector<Fel>& v);

/// Dual stratum of a hyperplane [phi]: l = dim(A cap wedge^3 ker(phi)).
/// Cross-checked against the stratum of the annihilator Lagrangian at the
/// same point of the dual space.
size_t dual_stratum_of(const LagrangianInstance& inst, const std::vector<Fel>& phi);

struct StratumPoint {
  std::vector<Fel> point;  // normalized projective representative
  size_t k = 0;
};

struct StratificationReport {
  FieldSpec field;
  std::string instance_ref;
  bool dual = false;
  std::array<uint64_t, 11> counts{};
  std::vector<std::vector<std::vector<Fel>>> witnesses;  // [k] -> capped point list
  size_t witness_cap = 32;
  uint64_t total = 0;
  bool exhaustive = false;
  double elapsed_sec = 0;

  uint64_t count_at_least(size_t k) const {
    uint64_t c = 0;
    for (size_t i = k; i <= 10; ++i) c += counts[i];
    return c;
  }
};

/// Exhaustive scan of P(V6)(F_p); prime fields only.  The scan partitions
/// into `jobs` contiguous index ranges merged in range order, so the report
/// is byte-identical for every jobs setting.
StratificationReport stratify(const LagrangianInstance& inst, size_t witness_cap = 32,
                              unsigned jobs = 1);
/// Exhaustive scan of P(V6^dual)(F_p) classifying hyperplanes by l.
StratificationReport dual_stratify(const LagrangianInstance& inst, size_t witness_cap = 32,
                                   unsigned jobs = 1);

/// Restriction of the stratification to the hyperplane P(V5) = P(ker phi).
std::vector<StratumPoint> hyperplane_slice(const LagrangianInstance& inst,
                                           const std::vector<Fel>& phi);

/// The EPW sextic restricted to the line v(t) = v0 + t v1: the degree-10
/// chart determinant divided exactly by the fourth power of the chart
/// coordinate.  A nonzero remainder aborts (chart degeneration) after all
/// charts are tried.
struct SexticOnLine {
  std::vector<Fel> v0, v1;
  size_t chart = 0;       // coordinate index whose complement indexes the columns
  Poly s;                 // degree <= 6 in the instance field
  bool used_extension = false;
};

/// force_chart picks a fixed chart coordinate (for the chart-independence
/// property); -1 lets the operation choose.
SexticOnLine sextic_on_line(const LagrangianInstance& inst, const std::vector<Fel>& v0,
                            const std::vector<Fel>& v1, int force_chart = -1);

}  // namespace epw
