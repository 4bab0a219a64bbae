#pragma once

#include "epw/exterior.hpp"

namespace epw {

enum class NdvStatus { unknown, verified_over_field, witness_found };

/// A Lagrangian data point: a 10-dimensional subspace A of wedge^3 V6 on
/// which the wedge symplectic form vanishes, together with what has been
/// established about decomposable vectors in it.
struct LagrangianInstance {
  Field field;
  Subspace A;  // 10 x 20 RREF basis
  bool is_lagrangian = false;
  NdvStatus ndv = NdvStatus::unknown;
  uint64_t seed = 0;
  bool seeded = false;
  std::string provenance;

  LagrangianInstance(Field f, Subspace a) : field(std::move(f)), A(std::move(a)) {}
};

/// The fixed Lagrangian splitting used by the graph chart:
/// L  = span{ e_1 ^ e_i ^ e_j } (triples containing index 1; coords 0..9),
/// L' = span{ e_i ^ e_j ^ e_k, 1 not in {i,j,k} }  (coords 10..19).
/// Both are Lagrangian and omega-paired.
namespace chart {
/// Global wedge^3 coordinate of the r-th L basis triple (r = 0..9).
size_t L_coord(size_t r);
/// Global coordinate and pairing sign of the L-dual basis vector y_r in L'
/// (omega(x_r, y_s) = delta_{rs}).
std::pair<size_t, int> Lprime_dual_coord(size_t r);
}  // namespace chart

/// Graph of a symmetric map over the fixed splitting; Lagrangian for every
/// symmetric m.  The chart misses Lagrangians not transverse to L', which is
/// acceptable for generic sampling.
LagrangianInstance graph_lagrangian(const Field& F, const Matrix& m);

/// True iff the 10x10 restricted Gram matrix of omega vanishes.
bool validate_lagrangian(const Field& F, const Subspace& A);

struct DualLagrangian {
  Subspace annihilator;  // 10-dim subspace of the dual coordinate space
};

DualLagrangian dual(const LagrangianInstance& inst);

/// Composition with the omega-identification of the dual space back into
/// wedge^3 V6; for a Lagrangian A this recovers A itself.
Subspace omega_identification(const Field& F, const Subspace& dual_subspace);

struct NdvScanResult {
  bool witness_found = false;
  std::vector<Fel> witness_in_A;      // coordinates in the A basis, when found
  Multivector witness;                // the decomposable vector itself
  int witness_extension_degree = 0;   // e with witness over F_{p^e}
  uint64_t points_checked = 0;
  bool exhaustive = false;            // full P(A)(F_{p^e}) scan for all e <= effort
  std::string scanned;                // human-readable description of the scan
};

/// Layered decomposable-vector scan over P(A)(F_{p^e}), e = 1..effort.
/// Exhaustive when the point count fits the budget; otherwise a seeded sample
/// of `sample_budget` points plus the 10 coordinate lines of the A basis
/// (spans of consecutive basis-row pairs).  Updates inst.ndv accordingly.
/// Over the rationals the scan runs on reductions mod 7, 11, 13 and a witness
/// only downgrades ndv to unknown with a warning in `scanned`.
NdvScanResult decomposable_search(LagrangianInstance& inst, int effort,
                                  uint64_t sample_budget = 1000000);

/// Deterministic instance from a seed: symmetric 10x10 entries drawn from the
/// pinned generator, passed through graph_lagrangian.
LagrangianInstance random_instance(uint64_t seed, const Field& F);

}  // namespace epw
