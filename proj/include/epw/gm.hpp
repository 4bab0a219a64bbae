#pragma once

#include "epw/epw_strata.hpp"
#include "epw/hilbert.hpp"

namespace epw {

/// GM data built from a Lagrangian data set (V6, V5, A): the space W cut out
/// of wedge^2 V5 by I = A cap wedge^3 V5, the reference vector v0 outside V5,
/// and the 6-dimensional family of quadrics on W.
///
/// Internal coordinates: V5 carries the RREF basis b_0..b_4 of ker(phi);
/// wedge^2 V5 and wedge^3 V5 carry the lexicographic pair/triple coordinates
/// in that basis, and vol5 is normalized by b_0 ^ ... ^ b_4 -> 1.
struct GMInstance {
  LagrangianInstance lag;
  std::vector<Fel> phi;  // dual point cutting V5
  Subspace V5;           // 5-dim subspace of V6
  size_t ell = 0;        // dim(A cap wedge^3 V5)
  size_t n = 0;          // 5 - ell, the ordinary GM dimension
  std::vector<Fel> v0;   // first standard basis vector of V6 outside V5
  Subspace W;            // (10 - ell)-dim subspace of the pair-coordinate space
  Subspace I3;           // A cap wedge^3 V5 in triple coordinates

  // cached quadric family data
  Matrix plucker_gram_b[5];  // Gram of q_{b_m} on the full pair space
  Matrix q0_on_W;            // Gram of quadric_at(v0) in the W basis

  GMInstance(LagrangianInstance l, std::vector<Fel> ph) : lag(std::move(l)), phi(std::move(ph)) {}

  const Field& field() const { return lag.field; }
};

GMInstance build_gm(const LagrangianInstance& inst, const std::vector<Fel>& phi);

/// Coordinates of a V6 vector in the V5 basis; error when v is outside V5.
std::vector<Fel> v5_coordinates(const GMInstance& gm, const std::vector<Fel>& v);
/// V6 coordinates of a V5-basis coordinate vector.
std::vector<Fel> v6_of_b(const GMInstance& gm, const std::vector<Fel>& bcoords);

/// Pluecker quadric q_v(w) = vol5(v ^ w ^ w) on the full pair space (10x10).
QuadraticForm plucker_quadric_full(const GMInstance& gm, const std::vector<Fel>& v_in_v6);
/// Its restriction to W, in the W basis.
QuadraticForm plucker_quadric(const GMInstance& gm, const std::vector<Fel>& v_in_v6);

/// The family member at v (v outside V5), as a form on W in the W basis.
/// The family is linear in v and restricts over V5 to the Pluecker quadrics.
QuadraticForm quadric_at(const GMInstance& gm, const std::vector<Fel>& v);

/// w ^ 2 of two V5-coordinate vectors, in pair coordinates.
std::vector<Fel> wedge2_b(const Field& F, const std::vector<Fel>& a, const std::vector<Fel>& b);

/// v ^ V5 as a subspace of the pair-coordinate space (dim 4 for v != 0).
Subspace v_wedge_V5(const GMInstance& gm, const std::vector<Fel>& v_bcoords);

/// Re-expression of a subspace of the pair space contained in W in the W
/// basis, and back.
Subspace to_w_coords(const GMInstance& gm, const Subspace& pair_sub);
Subspace from_w_coords(const GMInstance& gm, const Subspace& w_sub);

/// Support test for a bivector of V5: kernel of x -> x ^ w with the
/// decomposability verdict (kernel dimension 2).
struct Bivector5Support {
  bool decomposable = false;
  Subspace kernel;  // subspace of the V5 coordinate space
};
Bivector5Support bivector5_support(const Field& F, const std::vector<Fel>& pair_coords);

/// Points of X(F_q) from the Grassmannian scan, with per-point smoothness.
struct SampledPoint {
  std::vector<Fel> rep_rows;     // 2x5 row-reduced representative, flattened
  std::vector<Fel> plucker;      // pair coordinates (normalized)
  std::vector<Fel> w_coords;     // coordinates in the W basis
  size_t jacobian_rank = 0;
  bool smooth = false;           // jacobian_rank == 4
};

struct SampleReport {
  uint64_t grassmannian_points = 0;
  uint64_t on_hull = 0;  // in P(W) as well
  std::vector<SampledPoint> points;
};

SampleReport sample_points(const GMInstance& gm);

}  // namespace epw
