#pragma once

#include "epw/ideals.hpp"
#include "epw/quadric_fibers.hpp"

namespace epw {

/// A fiber of one of the correspondence families: the linear space it lives
/// in (pair coordinates), its homogeneous ideal on that space's own
/// coordinates, and the Hilbert-function table.
struct FiberIdeal {
  Subspace space_pair;
  HomogeneousIdeal ideal;
  std::vector<long> htable;
};

/// Fiber of the Z family through pi0 over a stratum-2 point v off P(V5):
/// the Grassmannian hull cut by the selected sheet of the double cover.
/// Threefolds give quintic curves in P^4, fivefolds quintic surfaces in P^5.
FiberIdeal z_fiber(const GMInstance& gm, const Subspace& pi0_pair, const std::vector<Fel>& v,
                   int sheet);

/// Boundary fiber for threefold data: the hull cut by the splitting section,
/// a hyperplane section of a cubic scroll through L0 and L_v.
FiberIdeal scroll_fiber_threefold(const GMInstance& gm, const Subspace& L0_pair,
                                  const std::vector<Fel>& u0_bcoords,
                                  const std::vector<Fel>& v_bcoords);

/// Boundary fiber for fivefold data: the hull cut by the span of the two
/// disjoint sigma-planes, a 3-dimensional cubic scroll.
FiberIdeal scroll_fiber_fivefold(const GMInstance& gm, const Subspace& pi0_pair,
                                 const std::vector<Fel>& u0_bcoords,
                                 const std::vector<Fel>& v_bcoords, int sheet);

struct CycleCheckReport {
  bool ok = false;
  bool downgraded = false;  // residual reconstruction failed; containment-only
  std::vector<std::string> failures;
  std::vector<long> h_total;     // C_y (threefold) or S_y (fivefold)
  std::vector<long> h_residual;  // Z_y^cand or S'_y^cand
  std::vector<long> h_meet;      // Z cap L (threefold)
};

/// Verifies C_y = Z_y + L_v at a boundary point: ideal containments plus the
/// Hilbert-function identity h_C = h_Z + h_L - h_{Z cap L}.
CycleCheckReport cycle_check_threefold(const GMInstance& gm, const Subspace& L0_pair,
                                       const std::vector<Fel>& u0_bcoords,
                                       const std::vector<Fel>& v_bcoords);

/// Verifies S_y = Pi_0 + Pi_y + S'_y at a boundary point: containments, the
/// quartic-scroll table for the residual, and inclusion-exclusion of the
/// Hilbert functions.
CycleCheckReport cycle_check_fivefold(const GMInstance& gm, const Subspace& pi0_pair,
                                      const std::vector<Fel>& u0_bcoords,
                                      const std::vector<Fel>& v_bcoords, int sheet);

struct LineTransformData {
  std::vector<Fel> v1;   // normalized point of Y^2_A
  std::vector<Fel> phi;  // normalized dual point with l = 2
  bool cond_v1_stratum2 = false;
  bool cond_v5_dual_stratum2 = false;
  bool cond_transverse = false;
  Subspace V3;           // the flag space of L0, in V6 coordinates
  Subspace L0_pair;      // line of [V1] on the X side
  Subspace L0p_pair;     // line of [V5-perp] on the X' side (dual pair coords)
  bool l0_nice = false, l0p_nice = false;
};

/// The data-level line transform: checks the three defining conditions,
/// extracts V3 and the two lines, and cross-verifies the dual side.
/// The paired GM instances are returned through the out parameters when
/// non-null.
LineTransformData line_transform_data(const LagrangianInstance& inst,
                                      const std::vector<Fel>& v1, const std::vector<Fel>& phi,
                                      std::optional<GMInstance>* gm_out = nullptr,
                                      std::optional<GMInstance>* gm_dual_out = nullptr);

}  // namespace epw
