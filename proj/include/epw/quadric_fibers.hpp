#pragma once

#include "epw/gm.hpp"

namespace epw {

/// The pair of maximal linear subspaces of a corank-2 quadric through a fixed
/// isotropic subspace avoiding the kernel.  Over the base field the list may
/// be empty (inert case); the count over the quadratic extension is always 2
/// with multiplicity.
struct TwoSpaces {
  std::vector<Subspace> spaces;  // 0, 1 or 2 spaces in the form's coordinate space
  bool rational = false;         // the residual roots lie in the base field
  bool double_root = false;      // degenerate boundary case: one space, multiplicity 2
};

/// q of dimension 2s+6 and corank exactly 2; pi isotropic of linear dimension
/// s+1 meeting the kernel trivially.  Returns the <= 2 isotropic (s+4)-spaces
/// (projective dimension s+3) through pi, ordered by the canonical root order.
TwoSpaces two_spaces_through(const Field& F, const QuadraticForm& q, const Subspace& pi);

/// The two sheets of the canonical double covering over a stratum-2 point v
/// off P(V5): two_spaces_through applied to the family member at v, through a
/// linear space pi0 on X (W-basis coordinates).
TwoSpaces double_cover_fiber(const GMInstance& gm, const Subspace& pi0_w,
                             const std::vector<Fel>& v);

/// The section of the double cover over the curve Y^2_{A,V5}: for a nice line
/// L0 with sigma point [u0] and v in V5, the 5-dimensional slice
/// W cap (<u0,v> ^ V5), containing L0 and isotropic for the Pluecker quadric
/// at v.  Throws with a diagnosis when the configuration is excluded.
Subspace splitting_section(const GMInstance& gm, const Subspace& L0_pair,
                           const std::vector<Fel>& u0_bcoords,
                           const std::vector<Fel>& v_bcoords);

enum class FiberLabel {
  // fivefold rows
  smooth_quadric,
  corank1_quadric,
  two_planes,
  double_plane,
  // threefold rows
  two_points,
  double_point,
  line,
  smooth_conic,
  two_lines,
  double_line,
};

const char* fiber_label_name(FiberLabel l);

struct FiberClassification {
  std::vector<Fel> v_bcoords;     // the point of P(V5), in V5 coordinates
  size_t stratum = 0;             // k at [v]
  bool sigma1 = false;            // threefold only
  FiberLabel label;
  size_t linear_section_dim = 0;  // threefold: dim(W cap (v ^ V5))
  size_t corank = 0;              // corank of the restricted quadric
  bool split_rational = true;     // components defined over the base field
  std::vector<Subspace> components;  // pair-coordinate subspaces, when linear
};

/// Fiber of the first quadratic fibration at [v] in P(V5).
FiberClassification rho1_fiber_classify(const GMInstance& gm, const std::vector<Fel>& v_bcoords);

/// The label the paper's tables predict from (stratum, sigma1 membership).
FiberLabel predicted_fiber_label(size_t n, size_t stratum, bool sigma1);

struct Sigma1Conic {
  Matrix pencil[2];           // two skew 5x5 forms spanning the annihilator of W
  Subspace plane;             // the plane of the conic inside P(V5)
  Matrix conic_gram;          // 3x3 symmetric, full rank for smooth data
  std::vector<std::vector<Fel>> kernel_samples;  // the sampled kernel points
};

/// The conic of kernels of the pencil W-perp (ordinary threefolds only).
Sigma1Conic sigma1_conic(const GMInstance& gm);

/// Membership of [v] in Sigma1: the pencil has a member whose kernel meets v.
bool sigma1_contains(const GMInstance& gm, const std::vector<Fel>& v_bcoords);

/// The line of a stratum-2 point off Sigma1: L = W cap (v ^ V5), dim 2.
Subspace line_of_point(const GMInstance& gm, const std::vector<Fel>& v_bcoords);

/// Inverse: the sigma image [V1] of a line P(L) in X, with the V3 of its flag.
struct SigmaOfLine {
  std::vector<Fel> v1_bcoords;  // normalized
  Subspace V3_b;                // 3-dim subspace of the V5 coordinate space
};
SigmaOfLine sigma_of_line(const GMInstance& gm, const Subspace& L_pair);

/// A line is nice when its sigma image avoids Sigma1.
bool is_nice_line(const GMInstance& gm, const Subspace& L_pair);

}  // namespace epw
