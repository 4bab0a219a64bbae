#pragma once

#include "epw/field.hpp"

#include <vector>

namespace epw {

/// Hilbert data of a linear/quadric section of the cone over Gr(2,5), read
/// off the locally free resolution 0 -> O(-5) -> O(-3)^5 -> O(-2)^5 -> O ->
/// O_CGr -> 0.  `hyperplanes` counts hyperplane cuts so that 16 - hyperplanes
/// is the number of ambient coordinates, `quadrics` counts quadric cuts.
struct HilbertData {
  int hyperplanes = 0;
  int quadrics = 0;
  std::vector<Rat> poly;    // Hilbert polynomial coefficients, low degree first
  std::vector<long> table;  // Hilbert function values h(0..6)
};

/// Series (1 - 5s^2 + 5s^3 - s^5) (1-s^2)^c / (1-s)^(16-h), expanded exactly.
HilbertData hilbert_polynomial(int h, int c);

/// Evaluates the polynomial part at integer t.
Rat eval_hilbert_poly(const HilbertData& hd, long t);

}  // namespace epw
