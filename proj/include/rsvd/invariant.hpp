#pragma once

#include <vector>

#include "rsvd/real.hpp"

namespace rsvd {

enum class InvariantKind {
  VanDiejen,   // H_0..H_l
  LaxSpectral, // K_0..K_l
  AuxiliaryM,  // M_0..M_l
};

// Ordered invariant values at a point (or of a pullback at given actions).
// Values are stored plain; the alternating sign conventions of the linear
// transforms are applied inside the transforms, never in storage.
struct InvariantVector {
  InvariantKind kind = InvariantKind::VanDiejen;
  std::vector<Real> values;  // index 0..top
  int n = 0;                 // system size the family refers to

  int top() const { return static_cast<int>(values.size()) - 1; }
};

}  // namespace rsvd
