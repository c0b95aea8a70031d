#pragma once

#include <vector>

#include "mobius/diagram.hpp"
#include "mobius/equivalence.hpp"

namespace mobius {

// Counts of each singular-point kind on a diagram.
struct PointConfiguration {
  int n_src_i = 0;  // interior sources
  int n_snk_i = 0;  // interior sinks
  int s_i = 0;      // interior saddles
  int n_src_b = 0;  // boundary sources
  int n_snk_b = 0;  // boundary sinks
  int s_b = 0;      // boundary saddles

  int total() const { return n_src_i + n_snk_i + s_i + n_src_b + n_snk_b + s_b; }

  bool operator==(const PointConfiguration&) const = default;
};

// Every kind-count vector with the given total that can carry a flow:
// index balance, at least one source and sink, an even nonzero number of
// boundary points, and a consistent alternating out/in boundary circle.
// Listed in ascending lexicographic order of the six fields.
std::vector<PointConfiguration> point_configurations(int n);

struct CensusClass {
  CanonicalCode code;
  SeparatrixDiagram diagram;
};

// All Morse flow classes with n singular points, sorted by canonical code.
// A flow and its reverse are separate classes unless self-reverse.
std::vector<CensusClass> enumerate_morse_flows(int n);

// All codimension-one classes: exactly one saddle-connection edge.
std::vector<CensusClass> enumerate_sc_diagrams(int n);

}  // namespace mobius
