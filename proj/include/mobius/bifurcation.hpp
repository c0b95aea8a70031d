#pragma once

#include <vector>

#include "mobius/diagram.hpp"
#include "mobius/enumerate.hpp"

namespace mobius {

// The eight codimension-one events.  The first five mark an edge of a Morse
// diagram whose endpoints merge or annihilate; the last three are diagrams
// carrying a saddle-connection edge, split by where its two saddles live.
enum class BifurcationType {
  SN,   // interior saddle + interior node
  BSN,  // boundary saddle + boundary node, along an arc
  BDS,  // two boundary saddles, along an arc
  HN,   // boundary saddle + interior node
  HS,   // interior saddle + boundary node
  SC,   // connection between two interior saddles
  HSC,  // connection between an interior and a boundary saddle
  BSC,  // connection between two boundary saddles
};

const char* to_string(BifurcationType t);
BifurcationType bifurcation_type_from_string(const std::string& s);

// Edge ids of a valid Morse diagram that admit a typical one-parameter
// contraction, ascending.  An edge qualifies by its endpoint kinds — a saddle
// and a node joined through the interior, or a boundary arc with at least one
// saddle end — and only when it is the sole edge joining its endpoint pair.
std::vector<int> contractible_separatrices(const SeparatrixDiagram& d);

// Type of a contractible edge; argument_error if the edge does not qualify.
BifurcationType classify_marking(const SeparatrixDiagram& d, int edge);

// Type of the unique saddle-connection edge; argument_error if the diagram
// does not carry exactly one.
BifurcationType classify_connection(const SeparatrixDiagram& d);

struct MarkedClass {
  CanonicalCode code;  // canonical code of the (diagram, marked edge) pair
  SeparatrixDiagram diagram;
  int edge = -1;
  BifurcationType type = BifurcationType::SN;
};

// Every (Morse diagram, contractible edge) class with n points, one
// representative per marked isomorphism class, sorted by code.
std::vector<MarkedClass> enumerate_sn_bifurcations(int n);

struct BifurcationCounts {
  int sn = 0, bsn = 0, bds = 0, hn = 0, hs = 0;  // marked Morse diagrams
  int sc = 0, hsc = 0, bsc = 0;                  // saddle-connection diagrams
  bool operator==(const BifurcationCounts&) const = default;
};

BifurcationCounts bifurcation_census(int n);

// The diagram on the far side of the bifurcation: the marked pair merges
// (one point fewer) or annihilates (two points fewer).  Throws
// structural_error when the result leaves the class of valid diagrams, e.g.
// an interior node would lose every separatrix, the boundary would lose all
// its points, or a separatrix would have to re-anchor on the vanishing pair.
SeparatrixDiagram contract_marking(const SeparatrixDiagram& d, int edge);

}  // namespace mobius
