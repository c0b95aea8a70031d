#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

namespace mobius {

// An embedded graph on a compact surface, encoded as a signed rotation system.
//
// Darts are dense integers 0..2E-1; edge k owns darts 2k and 2k+1, so the
// edge pairing is the fixed involution d -> d^1.  Each vertex carries the
// cyclic list of darts based at it.  A -1 edge sign means crossing that edge
// reverses the local orientation (the encoding of non-orientability).
// boundary_face optionally designates one face (by index into trace_faces)
// as the capping disk of the surface boundary.
struct SignedMap {
  std::vector<std::vector<int>> rotation;  // [vertex] -> cyclic dart list
  std::vector<int> edge_sign;              // [edge] -> +1 or -1
  std::optional<int> boundary_face;

  int n_vertices() const { return static_cast<int>(rotation.size()); }
  int n_edges() const { return static_cast<int>(edge_sign.size()); }
  int n_darts() const { return 2 * n_edges(); }

  bool operator==(const SignedMap&) const = default;
};

inline int edge_of(int dart) { return dart / 2; }
inline int partner(int dart) { return dart ^ 1; }

// Derived per-dart tables.  Valid only while the map is unchanged.
struct MapIndex {
  std::vector<int> origin;  // dart -> vertex it is based at
  std::vector<int> next;    // dart -> successor in the rotation at its vertex
  std::vector<int> prev;    // dart -> predecessor
};

MapIndex build_index(const SignedMap& m);

// One face of the surface, as a boundary walk.
//
// A walk state 2d+0 / 2d+1 means "traverse dart d away from its origin with
// positive / negative local side".  The orbits of the tracing step come in
// mirror pairs (the two sides of the same face); the walk kept is the orbit
// containing the smaller minimal state, started at that state.  Walks are
// listed in increasing order of their starting state.
struct FaceWalk {
  std::vector<int> states;

  int length() const { return static_cast<int>(states.size()); }
  static int dart_of(int state) { return state / 2; }
  static int side_of(int state) { return (state & 1) ? -1 : +1; }
  static int state_of(int dart, int side) { return 2 * dart + (side < 0 ? 1 : 0); }

  bool operator==(const FaceWalk&) const = default;
};

// Checks the rotation-system invariants: every dart 0..2E-1 appears in
// exactly one rotation list, signs are +-1.  Throws structural_error.
void validate(const SignedMap& m);

// Face tracing.  A map with no edges yields one empty walk by convention.
std::vector<FaceWalk> trace_faces(const SignedMap& m);

int euler_characteristic(const SignedMap& m);

bool is_connected(const SignedMap& m);

// True iff some sequence of vertex flips makes every sign +1.
// Requires a connected map (throws structural_error otherwise).
bool orientability(const SignedMap& m);

struct SurfaceSignature {
  int chi = 0;
  bool orientable = false;
  bool boundary_present = false;

  bool operator==(const SurfaceSignature&) const = default;
};

SurfaceSignature surface_signature(const SignedMap& m);

// Capped Moebius strip = projective plane: chi 1, non-orientable, cap set.
bool is_mobius(const SignedMap& m);

// Reverses the rotation at v and toggles the sign of every non-loop edge
// incident to v.  An equivalence move: the embedding is unchanged.
void vertex_flip(SignedMap& m, int v);

nlohmann::ordered_json map_to_json(const SignedMap& m);
SignedMap map_from_json(const nlohmann::json& j);

}  // namespace mobius
