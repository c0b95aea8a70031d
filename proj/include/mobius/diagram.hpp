#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mobius/surface_map.hpp"

namespace mobius {

enum class VertexKind {
  InteriorSource,
  InteriorSink,
  InteriorSaddle,
  BoundarySource,
  BoundarySink,
  BoundarySaddle,
};

enum class EdgeKind {
  Stable,            // red: source -> saddle
  Unstable,          // green: saddle -> sink
  BoundaryArc,       // along the boundary circle, directed by the flow
  SaddleConnection,  // black: saddle -> saddle (codimension one only)
};

constexpr int kVertexKinds = 6;
constexpr int kEdgeKinds = 4;

bool is_boundary_kind(VertexKind k);
bool is_saddle_kind(VertexKind k);
bool is_source_kind(VertexKind k);
bool is_sink_kind(VertexKind k);

const char* to_string(VertexKind k);
const char* to_string(EdgeKind k);
VertexKind vertex_kind_from_string(const std::string& s);
EdgeKind edge_kind_from_string(const std::string& s);

// A Morse (or codimension-one) flow on the Moebius strip: the embedded graph
// of singular points, separatrices and boundary trajectories.  edge_from[e]
// is the dart at the edge's tail, fixing the flow direction along the edge.
struct SeparatrixDiagram {
  SignedMap map;
  std::vector<VertexKind> vertex_kind;  // [vertex]
  std::vector<EdgeKind> edge_kind;      // [edge]
  std::vector<int> edge_from;           // [edge] -> tail dart (2e or 2e+1)

  int n_points() const { return map.n_vertices(); }

  bool operator==(const SeparatrixDiagram&) const = default;
};

// (tail vertex, head vertex) of edge e.
std::pair<int, int> edge_endpoints(const SeparatrixDiagram& d, int e);

int saddle_connection_count(const SeparatrixDiagram& d);

// Counts per VertexKind, indexed by static_cast<int>(kind).
std::array<int, kVertexKinds> kind_counts(const SeparatrixDiagram& d);

struct RuleViolation {
  int subject;       // vertex id, face index, or edge id depending on the rule
  std::string rule;
};

// Per-vertex degree/kind/direction rules: saddle slot alternation, boundary
// arc counts and directions, node edge directions, no loop edges.
std::vector<RuleViolation> validate_local_structure(const SeparatrixDiagram& d);

// 2*N_i + N_b == 2*S_i + S_b, N = sources+sinks, S = saddles.
bool check_index_formula(int n_interior_nodes, int n_boundary_nodes,
                         int n_interior_saddles, int n_boundary_saddles);
bool check_index_formula(const SeparatrixDiagram& d);

// Every face except the cap must be a parallel-flow cell: exactly one source
// corner and one sink corner, the walk splitting into two directed sides.
std::vector<RuleViolation> check_cell_condition(const SeparatrixDiagram& d);

// Locates the unique face whose walk consists entirely of boundary arcs and
// stores its index as map.boundary_face.  False if no such face exists or it
// fails to use every arc exactly once or is not unique.
bool assign_boundary_face(SeparatrixDiagram& d);

// Full validity: structure, local rules, connectivity, carrier surface
// (capped strip, chi = 1, non-orientable), cap face, cell condition, at
// least one source and sink, even boundary count, at most one black edge.
// Returns the first problem found, or nullopt for a valid diagram.
std::optional<std::string> diagram_problem(const SeparatrixDiagram& d);
void validate_diagram(const SeparatrixDiagram& d);  // throws structural_error

bool is_morse_diagram(const SeparatrixDiagram& d);

// Sources <-> sinks, red <-> green, every edge direction flipped; the
// underlying map is untouched.  Involution.
SeparatrixDiagram reverse_flow(const SeparatrixDiagram& d);

// Glues a mirror copy along the boundary circle: interior vertices and
// non-arc edges are doubled, boundary vertices and arcs are shared.  For a
// valid diagram the result is closed and non-orientable with chi 0 (the
// double of the strip is a Klein bottle).
SignedMap double_to_closed(const SeparatrixDiagram& d);

nlohmann::ordered_json diagram_to_json(const SeparatrixDiagram& d);
SeparatrixDiagram diagram_from_json(const nlohmann::json& j);

}  // namespace mobius
