#include "mobius/diagram.hpp"

#include <algorithm>

#include "mobius/errors.hpp"

namespace mobius {

bool is_boundary_kind(VertexKind k) {
  return k == VertexKind::BoundarySource || k == VertexKind::BoundarySink ||
         k == VertexKind::BoundarySaddle;
}

bool is_saddle_kind(VertexKind k) {
  return k == VertexKind::InteriorSaddle || k == VertexKind::BoundarySaddle;
}

bool is_source_kind(VertexKind k) {
  return k == VertexKind::InteriorSource || k == VertexKind::BoundarySource;
}

bool is_sink_kind(VertexKind k) {
  return k == VertexKind::InteriorSink || k == VertexKind::BoundarySink;
}

const char* to_string(VertexKind k) {
  switch (k) {
    case VertexKind::InteriorSource: return "interior-source";
    case VertexKind::InteriorSink: return "interior-sink";
    case VertexKind::InteriorSaddle: return "interior-saddle";
    case VertexKind::BoundarySource: return "boundary-source";
    case VertexKind::BoundarySink: return "boundary-sink";
    case VertexKind::BoundarySaddle: return "boundary-saddle";
  }
  return "?";
}

const char* to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::Stable: return "stable";
    case EdgeKind::Unstable: return "unstable";
    case EdgeKind::BoundaryArc: return "boundary-arc";
    case EdgeKind::SaddleConnection: return "saddle-connection";
  }
  return "?";
}

VertexKind vertex_kind_from_string(const std::string& s) {
  for (int i = 0; i < kVertexKinds; ++i) {
    const auto k = static_cast<VertexKind>(i);
    if (s == to_string(k)) return k;
  }
  throw argument_error("unknown vertex kind: " + s);
}

EdgeKind edge_kind_from_string(const std::string& s) {
  for (int i = 0; i < kEdgeKinds; ++i) {
    const auto k = static_cast<EdgeKind>(i);
    if (s == to_string(k)) return k;
  }
  throw argument_error("unknown edge kind: " + s);
}

std::pair<int, int> edge_endpoints(const SeparatrixDiagram& d, int e) {
  if (e < 0 || e >= d.map.n_edges()) throw argument_error("edge id out of range");
  const MapIndex ix = build_index(d.map);
  const int tail_dart = d.edge_from[e];
  return {ix.origin[tail_dart], ix.origin[partner(tail_dart)]};
}

int saddle_connection_count(const SeparatrixDiagram& d) {
  return static_cast<int>(
      std::count(d.edge_kind.begin(), d.edge_kind.end(), EdgeKind::SaddleConnection));
}

std::array<int, kVertexKinds> kind_counts(const SeparatrixDiagram& d) {
  std::array<int, kVertexKinds> c{};
  for (VertexKind k : d.vertex_kind) c[static_cast<int>(k)]++;
  return c;
}

bool check_index_formula(int n_interior_nodes, int n_boundary_nodes,
                         int n_interior_saddles, int n_boundary_saddles) {
  return 2 * n_interior_nodes + n_boundary_nodes ==
         2 * n_interior_saddles + n_boundary_saddles;
}

bool check_index_formula(const SeparatrixDiagram& d) {
  const auto c = kind_counts(d);
  const int ni = c[static_cast<int>(VertexKind::InteriorSource)] +
                 c[static_cast<int>(VertexKind::InteriorSink)];
  const int nb = c[static_cast<int>(VertexKind::BoundarySource)] +
                 c[static_cast<int>(VertexKind::BoundarySink)];
  return check_index_formula(ni, nb, c[static_cast<int>(VertexKind::InteriorSaddle)],
                             c[static_cast<int>(VertexKind::BoundarySaddle)]);
}

namespace {

// Slot color at a saddle: false = stable side (red), true = unstable (green).
// A black edge sits in a green slot at its tail and a red slot at its head.
bool green_slot(const SeparatrixDiagram& d, int dart, bool& bad) {
  const int e = edge_of(dart);
  const bool tail = d.edge_from[e] == dart;
  switch (d.edge_kind[e]) {
    case EdgeKind::Stable:
      bad = tail;
      return false;
    case EdgeKind::Unstable:
      bad = !tail;
      return true;
    case EdgeKind::SaddleConnection:
      bad = false;
      return tail;
    case EdgeKind::BoundaryArc:
      bad = true;
      return false;
  }
  bad = true;
  return false;
}

}  // namespace

std::vector<RuleViolation> validate_local_structure(const SeparatrixDiagram& d) {
  std::vector<RuleViolation> out;
  const MapIndex ix = build_index(d.map);

  for (int e = 0; e < d.map.n_edges(); ++e)
    if (ix.origin[2 * e] == ix.origin[2 * e + 1]) out.push_back({e, "loop-edge"});

  for (int v = 0; v < d.map.n_vertices(); ++v) {
    const auto& rot = d.map.rotation[v];
    const VertexKind vk = d.vertex_kind[v];
    const auto ekind = [&](int dart) { return d.edge_kind[edge_of(dart)]; };
    const auto is_tail = [&](int dart) { return d.edge_from[edge_of(dart)] == dart; };
    const int arcs = static_cast<int>(
        std::count_if(rot.begin(), rot.end(),
                      [&](int dart) { return ekind(dart) == EdgeKind::BoundaryArc; }));

    switch (vk) {
      case VertexKind::InteriorSource:
      case VertexKind::InteriorSink: {
        if (rot.empty()) out.push_back({v, "interior-node-degree"});
        const bool src = vk == VertexKind::InteriorSource;
        for (int dart : rot) {
          const bool ok = src ? (ekind(dart) == EdgeKind::Stable && is_tail(dart))
                              : (ekind(dart) == EdgeKind::Unstable && !is_tail(dart));
          if (!ok) {
            out.push_back({v, src ? "source-edges-stable-out" : "sink-edges-unstable-in"});
            break;
          }
        }
        break;
      }
      case VertexKind::InteriorSaddle: {
        if (rot.size() != 4) {
          out.push_back({v, "saddle-degree-4"});
          break;
        }
        bool broken = false;
        bool color[4];
        for (int i = 0; i < 4; ++i) {
          bool bad = false;
          color[i] = green_slot(d, rot[i], bad);
          if (bad) {
            out.push_back({v, "saddle-slot-direction"});
            broken = true;
            break;
          }
        }
        if (!broken)
          for (int i = 0; i < 4; ++i)
            if (color[i] == color[(i + 1) % 4]) {
              out.push_back({v, "saddle-alternation"});
              break;
            }
        break;
      }
      case VertexKind::BoundarySource:
      case VertexKind::BoundarySink: {
        if (arcs != 2) out.push_back({v, "boundary-node-two-arcs"});
        const bool src = vk == VertexKind::BoundarySource;
        for (int dart : rot) {
          bool ok;
          if (ekind(dart) == EdgeKind::BoundaryArc)
            ok = src ? is_tail(dart) : !is_tail(dart);
          else
            ok = src ? (ekind(dart) == EdgeKind::Stable && is_tail(dart))
                     : (ekind(dart) == EdgeKind::Unstable && !is_tail(dart));
          if (!ok) {
            out.push_back({v, src ? "boundary-source-directions" : "boundary-sink-directions"});
            break;
          }
        }
        break;
      }
      case VertexKind::BoundarySaddle: {
        if (arcs != 2) {
          out.push_back({v, "boundary-saddle-two-arcs"});
          break;
        }
        if (rot.size() != 3) {
          out.push_back({v, "boundary-saddle-one-separatrix"});
          break;
        }
        int arc_tails = 0, arc_heads = 0, sep = -1;
        for (int dart : rot) {
          if (ekind(dart) == EdgeKind::BoundaryArc)
            (is_tail(dart) ? arc_tails : arc_heads)++;
          else
            sep = dart;
        }
        if (arc_tails != 0 && arc_heads != 0) {
          out.push_back({v, "boundary-saddle-arc-directions"});
          break;
        }
        const bool outward = arc_tails == 2;  // both arcs leave: the separatrix flows in
        const EdgeKind sk = ekind(sep);
        bool ok;
        if (outward)
          ok = (sk == EdgeKind::Stable || sk == EdgeKind::SaddleConnection) && !is_tail(sep);
        else
          ok = (sk == EdgeKind::Unstable || sk == EdgeKind::SaddleConnection) && is_tail(sep);
        if (!ok) out.push_back({v, "boundary-saddle-separatrix-direction"});
        break;
      }
    }
  }
  return out;
}

std::vector<RuleViolation> check_cell_condition(const SeparatrixDiagram& d) {
  std::vector<RuleViolation> out;
  const auto faces = trace_faces(d.map);
  const int cap = d.map.boundary_face.value_or(-1);
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    if (f == cap) continue;
    const auto& w = faces[f].states;
    const int n = static_cast<int>(w.size());
    int sources = 0, sinks = 0;
    for (int i = 0; i < n; ++i) {
      const int da = FaceWalk::dart_of(w[i]);
      const int db = FaceWalk::dart_of(w[(i + 1) % n]);
      const bool arrived_with_flow = d.edge_from[edge_of(da)] == da;
      const bool leaves_with_flow = d.edge_from[edge_of(db)] == db;
      if (!arrived_with_flow && leaves_with_flow) sources++;
      if (arrived_with_flow && !leaves_with_flow) sinks++;
    }
    if (sources != 1) out.push_back({f, "cell-one-source-corner"});
    if (sinks != 1) out.push_back({f, "cell-one-sink-corner"});
  }
  return out;
}

bool assign_boundary_face(SeparatrixDiagram& d) {
  const auto faces = trace_faces(d.map);
  int cap = -1;
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    const auto& w = faces[f].states;
    const bool all_arcs = std::all_of(w.begin(), w.end(), [&](int s) {
      return d.edge_kind[edge_of(FaceWalk::dart_of(s))] == EdgeKind::BoundaryArc;
    });
    if (all_arcs) {
      if (cap != -1) return false;  // two candidate caps: not a strip
      cap = f;
    }
  }
  if (cap == -1) return false;
  const int n_arcs = static_cast<int>(
      std::count(d.edge_kind.begin(), d.edge_kind.end(), EdgeKind::BoundaryArc));
  const auto& w = faces[cap].states;
  if (static_cast<int>(w.size()) != n_arcs) return false;
  std::vector<int> used(d.map.n_edges(), 0);
  for (int s : w) used[edge_of(FaceWalk::dart_of(s))]++;
  for (int e = 0; e < d.map.n_edges(); ++e)
    if (d.edge_kind[e] == EdgeKind::BoundaryArc && used[e] != 1) return false;
  d.map.boundary_face = cap;
  return true;
}

std::optional<std::string> diagram_problem(const SeparatrixDiagram& d) {
  try {
    validate(d.map);
  } catch (const structural_error& e) {
    return std::string(e.what());
  }
  const int nv = d.map.n_vertices();
  const int ne = d.map.n_edges();
  if (static_cast<int>(d.vertex_kind.size()) != nv) return "vertex_kind size mismatch";
  if (static_cast<int>(d.edge_kind.size()) != ne) return "edge_kind size mismatch";
  if (static_cast<int>(d.edge_from.size()) != ne) return "edge_from size mismatch";
  for (int e = 0; e < ne; ++e)
    if (d.edge_from[e] != 2 * e && d.edge_from[e] != 2 * e + 1)
      return "edge_from must name a dart of its edge";

  if (const auto v = validate_local_structure(d); !v.empty())
    return v.front().rule + " at " + std::to_string(v.front().subject);
  if (!is_connected(d.map)) return "diagram must be connected";
  if (saddle_connection_count(d) > 1) return "more than one saddle connection";

  const auto c = kind_counts(d);
  if (c[static_cast<int>(VertexKind::InteriorSource)] +
          c[static_cast<int>(VertexKind::BoundarySource)] ==
      0)
    return "no source";
  if (c[static_cast<int>(VertexKind::InteriorSink)] +
          c[static_cast<int>(VertexKind::BoundarySink)] ==
      0)
    return "no sink";
  const int boundary_count = c[static_cast<int>(VertexKind::BoundarySource)] +
                             c[static_cast<int>(VertexKind::BoundarySink)] +
                             c[static_cast<int>(VertexKind::BoundarySaddle)];
  if (boundary_count == 0) return "no boundary vertices";
  if (boundary_count % 2 != 0) return "odd boundary vertex count";

  SeparatrixDiagram probe = d;
  probe.map.boundary_face.reset();
  if (!assign_boundary_face(probe)) return "no unique cap face using every arc once";
  if (!d.map.boundary_face || *d.map.boundary_face != *probe.map.boundary_face)
    return "boundary_face does not name the cap face";

  const int chi = euler_characteristic(d.map);
  if (chi != 1) return "Euler characteristic " + std::to_string(chi) + ", want 1";
  if (orientability(d.map)) return "capped strip must be non-orientable";

  if (const auto c2 = check_cell_condition(d); !c2.empty())
    return c2.front().rule + " at face " + std::to_string(c2.front().subject);
  return std::nullopt;
}

void validate_diagram(const SeparatrixDiagram& d) {
  if (const auto p = diagram_problem(d)) throw structural_error(*p);
}

bool is_morse_diagram(const SeparatrixDiagram& d) {
  return saddle_connection_count(d) == 0 && !diagram_problem(d);
}

SeparatrixDiagram reverse_flow(const SeparatrixDiagram& d) {
  SeparatrixDiagram r = d;
  for (auto& k : r.vertex_kind) {
    switch (k) {
      case VertexKind::InteriorSource: k = VertexKind::InteriorSink; break;
      case VertexKind::InteriorSink: k = VertexKind::InteriorSource; break;
      case VertexKind::BoundarySource: k = VertexKind::BoundarySink; break;
      case VertexKind::BoundarySink: k = VertexKind::BoundarySource; break;
      default: break;
    }
  }
  for (auto& k : r.edge_kind) {
    if (k == EdgeKind::Stable)
      k = EdgeKind::Unstable;
    else if (k == EdgeKind::Unstable)
      k = EdgeKind::Stable;
  }
  for (auto& f : r.edge_from) f ^= 1;
  return r;
}

SignedMap double_to_closed(const SeparatrixDiagram& d) {
  validate_diagram(d);
  const int nv = d.map.n_vertices();
  const int ne = d.map.n_edges();

  std::vector<int> mirror_vertex(nv, -1);
  int out_nv = nv;
  for (int v = 0; v < nv; ++v)
    if (!is_boundary_kind(d.vertex_kind[v])) mirror_vertex[v] = out_nv++;
  std::vector<int> mirror_edge(ne, -1);
  int out_ne = ne;
  for (int e = 0; e < ne; ++e)
    if (d.edge_kind[e] != EdgeKind::BoundaryArc) mirror_edge[e] = out_ne++;

  SignedMap out;
  out.edge_sign.assign(out_ne, 1);
  for (int e = 0; e < ne; ++e) {
    out.edge_sign[e] = d.map.edge_sign[e];
    if (mirror_edge[e] != -1) out.edge_sign[mirror_edge[e]] = d.map.edge_sign[e];
  }
  const auto mirror_dart = [&](int dart) {
    return 2 * mirror_edge[edge_of(dart)] + (dart & 1);
  };

  out.rotation.assign(out_nv, {});
  for (int v = 0; v < nv; ++v) {
    const auto& rot = d.map.rotation[v];
    if (!is_boundary_kind(d.vertex_kind[v])) {
      out.rotation[v] = rot;
      auto& rb = out.rotation[mirror_vertex[v]];
      for (auto it = rot.rbegin(); it != rot.rend(); ++it) rb.push_back(mirror_dart(*it));
      continue;
    }
    // Normalize the cyclic order to [p, fan..., q] with the arcs p, q
    // adjacent across the cap side, then splice in the mirrored fan there.
    const int k = static_cast<int>(rot.size());
    int start = -1;
    for (int i = 0; i < k && start < 0; ++i) {
      const bool arc_here = d.edge_kind[edge_of(rot[i])] == EdgeKind::BoundaryArc;
      const bool arc_prev = d.edge_kind[edge_of(rot[(i + k - 1) % k])] == EdgeKind::BoundaryArc;
      if (arc_here && arc_prev) start = i;
    }
    if (start < 0) throw structural_error("double: arcs not adjacent at a boundary vertex");
    std::vector<int> norm(k);
    for (int i = 0; i < k; ++i) norm[i] = rot[(start + i) % k];
    auto& rv = out.rotation[v];
    rv = norm;
    for (int i = k - 2; i >= 1; --i) rv.push_back(mirror_dart(norm[i]));
  }
  return out;
}

nlohmann::ordered_json diagram_to_json(const SeparatrixDiagram& d) {
  nlohmann::ordered_json j = map_to_json(d.map);
  std::vector<std::string> vk, ek;
  for (VertexKind k : d.vertex_kind) vk.emplace_back(to_string(k));
  for (EdgeKind k : d.edge_kind) ek.emplace_back(to_string(k));
  j["vertex_kind"] = vk;
  j["edge_kind"] = ek;
  j["edge_direction"] = d.edge_from;
  return j;
}

SeparatrixDiagram diagram_from_json(const nlohmann::json& j) {
  SeparatrixDiagram d;
  d.map = map_from_json(j);
  try {
    for (const auto& s : j.at("vertex_kind").get<std::vector<std::string>>())
      d.vertex_kind.push_back(vertex_kind_from_string(s));
    for (const auto& s : j.at("edge_kind").get<std::vector<std::string>>())
      d.edge_kind.push_back(edge_kind_from_string(s));
    d.edge_from = j.at("edge_direction").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw structural_error(std::string("malformed diagram json: ") + e.what());
  }
  if (static_cast<int>(d.vertex_kind.size()) != d.map.n_vertices())
    throw structural_error("vertex_kind length disagrees with rotations");
  if (static_cast<int>(d.edge_kind.size()) != d.map.n_edges())
    throw structural_error("edge_kind length disagrees with signs");
  if (static_cast<int>(d.edge_from.size()) != d.map.n_edges())
    throw structural_error("edge_direction length disagrees with signs");
  for (int e = 0; e < d.map.n_edges(); ++e)
    if (d.edge_from[e] != 2 * e && d.edge_from[e] != 2 * e + 1)
      throw structural_error("edge_direction must name a dart of its edge");
  return d;
}

}  // namespace mobius
