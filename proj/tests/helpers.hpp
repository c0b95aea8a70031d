#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "mobius/diagram.hpp"

namespace mobius::testing {

// Smallest flow on the strip: boundary source 0, boundary sink 1, interior
// saddle 2; arcs 0,1 from source to sink, stable edges 2,3 into the saddle,
// unstable edges 4,5 out of it.  Signs make the carrier a Moebius strip.
inline SeparatrixDiagram three_point_diagram() {
  SeparatrixDiagram d;
  d.map.rotation = {{0, 4, 6, 2}, {9, 1, 3, 11}, {5, 8, 7, 10}};
  d.map.edge_sign = {1, 1, 1, -1, 1, -1};
  d.vertex_kind = {VertexKind::BoundarySource, VertexKind::BoundarySink,
                   VertexKind::InteriorSaddle};
  d.edge_kind = {EdgeKind::BoundaryArc, EdgeKind::BoundaryArc, EdgeKind::Stable,
                 EdgeKind::Stable,      EdgeKind::Unstable,    EdgeKind::Unstable};
  d.edge_from = {0, 2, 4, 6, 8, 10};
  return d;
}

// Relabels vertices, edges and darts, rotates the cyclic lists, and applies
// random vertex flips: a different presentation of the same embedded diagram.
inline SeparatrixDiagram scramble_diagram(const SeparatrixDiagram& in, std::mt19937& rng) {
  const int nv = in.map.n_vertices();
  const int ne = in.map.n_edges();
  std::vector<int> vperm(nv), eperm(ne);
  std::iota(vperm.begin(), vperm.end(), 0);
  std::iota(eperm.begin(), eperm.end(), 0);
  std::shuffle(vperm.begin(), vperm.end(), rng);
  std::shuffle(eperm.begin(), eperm.end(), rng);
  std::vector<int> dart_map(2 * ne);
  for (int e = 0; e < ne; ++e) {
    const int swap = static_cast<int>(rng() & 1);
    dart_map[2 * e] = 2 * eperm[e] + swap;
    dart_map[2 * e + 1] = 2 * eperm[e] + 1 - swap;
  }
  SeparatrixDiagram out;
  out.map.rotation.resize(nv);
  out.map.edge_sign.resize(ne);
  out.vertex_kind.resize(nv);
  out.edge_kind.resize(ne);
  out.edge_from.resize(ne);
  for (int v = 0; v < nv; ++v) {
    std::vector<int> rot;
    rot.reserve(in.map.rotation[v].size());
    for (int dart : in.map.rotation[v]) rot.push_back(dart_map[dart]);
    if (!rot.empty())
      std::rotate(rot.begin(), rot.begin() + rng() % rot.size(), rot.end());
    out.map.rotation[vperm[v]] = std::move(rot);
    out.vertex_kind[vperm[v]] = in.vertex_kind[v];
  }
  for (int e = 0; e < ne; ++e) {
    out.map.edge_sign[eperm[e]] = in.map.edge_sign[e];
    out.edge_kind[eperm[e]] = in.edge_kind[e];
    out.edge_from[eperm[e]] = dart_map[in.edge_from[e]];
  }
  for (int v = 0; v < nv; ++v)
    if (rng() & 1) vertex_flip(out.map, v);
  // Face indices depend on the labelling; re-locate the cap face.
  out.map.boundary_face.reset();
  if (in.map.boundary_face) assign_boundary_face(out);
  return out;
}

}  // namespace mobius::testing
