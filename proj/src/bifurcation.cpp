#include "mobius/bifurcation.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "mobius/errors.hpp"

namespace mobius {

const char* to_string(BifurcationType t) {
  switch (t) {
    case BifurcationType::SN: return "SN";
    case BifurcationType::BSN: return "BSN";
    case BifurcationType::BDS: return "BDS";
    case BifurcationType::HN: return "HN";
    case BifurcationType::HS: return "HS";
    case BifurcationType::SC: return "SC";
    case BifurcationType::HSC: return "HSC";
    case BifurcationType::BSC: return "BSC";
  }
  throw argument_error("unknown bifurcation type");
}

BifurcationType bifurcation_type_from_string(const std::string& s) {
  for (auto t : {BifurcationType::SN, BifurcationType::BSN, BifurcationType::BDS,
                 BifurcationType::HN, BifurcationType::HS, BifurcationType::SC,
                 BifurcationType::HSC, BifurcationType::BSC})
    if (s == to_string(t)) return t;
  throw argument_error("unknown bifurcation type: " + s);
}

namespace {

// Endpoint vertices of an edge, tail first.
std::pair<int, int> ends_of(const SeparatrixDiagram& d, int e) {
  const MapIndex ix = build_index(d.map);
  return {ix.origin[d.edge_from[e]], ix.origin[partner(d.edge_from[e])]};
}

// Type by endpoint kinds alone; nullopt when the edge kind/kind pattern is
// not a contraction candidate.
std::optional<BifurcationType> mark_type(const SeparatrixDiagram& d,
                                         const MapIndex& ix, int e) {
  const int tail = ix.origin[d.edge_from[e]];
  const int head = ix.origin[partner(d.edge_from[e])];
  const VertexKind tk = d.vertex_kind[tail], hk = d.vertex_kind[head];
  switch (d.edge_kind[e]) {
    case EdgeKind::Stable:      // source -> saddle
    case EdgeKind::Unstable: {  // saddle -> sink
      const VertexKind sk = d.edge_kind[e] == EdgeKind::Stable ? hk : tk;
      const VertexKind nk = d.edge_kind[e] == EdgeKind::Stable ? tk : hk;
      const bool si = sk == VertexKind::InteriorSaddle;
      const bool ni = !is_boundary_kind(nk);
      if (si && ni) return BifurcationType::SN;
      if (si && !ni) return BifurcationType::HS;
      if (!si && ni) return BifurcationType::HN;
      return std::nullopt;  // both on the boundary: not a typical event
    }
    case EdgeKind::BoundaryArc: {
      const bool ts = tk == VertexKind::BoundarySaddle;
      const bool hs = hk == VertexKind::BoundarySaddle;
      if (ts && hs) return BifurcationType::BDS;
      if (ts || hs) return BifurcationType::BSN;
      return std::nullopt;
    }
    case EdgeKind::SaddleConnection: return std::nullopt;
  }
  return std::nullopt;
}

std::map<std::pair<int, int>, int> pair_multiplicity(const SeparatrixDiagram& d,
                                                     const MapIndex& ix) {
  std::map<std::pair<int, int>, int> mult;
  for (int e = 0; e < d.map.n_edges(); ++e) {
    const int a = ix.origin[2 * e], b = ix.origin[2 * e + 1];
    ++mult[{std::min(a, b), std::max(a, b)}];
  }
  return mult;
}

}  // namespace

std::vector<int> contractible_separatrices(const SeparatrixDiagram& d) {
  validate_diagram(d);
  const MapIndex ix = build_index(d.map);
  const auto mult = pair_multiplicity(d, ix);
  std::vector<int> out;
  for (int e = 0; e < d.map.n_edges(); ++e) {
    if (!mark_type(d, ix, e)) continue;
    const int a = ix.origin[2 * e], b = ix.origin[2 * e + 1];
    if (mult.at({std::min(a, b), std::max(a, b)}) >= 2) continue;
    out.push_back(e);
  }
  return out;
}

BifurcationType classify_marking(const SeparatrixDiagram& d, int edge) {
  const auto marks = contractible_separatrices(d);
  if (std::find(marks.begin(), marks.end(), edge) == marks.end())
    throw argument_error("edge is not a contractible separatrix");
  return *mark_type(d, build_index(d.map), edge);
}

BifurcationType classify_connection(const SeparatrixDiagram& d) {
  int sc = -1;
  for (int e = 0; e < d.map.n_edges(); ++e)
    if (d.edge_kind[e] == EdgeKind::SaddleConnection) {
      if (sc >= 0) throw argument_error("diagram has several saddle connections");
      sc = e;
    }
  if (sc < 0) throw argument_error("diagram has no saddle connection");
  auto [t, h] = ends_of(d, sc);
  const int interior = (d.vertex_kind[t] == VertexKind::InteriorSaddle) +
                       (d.vertex_kind[h] == VertexKind::InteriorSaddle);
  if (interior == 2) return BifurcationType::SC;
  if (interior == 1) return BifurcationType::HSC;
  return BifurcationType::BSC;
}

std::vector<MarkedClass> enumerate_sn_bifurcations(int n) {
  std::map<CanonicalCode, MarkedClass> out;
  for (const auto& cls : enumerate_morse_flows(n))
    for (int e : contractible_separatrices(cls.diagram)) {
      CanonicalCode code = canonical_code(cls.diagram, e);
      if (!out.count(code)) {
        const BifurcationType t = *mark_type(cls.diagram, build_index(cls.diagram.map), e);
        out.emplace(code, MarkedClass{code, cls.diagram, e, t});
      }
    }
  std::vector<MarkedClass> v;
  v.reserve(out.size());
  for (auto& [code, mc] : out) v.push_back(mc);
  return v;
}

BifurcationCounts bifurcation_census(int n) {
  BifurcationCounts c;
  for (const auto& mc : enumerate_sn_bifurcations(n)) switch (mc.type) {
      case BifurcationType::SN: ++c.sn; break;
      case BifurcationType::BSN: ++c.bsn; break;
      case BifurcationType::BDS: ++c.bds; break;
      case BifurcationType::HN: ++c.hn; break;
      case BifurcationType::HS: ++c.hs; break;
      default: break;
    }
  if (n >= 4)
    for (const auto& cls : enumerate_sc_diagrams(n))
      switch (classify_connection(cls.diagram)) {
        case BifurcationType::SC: ++c.sc; break;
        case BifurcationType::HSC: ++c.hsc; break;
        case BifurcationType::BSC: ++c.bsc; break;
        default: break;
      }
  return c;
}

// ---------------------------------------------------------------------------
// Contraction surgery.  The diagram is loaded into a mutable rotation-system
// editor; each bifurcation type is a short composite of embedded-graph moves
// (edge deletion, edge contraction, vertex split), which keep the ambient
// surface intact by construction.
// ---------------------------------------------------------------------------

namespace {

using Entry = std::pair<int, int>;  // (edge id, end: 0 = tail dart, 1 = head dart)

struct Editor {
  struct Ed {
    int tail = -1, head = -1;
    int sign = 1;
    EdgeKind kind = EdgeKind::Stable;
    bool alive = true;
  };
  std::vector<Ed> edges;
  std::vector<std::vector<Entry>> rot;
  std::vector<VertexKind> vkind;
  std::vector<char> valive;

  explicit Editor(const SeparatrixDiagram& d) {
    const MapIndex ix = build_index(d.map);
    const int nv = d.map.n_vertices(), ne = d.map.n_edges();
    edges.resize(ne);
    for (int e = 0; e < ne; ++e) {
      edges[e].tail = ix.origin[d.edge_from[e]];
      edges[e].head = ix.origin[partner(d.edge_from[e])];
      edges[e].sign = d.map.edge_sign[e];
      edges[e].kind = d.edge_kind[e];
    }
    rot.resize(nv);
    for (int v = 0; v < nv; ++v)
      for (int dart : d.map.rotation[v])
        rot[v].push_back({edge_of(dart), dart == d.edge_from[edge_of(dart)] ? 0 : 1});
    vkind = d.vertex_kind;
    valive.assign(nv, 1);
  }

  int vertex_of(const Entry& en) const {
    return en.second == 0 ? edges[en.first].tail : edges[en.first].head;
  }

  size_t find(int v, const Entry& en) const {
    for (size_t i = 0; i < rot[v].size(); ++i)
      if (rot[v][i] == en) return i;
    throw structural_error("contraction: dart not found at its vertex");
  }

  void flip(int v) {
    std::reverse(rot[v].begin(), rot[v].end());
    for (auto& e : edges)
      if (e.alive && (e.tail == v) != (e.head == v)) e.sign = -e.sign;
  }

  void ensure_positive(int e) {
    if (edges[e].sign < 0) flip(edges[e].head);
  }

  void remove_entry(int v, const Entry& en) {
    rot[v].erase(rot[v].begin() + static_cast<long>(find(v, en)));
  }

  void delete_edge(int e) {
    remove_entry(edges[e].tail, {e, 0});
    remove_entry(edges[e].head, {e, 1});
    edges[e].alive = false;
  }

  // Contract non-loop edge e, keeping vertex `keep`: the far vertex's
  // rotation is spliced into keep's rotation at e's dart, in cyclic order
  // starting after the far e-dart.  Requires (and arranges) sign +1.
  void contract(int e, int keep) {
    if (edges[e].tail == edges[e].head)
      throw structural_error("contraction: cannot contract a loop");
    ensure_positive(e);
    const int gone = edges[e].tail == keep ? edges[e].head : edges[e].tail;
    if (gone == keep) throw structural_error("contraction: keep not an endpoint");
    const Entry keep_dart{e, edges[e].tail == keep ? 0 : 1};
    const Entry gone_dart{e, edges[e].tail == keep ? 1 : 0};
    const size_t gp = find(gone, gone_dart);
    std::vector<Entry> run;
    for (size_t i = 1; i < rot[gone].size(); ++i)
      run.push_back(rot[gone][(gp + i) % rot[gone].size()]);
    const size_t kp = find(keep, keep_dart);
    rot[keep].erase(rot[keep].begin() + static_cast<long>(kp));
    rot[keep].insert(rot[keep].begin() + static_cast<long>(kp), run.begin(), run.end());
    for (auto& ed : edges) {
      if (!ed.alive) continue;
      if (ed.tail == gone) ed.tail = keep;
      if (ed.head == gone) ed.head = keep;
    }
    edges[e].alive = false;
    valive[gone] = 0;
    rot[gone].clear();
  }

  int add_edge(int tail, int head, EdgeKind kind, int sign) {
    edges.push_back({tail, head, sign, kind, true});
    return static_cast<int>(edges.size()) - 1;
  }

  void insert_at(int v, size_t pos, const Entry& en) {
    rot[v].insert(rot[v].begin() + static_cast<long>(pos), en);
  }

  int add_vertex(VertexKind k) {
    rot.emplace_back();
    vkind.push_back(k);
    valive.push_back(1);
    return static_cast<int>(rot.size()) - 1;
  }

  // Pull two cyclically consecutive darts out of vertex v onto a fresh
  // boundary saddle, joined back to v by a new separatrix (sign +1).  The new
  // vertex's rotation is [first, second, sep-at-new]; the separatrix's v-side
  // dart takes the vacated position.
  int split_boundary_pair(int v, const Entry& a, const Entry& b, EdgeKind sep_kind,
                          int sep_end_at_new) {
    const size_t pa = find(v, a);
    if (rot[v][(pa + 1) % rot[v].size()] != b)
      throw structural_error("contraction: split darts are not adjacent");
    const int nb = add_vertex(VertexKind::BoundarySaddle);
    const int tail = sep_end_at_new == 0 ? nb : v;
    const int head = sep_end_at_new == 0 ? v : nb;
    const int se = add_edge(tail, head, sep_kind, 1);
    // remove b then a (recompute positions; erasing may shift indices)
    remove_entry(v, b);
    const size_t pa2 = find(v, a);
    rot[v][pa2] = {se, 1 - sep_end_at_new};
    rot[nb] = {a, b, {se, sep_end_at_new}};
    for (const Entry& en : {a, b}) {
      auto& ed = edges[en.first];
      (en.second == 0 ? ed.tail : ed.head) = nb;
    }
    return nb;
  }

  // Interior vertices must keep at least one separatrix; otherwise the
  // result leaves the diagram class.
  void check_no_bare_interior() const {
    for (size_t v = 0; v < rot.size(); ++v)
      if (valive[v] && !is_boundary_kind(vkind[v]) && rot[v].empty())
        throw structural_error(
            "contraction degenerates: a node would lose every separatrix");
  }

  SeparatrixDiagram take() const {
    std::vector<int> vmap(rot.size(), -1), emap(edges.size(), -1);
    int nv = 0, ne = 0;
    for (size_t v = 0; v < rot.size(); ++v)
      if (valive[v]) vmap[v] = nv++;
    for (size_t e = 0; e < edges.size(); ++e)
      if (edges[e].alive) emap[e] = ne++;
    SeparatrixDiagram d;
    d.map.rotation.resize(nv);
    d.map.edge_sign.resize(ne);
    d.vertex_kind.resize(nv);
    d.edge_kind.resize(ne);
    d.edge_from.resize(ne);
    for (size_t e = 0; e < edges.size(); ++e)
      if (emap[e] >= 0) {
        d.map.edge_sign[emap[e]] = edges[e].sign;
        d.edge_kind[emap[e]] = edges[e].kind;
        d.edge_from[emap[e]] = 2 * emap[e];
      }
    for (size_t v = 0; v < rot.size(); ++v)
      if (vmap[v] >= 0) {
        d.vertex_kind[vmap[v]] = vkind[v];
        for (const Entry& en : rot[v])
          d.map.rotation[vmap[v]].push_back(2 * emap[en.first] + en.second);
      }
    return d;
  }
};

// The rotation-order adjacency (from, to) at each boundary vertex that the
// cap face passes through; everything between `to` and `from` the long way
// round is on the strip side.
std::map<int, Entry> cap_corner_to(const SeparatrixDiagram& d) {
  if (!d.map.boundary_face) throw structural_error("diagram has no cap face");
  const MapIndex ix = build_index(d.map);
  const auto faces = trace_faces(d.map);
  const auto& walk = faces[static_cast<size_t>(*d.map.boundary_face)];
  std::map<int, Entry> corner;  // vertex -> first strip-side dart (the "to")
  for (size_t i = 0; i < walk.states.size(); ++i) {
    const int dart = FaceWalk::dart_of(walk.states[i]);
    const int side = FaceWalk::side_of(walk.states[i]);
    const int c = partner(dart);
    const int v = ix.origin[c];
    const int side2 = side * d.map.edge_sign[edge_of(dart)];
    const int to = side2 > 0 ? ix.next[c] : c;
    corner[v] = {edge_of(to), to == d.edge_from[edge_of(to)] ? 0 : 1};
  }
  return corner;
}

struct MarkContext {
  int e;               // the marked edge
  BifurcationType type;
};

SeparatrixDiagram finish(Editor& ed) {
  ed.check_no_bare_interior();
  SeparatrixDiagram out = ed.take();
  if (!assign_boundary_face(out))
    throw structural_error("contraction degenerates: no cap face in the result");
  if (auto why = diagram_problem(out))
    throw structural_error("contraction produced an invalid diagram: " + *why);
  return out;
}

// e: Stable, interior source u -> interior saddle s.  The pair (u, s)
// annihilates; s's unstable pair stops separating, u's other separatrices
// re-anchor on the far source of s's other stable edge.
SeparatrixDiagram contract_sn(const SeparatrixDiagram& d, int e) {
  Editor ed(d);
  const int s = ed.edges[e].head;
  int r2 = -1;
  std::vector<int> greens;
  for (int k = 0; k < static_cast<int>(ed.edges.size()); ++k) {
    if (!ed.edges[k].alive || k == e) continue;
    if (ed.edges[k].kind == EdgeKind::Unstable && ed.edges[k].tail == s)
      greens.push_back(k);
    if (ed.edges[k].kind == EdgeKind::Stable && ed.edges[k].head == s) r2 = k;
  }
  const int far = ed.edges[r2].tail;
  for (int g : greens) ed.delete_edge(g);
  ed.contract(e, s);
  ed.contract(r2, far);
  return finish(ed);
}

// e: Stable, boundary source u -> interior saddle s.  The pair merges into a
// boundary saddle keeping s's other stable separatrix; u's separatrices
// re-anchor on that separatrix's source, u's arcs frame the new saddle.
SeparatrixDiagram contract_hs(const SeparatrixDiagram& d, int e) {
  Editor ed(d);
  const int u = ed.edges[e].tail;
  const int s = ed.edges[e].head;
  int r2 = -1;
  std::vector<int> greens;
  for (int k = 0; k < static_cast<int>(ed.edges.size()); ++k) {
    if (!ed.edges[k].alive || k == e) continue;
    if (ed.edges[k].kind == EdgeKind::Unstable && ed.edges[k].tail == s)
      greens.push_back(k);
    if (ed.edges[k].kind == EdgeKind::Stable && ed.edges[k].head == s) r2 = k;
  }
  std::vector<Entry> arcs;  // u's two arc darts, in u's rotation order
  for (const Entry& en : ed.rot[u])
    if (ed.edges[en.first].kind == EdgeKind::BoundaryArc) arcs.push_back(en);
  const int far = ed.edges[r2].tail;
  for (int g : greens) ed.delete_edge(g);
  ed.contract(e, s);
  ed.contract(r2, far);
  // The two arc darts sit side by side in the merged rotation; split them
  // back out onto the new boundary saddle.
  size_t p0 = ed.find(far, arcs[0]);
  const size_t nrot = ed.rot[far].size();
  Entry first = arcs[0], second = arcs[1];
  if (ed.rot[far][(p0 + 1) % nrot] != second) {
    std::swap(first, second);
  }
  ed.split_boundary_pair(far, first, second, EdgeKind::Stable, 1);
  return finish(ed);
}

// e: Stable, interior source u -> boundary saddle sb.  The pair merges into
// a boundary source; u's other separatrices fan out from it.
SeparatrixDiagram contract_hn(const SeparatrixDiagram& d, int e) {
  Editor ed(d);
  const int sb = ed.edges[e].head;
  ed.contract(e, sb);
  ed.vkind[sb] = VertexKind::BoundarySource;
  return finish(ed);
}

// e: BoundaryArc, boundary source u -> inward boundary saddle sb.  The pair
// annihilates along the boundary; sb's unstable separatrix stops separating;
// u's separatrices re-anchor behind the vanished stretch (following the
// stable separatrix of an outward saddle if one sits there).
SeparatrixDiagram contract_bsn(const SeparatrixDiagram& d, int e) {
  Editor ed(d);
  const int u = ed.edges[e].tail;
  const int sb = ed.edges[e].head;
  int green = -1, an = -1, ap = -1;
  for (int k = 0; k < static_cast<int>(ed.edges.size()); ++k) {
    if (!ed.edges[k].alive || k == e) continue;
    if (ed.edges[k].kind == EdgeKind::Unstable && ed.edges[k].tail == sb)
      green = k;
    if (ed.edges[k].kind == EdgeKind::BoundaryArc) {
      if (ed.edges[k].tail == sb || ed.edges[k].head == sb) an = k;
      if (ed.edges[k].tail == u || ed.edges[k].head == u) ap = k;
    }
  }
  const int vnext = ed.edges[an].tail == sb ? ed.edges[an].head : ed.edges[an].tail;
  if (vnext == u || an == ap)
    throw structural_error("contraction degenerates: the boundary would lose all its points");
  int chase = -1;
  if (ed.vkind[vnext] == VertexKind::BoundarySaddle) {
    for (int k = 0; k < static_cast<int>(ed.edges.size()); ++k)
      if (ed.edges[k].alive && ed.edges[k].kind == EdgeKind::Stable &&
          ed.edges[k].head == vnext)
        chase = k;
    if (chase < 0)
      throw structural_error("contraction: outward saddle without a stable separatrix");
    if (ed.edges[chase].tail == u)
      throw structural_error(
          "contraction degenerates: a separatrix would re-anchor on the vanishing pair");
  }
  // After the merges, the surviving boundary saddle must be rebuilt around
  // the two arcs that frame the vanished stretch from vnext's side: vnext's
  // own outer arc and u's other arc (now running from vnext past the gap).
  Entry ap_entry{ap, ed.edges[ap].tail == u ? 0 : 1};
  Entry keep_arc{-1, 0};
  for (const Entry& en : ed.rot[vnext])
    if (ed.edges[en.first].kind == EdgeKind::BoundaryArc && en.first != an)
      keep_arc = en;

  ed.delete_edge(green);
  ed.contract(e, sb);
  ed.contract(an, vnext);
  if (chase >= 0) {
    const int far = ed.edges[chase].tail;
    ed.contract(chase, far);
    size_t p0 = ed.find(far, keep_arc);
    Entry first = keep_arc, second = ap_entry;
    if (ed.rot[far][(p0 + 1) % ed.rot[far].size()] != second) std::swap(first, second);
    ed.split_boundary_pair(far, first, second, EdgeKind::Stable, 1);
  }
  return finish(ed);
}

// e: BoundaryArc between an outward and an inward boundary saddle.  The two
// half-saddles merge and detach inward as one interior saddle; the boundary
// stretch between their outer neighbours becomes a single arc, and the
// saddle's two new boundary-facing separatrices anchor behind and ahead of
// the vanished stretch.
SeparatrixDiagram contract_bds(const SeparatrixDiagram& d, int e) {
  const auto cap_to = cap_corner_to(d);
  Editor ed(d);
  const int so = ed.edges[e].tail;  // outward saddle (arcs flow away)
  const int si = ed.edges[e].head;  // inward saddle (arcs flow toward)
  int ap = -1, an = -1;
  for (int k = 0; k < static_cast<int>(ed.edges.size()); ++k) {
    if (!ed.edges[k].alive || k == e) continue;
    const auto& E = ed.edges[k];
    if (E.kind == EdgeKind::BoundaryArc) {
      if (E.tail == so || E.head == so) ap = k;
      if (E.tail == si || E.head == si) an = k;
    }
  }
  if (ap < 0 || an < 0 || ap == an)
    throw structural_error("contraction degenerates: the boundary would lose all its points");
  const int w0 = ed.edges[ap].tail == so ? ed.edges[ap].head : ed.edges[ap].tail;
  const int w3 = ed.edges[an].tail == si ? ed.edges[an].head : ed.edges[an].tail;

  // Resolve where the two new boundary-facing separatrices anchor.
  int back_chase = -1, fwd_chase = -1;
  if (ed.vkind[w3] == VertexKind::BoundarySaddle) {
    for (int k = 0; k < static_cast<int>(ed.edges.size()); ++k)
      if (ed.edges[k].alive && ed.edges[k].kind == EdgeKind::Stable &&
          ed.edges[k].head == w3)
        back_chase = k;
    if (back_chase < 0)
      throw structural_error("contraction: outward saddle without a stable separatrix");
  }
  if (ed.vkind[w0] == VertexKind::BoundarySaddle) {
    for (int k = 0; k < static_cast<int>(ed.edges.size()); ++k)
      if (ed.edges[k].alive && ed.edges[k].kind == EdgeKind::Unstable &&
          ed.edges[k].tail == w0)
        fwd_chase = k;
    if (fwd_chase < 0)
      throw structural_error("contraction: inward saddle without an unstable separatrix");
  }

  // Strip-side orientation of the anchor positions, read off before any
  // rotation is touched.
  const Entry an_at_w3{an, ed.edges[an].tail == w3 ? 0 : 1};
  const Entry ap_at_w0{ap, ed.edges[ap].tail == w0 ? 0 : 1};
  const bool w3_strip_first = cap_to.at(w3) == an_at_w3;
  const bool w0_strip_first = cap_to.at(w0) == ap_at_w0;

  if (ed.edges[e].sign < 0) ed.flip(si);
  ed.contract(e, so);
  const int m = so;
  const int s_ap = ed.edges[ap].sign, s_an = ed.edges[an].sign;

  // New separatrices replace the arc darts at the merged saddle in place,
  // preserving the red/green alternation.
  const int w_back = back_chase >= 0 ? ed.edges[back_chase].tail : w3;
  const int w_fwd = fwd_chase >= 0 ? ed.edges[fwd_chase].head : w0;
  const int r_wall = ed.add_edge(w_back, m, EdgeKind::Stable,
                                 s_an * (back_chase >= 0 ? ed.edges[back_chase].sign : 1));
  const int g_wall = ed.add_edge(m, w_fwd, EdgeKind::Unstable,
                                 s_ap * (fwd_chase >= 0 ? ed.edges[fwd_chase].sign : 1));
  {
    const Entry an_at_m{an, ed.edges[an].tail == m ? 0 : 1};
    const Entry ap_at_m{ap, ed.edges[ap].tail == m ? 0 : 1};
    ed.rot[m][ed.find(m, an_at_m)] = {r_wall, 1};
    ed.rot[m][ed.find(m, ap_at_m)] = {g_wall, 0};
  }
  ed.vkind[m] = VertexKind::InteriorSaddle;

  // Fuse the three boundary arcs into one, reusing `an`: its saddle-side
  // dart moves to w0 at ap's old position, and ap disappears.  The fused arc
  // carries the twist of the whole replaced stretch.
  int an_end_moved;
  {
    an_end_moved = ed.edges[an].tail == m ? 0 : 1;
    ed.rot[w0][ed.find(w0, ap_at_w0)] = {an, an_end_moved};
    (an_end_moved == 0 ? ed.edges[an].tail : ed.edges[an].head) = w0;
    ed.edges[an].sign = s_an * s_ap;
    ed.edges[ap].alive = false;
  }

  // Anchor the new separatrices.  When an anchor sits across a chase edge,
  // the side picked out at the divergence saddle (its strip-side orientation)
  // is transported along the chase edge; a negative twist mirrors it.
  if (back_chase >= 0) {
    const Entry rs_tail{back_chase, 0};
    const size_t p = ed.find(w_back, rs_tail);
    const bool after = w3_strip_first == (ed.edges[back_chase].sign > 0);
    ed.insert_at(w_back, after ? p + 1 : p, {r_wall, 0});
  } else {
    const size_t p = ed.find(w3, an_at_w3);
    if (w3_strip_first)
      ed.insert_at(w3, p + 1, {r_wall, 0});  // strip side follows the arc dart
    else
      ed.insert_at(w3, p, {r_wall, 0});
  }
  if (fwd_chase >= 0) {
    const Entry gs_head{fwd_chase, 1};
    const size_t p = ed.find(w_fwd, gs_head);
    const bool before = w0_strip_first != (ed.edges[fwd_chase].sign > 0);
    ed.insert_at(w_fwd, before ? p : p + 1, {g_wall, 1});
  } else {
    const Entry anew_at_w0{an, an_end_moved};
    const size_t p = ed.find(w0, anew_at_w0);
    if (w0_strip_first)
      ed.insert_at(w0, p + 1, {g_wall, 1});
    else
      ed.insert_at(w0, p, {g_wall, 1});
  }
  return finish(ed);
}

}  // namespace

SeparatrixDiagram contract_marking(const SeparatrixDiagram& d, int edge) {
  const BifurcationType t = classify_marking(d, edge);
  switch (t) {
    case BifurcationType::SN:
    case BifurcationType::HS:
    case BifurcationType::HN:
      if (d.edge_kind[edge] == EdgeKind::Unstable)
        return reverse_flow(contract_marking(reverse_flow(d), edge));
      break;
    case BifurcationType::BSN: {
      auto [tail, head] = ends_of(d, edge);
      const VertexKind node_kind = d.vertex_kind[tail] == VertexKind::BoundarySaddle
                                       ? d.vertex_kind[head]
                                       : d.vertex_kind[tail];
      if (node_kind == VertexKind::BoundarySink)
        return reverse_flow(contract_marking(reverse_flow(d), edge));
      break;
    }
    default: break;
  }
  switch (t) {
    case BifurcationType::SN: return contract_sn(d, edge);
    case BifurcationType::HS: return contract_hs(d, edge);
    case BifurcationType::HN: return contract_hn(d, edge);
    case BifurcationType::BSN: return contract_bsn(d, edge);
    case BifurcationType::BDS: return contract_bds(d, edge);
    default:
      throw argument_error("edge does not mark a contraction");
  }
}

}  // namespace mobius
