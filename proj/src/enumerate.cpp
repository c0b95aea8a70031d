#include "mobius/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>

#include "mobius/errors.hpp"

namespace mobius {

std::vector<PointConfiguration> point_configurations(int n) {
  if (n < 3 || n > 6) throw argument_error("point count must be between 3 and 6");
  std::vector<PointConfiguration> out;
  for (int src_i = 0; src_i <= n; ++src_i)
    for (int snk_i = 0; src_i + snk_i <= n; ++snk_i)
      for (int s_i = 0; src_i + snk_i + s_i <= n; ++s_i)
        for (int src_b = 0; src_i + snk_i + s_i + src_b <= n; ++src_b)
          for (int snk_b = 0; src_i + snk_i + s_i + src_b + snk_b <= n; ++snk_b) {
            const int s_b = n - (src_i + snk_i + s_i + src_b + snk_b);
            const PointConfiguration c{src_i, snk_i, s_i, src_b, snk_b, s_b};
            if (!check_index_formula(src_i + snk_i, src_b + snk_b, s_i, s_b))
              continue;
            if (src_i + src_b < 1 || snk_i + snk_b < 1) continue;
            const int b = src_b + snk_b + s_b;
            if (b < 2 || b % 2 != 0) continue;
            // Alternation around the boundary circle: outward-type points
            // (sources and outward saddles) alternate with inward-type ones,
            // so both families have size b/2.
            const int twice_out = snk_b + s_b - src_b;
            if (twice_out % 2 != 0) continue;
            const int s_out = twice_out / 2;
            if (s_out < 0 || s_out > s_b) continue;
            out.push_back(c);
          }
  return out;  // loop order is already lexicographic
}

namespace {

// Boundary position kinds, in the order used for pos_kind vectors.
enum PosKind { kOutSource = 0, kOutSaddle = 1, kInSink = 2, kInSaddle = 3 };

bool out_kind(int k) { return k == kOutSource || k == kOutSaddle; }

// One separatrix attachment point at a saddle.  Interior saddles carry two
// red (inflowing) and two green (outflowing) slots; a boundary saddle carries
// one slot, red when its arcs flow outward and green otherwise.
struct Slot {
  int saddle = -1;
  bool green = false;
};

// Kind sequences for the boundary circle, one representative per orbit of
// the parity-preserving dihedral action (rotation by two positions,
// reflection about an even position).
std::vector<std::vector<int>> boundary_arrangements(const PointConfiguration& cfg) {
  const int s_out = (cfg.n_snk_b + cfg.s_b - cfg.n_src_b) / 2;
  const int m = cfg.n_src_b + s_out;  // outward points == inward points
  const int b = 2 * m;
  std::set<std::vector<int>> canon;
  for (unsigned src_mask = 0; src_mask < (1u << m); ++src_mask) {
    if (std::popcount(src_mask) != cfg.n_src_b) continue;
    for (unsigned snk_mask = 0; snk_mask < (1u << m); ++snk_mask) {
      if (std::popcount(snk_mask) != cfg.n_snk_b) continue;
      std::vector<int> pos(b);
      for (int i = 0; i < m; ++i) {
        pos[2 * i] = (src_mask >> i & 1) ? kOutSource : kOutSaddle;
        pos[2 * i + 1] = (snk_mask >> i & 1) ? kInSink : kInSaddle;
      }
      std::vector<int> best = pos;
      std::vector<int> img(b);
      for (int r = 0; r < m; ++r) {
        for (int i = 0; i < b; ++i) img[i] = pos[(i + 2 * r) % b];
        best = std::min(best, img);
      }
      for (int c = 0; c < m; ++c) {
        for (int i = 0; i < b; ++i) img[i] = pos[((2 * c - i) % b + b) % b];
        best = std::min(best, img);
      }
      canon.insert(best);
    }
  }
  return {canon.begin(), canon.end()};
}

// Fixed vertex/edge layout for one arrangement of one configuration.
struct Frame {
  PointConfiguration cfg;
  int b = 0;
  std::vector<int> pos_kind;
  std::vector<VertexKind> vkind;
  std::vector<int> source_ids, sink_ids;  // legal targets for red/green slots
  std::vector<Slot> red_slots, green_slots;
};

Frame make_frame(const PointConfiguration& cfg, const std::vector<int>& pos) {
  Frame f;
  f.cfg = cfg;
  f.b = static_cast<int>(pos.size());
  f.pos_kind = pos;
  for (int i = 0; i < f.b; ++i) {
    switch (pos[i]) {
      case kOutSource: f.vkind.push_back(VertexKind::BoundarySource); break;
      case kInSink: f.vkind.push_back(VertexKind::BoundarySink); break;
      default: f.vkind.push_back(VertexKind::BoundarySaddle); break;
    }
  }
  for (int i = 0; i < cfg.n_src_i; ++i) f.vkind.push_back(VertexKind::InteriorSource);
  for (int i = 0; i < cfg.n_snk_i; ++i) f.vkind.push_back(VertexKind::InteriorSink);
  for (int i = 0; i < cfg.s_i; ++i) f.vkind.push_back(VertexKind::InteriorSaddle);
  const int nv = static_cast<int>(f.vkind.size());
  for (int v = 0; v < nv; ++v) {
    if (is_source_kind(f.vkind[v])) f.source_ids.push_back(v);
    if (is_sink_kind(f.vkind[v])) f.sink_ids.push_back(v);
  }
  for (int v = f.b + cfg.n_src_i + cfg.n_snk_i; v < nv; ++v) {
    f.red_slots.push_back({v, false});
    f.red_slots.push_back({v, false});
    f.green_slots.push_back({v, true});
    f.green_slots.push_back({v, true});
  }
  for (int i = 0; i < f.b; ++i) {
    if (pos[i] == kOutSaddle) f.red_slots.push_back({i, false});
    if (pos[i] == kInSaddle) f.green_slots.push_back({i, true});
  }
  return f;
}

struct EdgeSpec {
  int tail = -1, head = -1;
  EdgeKind kind = EdgeKind::Stable;
};

class Collector {
 public:
  void offer(const SeparatrixDiagram& d) {
    CanonicalCode code = canonical_code(d);
    auto it = classes_.find(code);
    if (it == classes_.end()) {
      if (auto why = diagram_problem(d))
        throw structural_error("enumeration produced an invalid diagram: " + *why);
      classes_.emplace(std::move(code), d);
    }
  }

  std::vector<CensusClass> take() const {
    std::vector<CensusClass> out;
    out.reserve(classes_.size());
    for (const auto& [code, d] : classes_) out.push_back({code, d});
    return out;
  }

 private:
  std::map<CanonicalCode, SeparatrixDiagram> classes_;
};

// Union-find connectivity over the vertex set given the full edge list.
bool edges_connect(int nv, const std::vector<EdgeSpec>& edges) {
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = nv;
  for (const auto& e : edges) {
    int a = find(e.tail), bb = find(e.head);
    if (a != bb) {
      parent[a] = bb;
      --components;
    }
  }
  return components == 1;
}

// Per-candidate sweep over rotation choices and sign vectors.  `edges` is the
// complete edge list for one slot assignment; accepted diagrams go to `keep`.
void sweep_rotations_and_signs(const Frame& f, const std::vector<EdgeSpec>& edges,
                               Collector& keep) {
  const int nv = static_cast<int>(f.vkind.size());
  const int ne = static_cast<int>(edges.size());

  // Darts of interior (non-arc) edges at each vertex, ascending.
  std::vector<std::vector<int>> fan(nv);
  // Slot darts at saddles: reds then greens, in slot order.
  std::vector<std::vector<int>> sred(nv), sgreen(nv);
  for (int e = 0; e < ne; ++e) {
    if (edges[e].kind == EdgeKind::BoundaryArc) continue;
    const int td = 2 * e, hd = 2 * e + 1;
    switch (edges[e].kind) {
      case EdgeKind::Stable:
        fan[edges[e].tail].push_back(td);
        sred[edges[e].head].push_back(hd);
        break;
      case EdgeKind::Unstable:
        sgreen[edges[e].tail].push_back(td);
        fan[edges[e].head].push_back(hd);
        break;
      case EdgeKind::SaddleConnection:
        sgreen[edges[e].tail].push_back(td);
        sred[edges[e].head].push_back(hd);
        break;
      default: break;
    }
  }

  // Enumerate the admissible rotation lists for each vertex.
  std::vector<std::vector<std::vector<int>>> options(nv);
  for (int v = 0; v < nv; ++v) {
    if (v < f.b) {
      // Boundary vertex: arcs to circle neighbours frame the interior fan.
      const int prev_arc = (v - 1 + f.b) % f.b;
      const int next_arc = v;
      auto arc_dart = [&](int arc) {
        return edges[arc].tail == v ? 2 * arc : 2 * arc + 1;
      };
      const int dp = arc_dart(prev_arc), dn = arc_dart(next_arc);
      std::vector<int> mid = fan[v];
      for (int d : sred[v]) mid.push_back(d);
      for (int d : sgreen[v]) mid.push_back(d);
      std::sort(mid.begin(), mid.end());
      do {
        std::vector<int> rot{dp};
        rot.insert(rot.end(), mid.begin(), mid.end());
        rot.push_back(dn);
        options[v].push_back(std::move(rot));
      } while (std::next_permutation(mid.begin(), mid.end()));
    } else if (f.vkind[v] == VertexKind::InteriorSaddle) {
      // Alternating red/green; fix the first red dart to quotient rotation.
      const auto& r = sred[v];
      const auto& g = sgreen[v];
      options[v].push_back({r[0], g[0], r[1], g[1]});
      options[v].push_back({r[0], g[1], r[1], g[0]});
    } else {
      // Interior node: cyclic order, smallest dart pinned first.
      std::vector<int> mid = fan[v];
      std::sort(mid.begin(), mid.end());
      std::vector<int> rest(mid.begin() + 1, mid.end());
      do {
        std::vector<int> rot{mid[0]};
        rot.insert(rot.end(), rest.begin(), rest.end());
        options[v].push_back(std::move(rot));
      } while (std::next_permutation(rest.begin(), rest.end()));
    }
  }

  std::vector<int> free_edges;  // sign choices; arcs stay +1
  for (int e = 0; e < ne; ++e)
    if (edges[e].kind != EdgeKind::BoundaryArc) free_edges.push_back(e);

  SignedMap map;
  map.rotation.assign(nv, {});
  map.edge_sign.assign(ne, 1);

  SeparatrixDiagram cand;
  cand.vertex_kind = f.vkind;
  cand.edge_kind.resize(ne);
  cand.edge_from.resize(ne);
  for (int e = 0; e < ne; ++e) {
    cand.edge_kind[e] = edges[e].kind;
    cand.edge_from[e] = 2 * e;
  }

  std::vector<size_t> pick(nv, 0);
  for (;;) {
    for (int v = 0; v < nv; ++v) map.rotation[v] = options[v][pick[v]];

    for (unsigned mask = 0; mask < (1u << free_edges.size()); ++mask) {
      for (size_t i = 0; i < free_edges.size(); ++i)
        map.edge_sign[free_edges[i]] = (mask >> i & 1) ? -1 : 1;
      map.boundary_face.reset();

      // Lean gate: one face trace answers the cap, Euler and cell questions.
      auto faces = trace_faces(map);
      const int chi = nv - ne + static_cast<int>(faces.size());
      if (chi != 1) continue;

      int cap = -1;
      bool cap_ok = true;
      for (size_t fi = 0; fi < faces.size() && cap_ok; ++fi) {
        bool all_arcs = true;
        for (int st : faces[fi].states)
          if (cand.edge_kind[edge_of(FaceWalk::dart_of(st))] != EdgeKind::BoundaryArc) {
            all_arcs = false;
            break;
          }
        if (!all_arcs) continue;
        if (cap >= 0) cap_ok = false;  // two arc-only faces
        cap = static_cast<int>(fi);
      }
      if (!cap_ok || cap < 0) continue;
      if (static_cast<int>(faces[cap].states.size()) != f.b) continue;

      bool cells_ok = true;
      for (size_t fi = 0; fi < faces.size() && cells_ok; ++fi) {
        if (static_cast<int>(fi) == cap) continue;
        const auto& st = faces[fi].states;
        int srcs = 0, snks = 0;
        const size_t len = st.size();
        for (size_t i = 0; i < len; ++i) {
          const int da = FaceWalk::dart_of(st[i]);
          const int db = FaceWalk::dart_of(st[(i + 1) % len]);
          const bool in_flow = cand.edge_from[edge_of(da)] == da;
          const bool out_flow = cand.edge_from[edge_of(db)] == db;
          if (!in_flow && out_flow) ++srcs;
          if (in_flow && !out_flow) ++snks;
        }
        if (srcs != 1 || snks != 1) cells_ok = false;
      }
      if (!cells_ok) continue;

      cand.map = map;
      cand.map.boundary_face = cap;
      keep.offer(cand);
    }

    int v = 0;
    while (v < nv && ++pick[v] == options[v].size()) pick[v++] = 0;
    if (v == nv) break;
  }
}

void generate_for_frame(const Frame& f, bool with_black, Collector& keep) {
  const int n_red = static_cast<int>(f.red_slots.size());
  const int n_green = static_cast<int>(f.green_slots.size());
  const int nv = static_cast<int>(f.vkind.size());

  // Ordered pairs of slots joined by the single black edge, or one "none".
  std::vector<std::pair<int, int>> black_choices;
  if (with_black) {
    for (int g = 0; g < n_green; ++g)
      for (int r = 0; r < n_red; ++r)
        if (f.green_slots[g].saddle != f.red_slots[r].saddle)
          black_choices.push_back({g, r});
  } else {
    black_choices.push_back({-1, -1});
  }

  for (auto [bg, br] : black_choices) {
    std::vector<int> reds, greens;  // open slot indices
    for (int i = 0; i < n_red; ++i)
      if (i != br) reds.push_back(i);
    for (int i = 0; i < n_green; ++i)
      if (i != bg) greens.push_back(i);

    const size_t nr = reds.size(), ng = greens.size();
    std::vector<int> red_to(nr, 0), green_to(ng, 0);
    if (f.source_ids.empty() || f.sink_ids.empty()) continue;

    for (;;) {  // odometer over slot -> node assignments
      // Degree prune: interior nodes may not be isolated.
      std::vector<int> deg(nv, 0);
      for (size_t i = 0; i < nr; ++i) ++deg[f.source_ids[red_to[i]]];
      for (size_t i = 0; i < ng; ++i) ++deg[f.sink_ids[green_to[i]]];
      bool ok = true;
      for (int v = f.b; v < f.b + f.cfg.n_src_i + f.cfg.n_snk_i; ++v)
        if (deg[v] == 0) ok = false;

      if (ok) {
        std::vector<EdgeSpec> edges;
        for (int i = 0; i < f.b; ++i)
          edges.push_back({out_kind(f.pos_kind[i]) ? i : (i + 1) % f.b,
                           out_kind(f.pos_kind[i]) ? (i + 1) % f.b : i,
                           EdgeKind::BoundaryArc});
        if (with_black)
          edges.push_back({f.green_slots[bg].saddle, f.red_slots[br].saddle,
                           EdgeKind::SaddleConnection});
        for (size_t i = 0; i < nr; ++i)
          edges.push_back({f.source_ids[red_to[i]], f.red_slots[reds[i]].saddle,
                           EdgeKind::Stable});
        for (size_t i = 0; i < ng; ++i)
          edges.push_back({f.green_slots[greens[i]].saddle,
                           f.sink_ids[green_to[i]], EdgeKind::Unstable});

        if (edges_connect(nv, edges)) sweep_rotations_and_signs(f, edges, keep);
      }

      size_t i = 0;
      while (i < nr && ++red_to[i] == static_cast<int>(f.source_ids.size()))
        red_to[i++] = 0;
      if (i < nr) continue;
      size_t j = 0;
      while (j < ng && ++green_to[j] == static_cast<int>(f.sink_ids.size()))
        green_to[j++] = 0;
      if (j == ng) break;
    }
  }
}

std::vector<CensusClass> enumerate_diagrams(int n, bool with_black) {
  Collector keep;
  for (const auto& cfg : point_configurations(n)) {
    if (with_black && cfg.s_i + cfg.s_b < 2) continue;  // black edge needs two saddles
    for (const auto& pos : boundary_arrangements(cfg))
      generate_for_frame(make_frame(cfg, pos), with_black, keep);
  }
  return keep.take();
}

}  // namespace

std::vector<CensusClass> enumerate_morse_flows(int n) {
  if (n < 3 || n > 6) throw argument_error("point count must be between 3 and 6");
  return enumerate_diagrams(n, false);
}

std::vector<CensusClass> enumerate_sc_diagrams(int n) {
  if (n < 4 || n > 6) throw argument_error("saddle connections need 4 to 6 points");
  return enumerate_diagrams(n, true);
}

}  // namespace mobius
