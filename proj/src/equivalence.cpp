#include "mobius/equivalence.hpp"

#include <algorithm>

#include "mobius/errors.hpp"

namespace mobius {

std::string to_hex(const CanonicalCode& code) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(code.size() * 2);
  for (unsigned char c : code) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xF]);
  }
  return out;
}

CanonicalCode code_from_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) throw argument_error("hex code must have even length");
  const auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw argument_error("bad hex digit in code");
  };
  CanonicalCode out;
  out.reserve(hex.size() / 2);
  for (size_t i = 0; i < hex.size(); i += 2)
    out.push_back(static_cast<char>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
  return out;
}

namespace {

constexpr char kNewVertex = static_cast<char>(0xFF);
constexpr char kBackRef = static_cast<char>(0xFE);

// One rooted serialization.  Vertices are named in discovery order; each
// vertex carries a side bit propagated over tree edges (bit_w = bit_v * sign)
// so that flip freedom is normalized away: tree-edge signs become implicit
// +1 and back edges record their flip-invariant cycle sign.
std::string serialize_from(const SeparatrixDiagram& d, const MapIndex& ix, int root_dart,
                           int root_side, std::optional<int> mark) {
  const int nv = d.map.n_vertices();
  std::string out;
  std::vector<int> vid(nv, -1), vside(nv, 0), ventry(nv, -1);
  std::vector<int> order;
  int next_id = 0;
  const auto discover = [&](int v, int entry, int side) {
    vid[v] = next_id++;
    vside[v] = side;
    ventry[v] = entry;
    order.push_back(v);
  };
  discover(ix.origin[root_dart], root_dart, root_side);
  for (size_t qi = 0; qi < order.size(); ++qi) {
    const int v = order[qi];
    const int deg = static_cast<int>(d.map.rotation[v].size());
    out.push_back(static_cast<char>(static_cast<int>(d.vertex_kind[v])));
    out.push_back(static_cast<char>(deg));
    int cur = ventry[v];
    for (int i = 0; i < deg; ++i) {
      const int e = edge_of(cur);
      const int far = partner(cur);
      const int w = ix.origin[far];
      const int token = static_cast<int>(d.edge_kind[e]) * 4 +
                        (d.edge_from[e] == cur ? 2 : 0) + (mark && *mark == e ? 1 : 0);
      out.push_back(static_cast<char>(token));
      if (vid[w] < 0) {
        out.push_back(kNewVertex);
        out.push_back(static_cast<char>(static_cast<int>(d.vertex_kind[w])));
        discover(w, far, vside[v] * d.map.edge_sign[e]);
      } else {
        out.push_back(kBackRef);
        out.push_back(static_cast<char>(vid[w]));
        int off = 0;
        for (int t = ventry[w]; t != far; t = vside[w] > 0 ? ix.next[t] : ix.prev[t]) off++;
        out.push_back(static_cast<char>(off));
        const int norm = vside[v] * vside[w] * d.map.edge_sign[e];
        out.push_back(norm > 0 ? 1 : 0);
      }
      cur = vside[v] > 0 ? ix.next[cur] : ix.prev[cur];
    }
  }
  if (next_id != nv) throw structural_error("canonical code requires a connected diagram");
  return out;
}

}  // namespace

CanonicalCode canonical_code(const SeparatrixDiagram& d, std::optional<int> marked_edge) {
  const int nd = d.map.n_darts();
  if (nd == 0) throw structural_error("canonical code of an edgeless diagram");
  if (marked_edge && (*marked_edge < 0 || *marked_edge >= d.map.n_edges()))
    throw argument_error("marked edge out of range");
  const MapIndex ix = build_index(d.map);
  std::string best;
  for (int r = 0; r < nd; ++r)
    for (int side : {+1, -1}) {
      std::string s = serialize_from(d, ix, r, side, marked_edge);
      if (best.empty() || s < best) best = std::move(s);
    }

  std::string head;
  head.push_back(static_cast<char>(d.map.n_vertices()));
  head.push_back(static_cast<char>(d.map.n_edges()));
  const auto kc = kind_counts(d);
  for (int i = 0; i < kVertexKinds; ++i) head.push_back(static_cast<char>(kc[i]));
  int ekc[kEdgeKinds] = {};
  for (EdgeKind k : d.edge_kind) ekc[static_cast<int>(k)]++;
  for (int i = 0; i < kEdgeKinds; ++i) head.push_back(static_cast<char>(ekc[i]));
  return head + best;
}

std::optional<std::vector<int>> isomorphism_witness(const SeparatrixDiagram& a,
                                                    const SeparatrixDiagram& b,
                                                    std::optional<int> mark_a,
                                                    std::optional<int> mark_b) {
  const int nd = a.map.n_darts();
  const int nv = a.map.n_vertices();
  if (b.map.n_darts() != nd || b.map.n_vertices() != nv) return std::nullopt;
  if (mark_a.has_value() != mark_b.has_value()) return std::nullopt;
  if (nd == 0) return std::vector<int>{};

  const MapIndex ixa = build_index(a.map);
  for (unsigned flips = 0; flips < (1u << nv); ++flips) {
    SeparatrixDiagram bb = b;
    for (int v = 0; v < nv; ++v)
      if (flips & (1u << v)) vertex_flip(bb.map, v);
    const MapIndex ixb = build_index(bb.map);

    for (int seed = 0; seed < nd; ++seed) {
      std::vector<int> phi(nd, -1);
      std::vector<char> hit(nd, 0);
      std::vector<int> stack;
      bool ok = true;
      const auto bind = [&](int da, int db) {
        if (phi[da] >= 0) return phi[da] == db;
        if (hit[db]) return false;
        phi[da] = db;
        hit[db] = 1;
        stack.push_back(da);
        return true;
      };
      if (!bind(0, seed)) continue;
      while (ok && !stack.empty()) {
        const int da = stack.back();
        stack.pop_back();
        const int db = phi[da];
        const int ea = edge_of(da), eb = edge_of(db);
        if (a.edge_kind[ea] != bb.edge_kind[eb] ||
            a.map.edge_sign[ea] != bb.map.edge_sign[eb] ||
            (a.edge_from[ea] == da) != (bb.edge_from[eb] == db) ||
            a.vertex_kind[ixa.origin[da]] != bb.vertex_kind[ixb.origin[db]] ||
            (mark_a && *mark_a == ea) != (mark_b && *mark_b == eb)) {
          ok = false;
          break;
        }
        ok = bind(partner(da), partner(db)) && bind(ixa.next[da], ixb.next[db]);
      }
      if (!ok) continue;
      if (std::find(phi.begin(), phi.end(), -1) != phi.end()) continue;  // disconnected
      return phi;
    }
  }
  return std::nullopt;
}

bool isomorphic(const SeparatrixDiagram& a, const SeparatrixDiagram& b,
                std::optional<int> mark_a, std::optional<int> mark_b) {
  return isomorphism_witness(a, b, mark_a, mark_b).has_value();
}

bool is_self_reverse(const SeparatrixDiagram& d) {
  return canonical_code(d) == canonical_code(reverse_flow(d));
}

}  // namespace mobius
