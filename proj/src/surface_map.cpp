#include "mobius/surface_map.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "mobius/errors.hpp"

namespace mobius {

void validate(const SignedMap& m) {
  const int nd = m.n_darts();
  for (int s : m.edge_sign)
    if (s != 1 && s != -1) throw structural_error("edge sign must be +1 or -1");
  std::vector<int> hits(nd, 0);
  for (const auto& rot : m.rotation)
    for (int d : rot) {
      if (d < 0 || d >= nd) throw structural_error("dart id out of range: " + std::to_string(d));
      hits[d]++;
    }
  for (int d = 0; d < nd; ++d)
    if (hits[d] != 1)
      throw structural_error("dart " + std::to_string(d) + " appears " +
                             std::to_string(hits[d]) + " times in rotations");
}

MapIndex build_index(const SignedMap& m) {
  const int nd = m.n_darts();
  MapIndex ix;
  ix.origin.assign(nd, -1);
  ix.next.assign(nd, -1);
  ix.prev.assign(nd, -1);
  for (int v = 0; v < m.n_vertices(); ++v) {
    const auto& rot = m.rotation[v];
    const int k = static_cast<int>(rot.size());
    for (int i = 0; i < k; ++i) {
      const int d = rot[i];
      ix.origin[d] = v;
      ix.next[d] = rot[(i + 1) % k];
      ix.prev[d] = rot[(i + k - 1) % k];
    }
  }
  return ix;
}

std::vector<FaceWalk> trace_faces(const SignedMap& m) {
  validate(m);
  const int nd = m.n_darts();
  if (nd == 0) return {FaceWalk{}};  // disk around an edgeless vertex set

  const MapIndex ix = build_index(m);
  const int ns = 2 * nd;
  std::vector<char> seen(ns, 0);
  std::vector<FaceWalk> faces;
  for (int s0 = 0; s0 < ns; ++s0) {
    if (seen[s0]) continue;
    std::vector<int> orbit;
    int s = s0;
    do {
      seen[s] = 1;
      orbit.push_back(s);
      const int d = FaceWalk::dart_of(s);
      const int c = partner(d);
      const int side = FaceWalk::side_of(s) * m.edge_sign[edge_of(d)];
      const int n = (side > 0) ? ix.next[c] : ix.prev[c];
      s = FaceWalk::state_of(n, side);
    } while (s != s0);
    // Each face lifts to two disjoint walks in the orientation double cover;
    // the partner of state (d, s) is (partner(d), -s * sign(d)).  Marking the
    // partner orbit keeps one representative walk per face.
    for (int t : orbit) {
      const int d = FaceWalk::dart_of(t);
      const int mir =
          FaceWalk::state_of(partner(d), -FaceWalk::side_of(t) * m.edge_sign[edge_of(d)]);
      if (seen[mir]) throw structural_error("face trace: reversed orbit collision");
      seen[mir] = 1;
    }
    faces.push_back(FaceWalk{std::move(orbit)});
  }
  return faces;
}

int euler_characteristic(const SignedMap& m) {
  const int f = static_cast<int>(trace_faces(m).size());
  return m.n_vertices() - m.n_edges() + f;
}

bool is_connected(const SignedMap& m) {
  validate(m);
  const int nv = m.n_vertices();
  if (nv <= 1) return true;
  const MapIndex ix = build_index(m);
  std::vector<char> vis(nv, 0);
  std::queue<int> q;
  vis[0] = 1;
  q.push(0);
  int reached = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int d : m.rotation[v]) {
      const int w = ix.origin[partner(d)];
      if (!vis[w]) {
        vis[w] = 1;
        reached++;
        q.push(w);
      }
    }
  }
  return reached == nv;
}

bool orientability(const SignedMap& m) {
  if (!is_connected(m)) throw structural_error("orientability needs a connected map");
  const MapIndex ix = build_index(m);
  const int nv = m.n_vertices();
  std::vector<int> side(nv, 0);
  if (nv == 0) return true;
  side[0] = 1;
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int d : m.rotation[v]) {
      const int w = ix.origin[partner(d)];
      const int want = side[v] * m.edge_sign[edge_of(d)];
      if (w == v) {
        if (m.edge_sign[edge_of(d)] < 0) return false;  // one-sided loop
        continue;
      }
      if (side[w] == 0) {
        side[w] = want;
        q.push(w);
      } else if (side[w] != want) {
        return false;
      }
    }
  }
  return true;
}

SurfaceSignature surface_signature(const SignedMap& m) {
  SurfaceSignature sig;
  sig.chi = euler_characteristic(m);
  sig.orientable = orientability(m);
  sig.boundary_present = m.boundary_face.has_value();
  return sig;
}

bool is_mobius(const SignedMap& m) {
  validate(m);
  if (!is_connected(m)) return false;
  if (!m.boundary_face) return false;
  const int f = static_cast<int>(trace_faces(m).size());
  if (*m.boundary_face < 0 || *m.boundary_face >= f) return false;
  const int chi = m.n_vertices() - m.n_edges() + f;
  return chi == 1 && !orientability(m);
}

void vertex_flip(SignedMap& m, int v) {
  if (v < 0 || v >= m.n_vertices()) throw argument_error("vertex_flip: no such vertex");
  auto& rot = m.rotation[v];
  std::reverse(rot.begin(), rot.end());
  std::vector<int> ends(m.n_edges(), 0);
  for (int d : rot) ends[edge_of(d)]++;
  for (int e = 0; e < m.n_edges(); ++e)
    if (ends[e] == 1) m.edge_sign[e] = -m.edge_sign[e];
}

nlohmann::ordered_json map_to_json(const SignedMap& m) {
  nlohmann::ordered_json j;
  j["darts"] = m.n_darts();
  std::vector<int> pairing(m.n_darts());
  for (int d = 0; d < m.n_darts(); ++d) pairing[d] = partner(d);
  j["pairing"] = pairing;
  j["rotations"] = m.rotation;
  j["signs"] = m.edge_sign;
  if (m.boundary_face)
    j["boundary_face"] = *m.boundary_face;
  else
    j["boundary_face"] = nullptr;
  return j;
}

SignedMap map_from_json(const nlohmann::json& j) {
  SignedMap m;
  try {
    const int nd = j.at("darts").get<int>();
    if (nd < 0 || nd % 2 != 0) throw structural_error("darts must be even and non-negative");
    const auto pairing = j.at("pairing").get<std::vector<int>>();
    if (static_cast<int>(pairing.size()) != nd)
      throw structural_error("pairing length disagrees with dart count");
    for (int d = 0; d < nd; ++d)
      if (pairing[d] != partner(d))
        throw structural_error("pairing is not the d -> d^1 involution");
    m.rotation = j.at("rotations").get<std::vector<std::vector<int>>>();
    m.edge_sign = j.at("signs").get<std::vector<int>>();
    if (static_cast<int>(m.edge_sign.size()) * 2 != nd)
      throw structural_error("signs length disagrees with dart count");
    if (!j.at("boundary_face").is_null()) m.boundary_face = j.at("boundary_face").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw structural_error(std::string("malformed map json: ") + e.what());
  }
  validate(m);
  return m;
}

}  // namespace mobius
