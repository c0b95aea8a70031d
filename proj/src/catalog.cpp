#include "mobius/catalog.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "mobius/errors.hpp"

namespace mobius {

namespace {

constexpr std::array<const char*, 9> kColumns = {
    "Morse", "SN", "SC", "BSN", "BDS", "HN", "HS", "HSC", "BSC"};

[[noreturn]] void abort_invalid(const std::string& why, const SeparatrixDiagram& d) {
  throw structural_error("catalog construction produced an invalid diagram: " + why +
                         "\n" + diagram_to_json(d).dump(2));
}

void require_valid(const SeparatrixDiagram& d) {
  if (auto why = diagram_problem(d)) abort_invalid(*why, d);
}

std::array<int, 9> counts_for_level(const CatalogLevel& lvl) {
  std::array<int, 9> row{};
  row[0] = static_cast<int>(lvl.morse.size());
  for (const MarkEntry& m : lvl.marks) {
    switch (m.type) {
      case BifurcationType::SN: ++row[1]; break;
      case BifurcationType::BSN: ++row[3]; break;
      case BifurcationType::BDS: ++row[4]; break;
      case BifurcationType::HN: ++row[5]; break;
      case BifurcationType::HS: ++row[6]; break;
      default:
        throw structural_error("mark entry carries a connection type");
    }
  }
  for (const ConnectionEntry& s : lvl.connections) {
    switch (s.type) {
      case BifurcationType::SC: ++row[2]; break;
      case BifurcationType::HSC: ++row[7]; break;
      case BifurcationType::BSC: ++row[8]; break;
      default:
        throw structural_error("connection entry carries a mark type");
    }
  }
  return row;
}

struct RefCell {
  int n;
  int column;  // index into kColumns
  int expected;
};

// Reference counts the census is audited against.  The same quantity may be
// recorded in up to three forms that do not always agree with one another:
// the headline summary row ("headline"), the per-type count quoted in the
// accompanying statement ("statement"), and the total obtained by summing the
// itemized case listings ("breakdown").  All recorded forms are kept so the
// verifier can report each comparison separately.
// Column indices: 0 Morse, 1 SN, 2 SC, 3 BSN, 4 BDS, 5 HN, 6 HS, 7 HSC, 8 BSC.
constexpr std::array<std::array<int, 9>, 4> kHeadlineRows = {{
    {1, 0, 0, 0, 0, 0, 0, 0, 0},      // n = 3
    {4, 2, 0, 2, 1, 2, 0, 2, 1},      // n = 4
    {15, 10, 14, 6, 2, 4, 10, 4, 2},  // n = 5
    {42, 36, 15, 48, 21, 30, 30, 14, 2},  // n = 6
}};

constexpr RefCell kStatementCells[] = {
    {3, 0, 1},
    {4, 0, 4}, {4, 1, 0}, {4, 3, 2}, {4, 4, 1}, {4, 5, 2}, {4, 7, 2}, {4, 8, 1},
    {5, 0, 15}, {5, 1, 10}, {5, 2, 14}, {5, 3, 6}, {5, 4, 2}, {5, 5, 4},
    {5, 6, 10}, {5, 7, 4}, {5, 8, 2},
    {6, 1, 36}, {6, 2, 15}, {6, 3, 48}, {6, 4, 21}, {6, 5, 30}, {6, 7, 14},
    {6, 8, 2},
};

constexpr RefCell kBreakdownCells[] = {
    {5, 1, 8}, {5, 2, 10}, {5, 3, 8}, {5, 4, 2}, {5, 5, 4}, {5, 6, 10},
    {6, 1, 36}, {6, 2, 15}, {6, 3, 48}, {6, 4, 21}, {6, 5, 30}, {6, 6, 30},
    {6, 7, 14}, {6, 8, 2},
};

nlohmann::ordered_json level_to_json(const CatalogLevel& lvl) {
  nlohmann::ordered_json j;
  j["n"] = lvl.n;
  j["morse"] = nlohmann::ordered_json::array();
  for (const MorseEntry& m : lvl.morse) {
    nlohmann::ordered_json e;
    e["code"] = to_hex(m.code);
    e["self_reverse"] = m.self_reverse;
    e["diagram"] = diagram_to_json(m.diagram);
    j["morse"].push_back(std::move(e));
  }
  j["marks"] = nlohmann::ordered_json::array();
  for (const MarkEntry& m : lvl.marks) {
    nlohmann::ordered_json e;
    e["code"] = to_hex(m.code);
    e["type"] = to_string(m.type);
    e["marked_edge"] = m.marked_edge;
    e["diagram"] = diagram_to_json(m.diagram);
    j["marks"].push_back(std::move(e));
  }
  j["connections"] = nlohmann::ordered_json::array();
  for (const ConnectionEntry& s : lvl.connections) {
    nlohmann::ordered_json e;
    e["code"] = to_hex(s.code);
    e["type"] = to_string(s.type);
    e["diagram"] = diagram_to_json(s.diagram);
    j["connections"].push_back(std::move(e));
  }
  return j;
}

}  // namespace

Catalog build_catalog(int max_points) {
  if (max_points < 3 || max_points > 6)
    throw argument_error("max points must be between 3 and 6");
  Catalog cat;
  cat.engine_version = kEngineVersion;
  cat.max_points = max_points;
  for (int n = 3; n <= max_points; ++n) {
    CatalogLevel lvl;
    lvl.n = n;
    std::vector<CensusClass> classes = enumerate_morse_flows(n);
    std::vector<CanonicalCode> codes;
    codes.reserve(classes.size());
    for (const CensusClass& c : classes) codes.push_back(c.code);
    std::map<CanonicalCode, MarkEntry> marks;
    for (const CensusClass& c : classes) {
      require_valid(c.diagram);
      MorseEntry me;
      me.code = c.code;
      me.diagram = c.diagram;
      SeparatrixDiagram rev = reverse_flow(c.diagram);
      CanonicalCode rev_code = canonical_code(rev);
      me.self_reverse = (rev_code == c.code);
      if (!std::binary_search(codes.begin(), codes.end(), rev_code))
        abort_invalid("flow reversal left the enumerated family", rev);
      lvl.morse.push_back(std::move(me));
      for (int e : contractible_separatrices(c.diagram)) {
        CanonicalCode mc = canonical_code(c.diagram, e);
        if (marks.count(mc)) continue;
        MarkEntry entry;
        entry.code = mc;
        entry.type = classify_marking(c.diagram, e);
        entry.marked_edge = e;
        entry.diagram = c.diagram;
        marks.emplace(std::move(mc), std::move(entry));
      }
    }
    for (auto& [code, entry] : marks) lvl.marks.push_back(std::move(entry));
    if (n >= 4) {
      for (const CensusClass& c : enumerate_sc_diagrams(n)) {
        require_valid(c.diagram);
        ConnectionEntry entry;
        entry.code = c.code;
        entry.type = classify_connection(c.diagram);
        entry.diagram = c.diagram;
        lvl.connections.push_back(std::move(entry));
      }
    }
    cat.levels.push_back(std::move(lvl));
  }
  return cat;
}

nlohmann::ordered_json catalog_to_json(const Catalog& c) {
  nlohmann::ordered_json j;
  j["engine_version"] = c.engine_version;
  j["max_points"] = c.max_points;
  j["levels"] = nlohmann::ordered_json::array();
  for (const CatalogLevel& lvl : c.levels) j["levels"].push_back(level_to_json(lvl));
  return j;
}

Catalog catalog_from_json(const nlohmann::json& j) {
  try {
    Catalog c;
    c.engine_version = j.at("engine_version").get<std::string>();
    c.max_points = j.at("max_points").get<int>();
    for (const auto& jl : j.at("levels")) {
      CatalogLevel lvl;
      lvl.n = jl.at("n").get<int>();
      for (const auto& jm : jl.at("morse")) {
        MorseEntry m;
        m.code = code_from_hex(jm.at("code").get<std::string>());
        m.self_reverse = jm.at("self_reverse").get<bool>();
        m.diagram = diagram_from_json(jm.at("diagram"));
        lvl.morse.push_back(std::move(m));
      }
      for (const auto& jm : jl.at("marks")) {
        MarkEntry m;
        m.code = code_from_hex(jm.at("code").get<std::string>());
        m.type = bifurcation_type_from_string(jm.at("type").get<std::string>());
        m.marked_edge = jm.at("marked_edge").get<int>();
        m.diagram = diagram_from_json(jm.at("diagram"));
        lvl.marks.push_back(std::move(m));
      }
      for (const auto& js : jl.at("connections")) {
        ConnectionEntry s;
        s.code = code_from_hex(js.at("code").get<std::string>());
        s.type = bifurcation_type_from_string(js.at("type").get<std::string>());
        s.diagram = diagram_from_json(js.at("diagram"));
        lvl.connections.push_back(std::move(s));
      }
      c.levels.push_back(std::move(lvl));
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw argument_error(std::string("catalog JSON is malformed: ") + e.what());
  }
}

std::string render_counts_table(const Catalog& c) {
  std::ostringstream out;
  out << "  n";
  for (const char* col : kColumns) out << "  " << col;
  out << "\n";
  for (const CatalogLevel& lvl : c.levels) {
    std::array<int, 9> row = counts_for_level(lvl);
    out << "  " << lvl.n;
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::size_t width = std::string(kColumns[i]).size();
      std::string cell = std::to_string(row[i]);
      out << "  ";
      for (std::size_t pad = cell.size(); pad < width; ++pad) out << ' ';
      out << cell;
    }
    out << "\n";
  }
  return out.str();
}

std::vector<Discrepancy> diff_against_expected(const Catalog& c) {
  std::map<int, std::array<int, 9>> computed;
  for (const CatalogLevel& lvl : c.levels) computed[lvl.n] = counts_for_level(lvl);
  std::vector<Discrepancy> out;
  auto add = [&](int n, int column, int expected, const char* source) {
    auto it = computed.find(n);
    if (it == computed.end()) return;
    Discrepancy d;
    d.n = n;
    d.column = kColumns[column];
    d.computed = it->second[column];
    d.expected = expected;
    d.source = source;
    d.match = (d.computed == expected);
    out.push_back(std::move(d));
  };
  for (int n = 3; n <= 6; ++n) {
    for (int col = 0; col < 9; ++col)
      add(n, col, kHeadlineRows[n - 3][col], "headline");
    for (const RefCell& cell : kStatementCells)
      if (cell.n == n) add(cell.n, cell.column, cell.expected, "statement");
    for (const RefCell& cell : kBreakdownCells)
      if (cell.n == n) add(cell.n, cell.column, cell.expected, "breakdown");
  }
  return out;
}

bool hard_cell(int n, const std::string& column, const std::string& source) {
  if (source == "headline") return column == "Morse";
  if (source == "statement") {
    if (n == 4)
      return column == "HN" || column == "BSN" || column == "BDS" ||
             column == "HSC" || column == "BSC";
    if (n == 5)
      return column == "HN" || column == "HS" || column == "HSC" || column == "BSC";
    if (n == 6)
      return column == "SN" || column == "BSN" || column == "BDS" ||
             column == "HN" || column == "HSC" || column == "BSC";
    return false;
  }
  if (source == "breakdown") return n == 6 && column == "HS";
  return false;
}

std::string diagram_to_dot(const SeparatrixDiagram& d) {
  auto shape = [](VertexKind k) -> const char* {
    switch (k) {
      case VertexKind::InteriorSource: return "circle";
      case VertexKind::InteriorSink: return "doublecircle";
      case VertexKind::InteriorSaddle: return "diamond";
      case VertexKind::BoundarySource: return "triangle";
      case VertexKind::BoundarySink: return "invtriangle";
      case VertexKind::BoundarySaddle: return "square";
    }
    return "circle";
  };
  auto color = [](EdgeKind k) -> const char* {
    switch (k) {
      case EdgeKind::Stable: return "red";
      case EdgeKind::Unstable: return "green";
      case EdgeKind::SaddleConnection: return "black";
      case EdgeKind::BoundaryArc: return "gray";
    }
    return "black";
  };
  std::ostringstream out;
  out << "digraph flow {\n";
  for (int v = 0; v < d.map.n_vertices(); ++v)
    out << "  v" << v << " [shape=" << shape(d.vertex_kind[v]) << ", label=\"v" << v
        << "\"];\n";
  for (int e = 0; e < d.map.n_edges(); ++e) {
    auto [tail, head] = edge_endpoints(d, e);
    out << "  v" << tail << " -> v" << head << " [color=" << color(d.edge_kind[e]);
    if (d.map.edge_sign[e] < 0) out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

const SeparatrixDiagram* find_by_code(const Catalog& c, const CanonicalCode& code) {
  for (const CatalogLevel& lvl : c.levels) {
    for (const MorseEntry& m : lvl.morse)
      if (m.code == code) return &m.diagram;
    for (const MarkEntry& m : lvl.marks)
      if (m.code == code) return &m.diagram;
    for (const ConnectionEntry& s : lvl.connections)
      if (s.code == code) return &s.diagram;
  }
  return nullptr;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw structural_error("cannot open " + tmp + " for writing");
    out << content;
    out.flush();
    if (!out) throw structural_error("write to " + tmp + " failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw structural_error("cannot move " + tmp + " into place");
  }
}

}  // namespace mobius
