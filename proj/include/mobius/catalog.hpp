#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mobius/bifurcation.hpp"
#include "mobius/diagram.hpp"
#include "mobius/enumerate.hpp"
#include "mobius/equivalence.hpp"

namespace mobius {

inline constexpr const char* kEngineVersion = "0.1.0";

struct MorseEntry {
  CanonicalCode code;
  bool self_reverse = false;
  SeparatrixDiagram diagram;
};

struct MarkEntry {
  CanonicalCode code;  // canonical code of the (diagram, marked edge) pair
  BifurcationType type = BifurcationType::SN;
  int marked_edge = -1;
  SeparatrixDiagram diagram;
};

struct ConnectionEntry {
  CanonicalCode code;
  BifurcationType type = BifurcationType::SC;
  SeparatrixDiagram diagram;
};

struct CatalogLevel {
  int n = 0;
  std::vector<MorseEntry> morse;           // sorted by code
  std::vector<MarkEntry> marks;            // sorted by code
  std::vector<ConnectionEntry> connections;  // sorted by code
};

struct Catalog {
  std::string engine_version = kEngineVersion;
  int max_points = 0;
  std::vector<CatalogLevel> levels;  // n = 3 .. max_points
};

// Enumerate everything up to max_points (3..6).  Every stored diagram is
// re-validated; a failure aborts with the offending diagram serialized into
// the error message.
Catalog build_catalog(int max_points);

nlohmann::ordered_json catalog_to_json(const Catalog& c);
Catalog catalog_from_json(const nlohmann::json& j);

// One row per point count, nine columns in fixed order:
// Morse SN SC BSN BDS HN HS HSC BSC.
std::string render_counts_table(const Catalog& c);

struct Discrepancy {
  int n = 0;
  std::string column;
  int computed = 0;
  int expected = 0;
  std::string source;  // "headline" | "statement" | "breakdown"
  bool match = false;
};

// Compare the catalog against the built-in reference counts.  Every
// reference cell appears exactly once per source.
std::vector<Discrepancy> diff_against_expected(const Catalog& c);

// Reference cells that gate `verify`'s exit status; the remaining cells are
// informational (the sources disagree among themselves on them).
bool hard_cell(int n, const std::string& column, const std::string& source);

// Graphviz rendering: vertex shapes by kind, edge colors by kind.
std::string diagram_to_dot(const SeparatrixDiagram& d);

// Find a diagram by canonical code hex across all three lists.
const SeparatrixDiagram* find_by_code(const Catalog& c, const CanonicalCode& code);

void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace mobius
