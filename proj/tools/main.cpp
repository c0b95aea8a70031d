#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mobius/catalog.hpp"
#include "mobius/errors.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mobius::structural_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty())
    std::cout << content;
  else
    mobius::write_file_atomic(out_path, content);
}

mobius::Catalog load_catalog(const std::string& path) {
  nlohmann::json j = nlohmann::json::parse(read_file(path));
  return mobius::catalog_from_json(j);
}

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int run_census(int max_points, const std::string& out_path, bool stamp) {
  mobius::Catalog cat = mobius::build_catalog(max_points);
  nlohmann::ordered_json j = mobius::catalog_to_json(cat);
  if (stamp) j["generated_at"] = utc_timestamp();
  emit(j.dump(2) + "\n", out_path);
  return 0;
}

int run_table(const std::string& catalog_path) {
  std::cout << mobius::render_counts_table(load_catalog(catalog_path));
  return 0;
}

int run_verify(const std::string& catalog_path) {
  mobius::Catalog cat = load_catalog(catalog_path);
  bool hard_ok = true;
  for (const mobius::Discrepancy& d : mobius::diff_against_expected(cat)) {
    bool hard = mobius::hard_cell(d.n, d.column, d.source);
    std::cout << "n=" << d.n << " " << d.column << " computed=" << d.computed
              << " expected=" << d.expected << " [" << d.source << "] "
              << (d.match ? "ok" : "MISMATCH") << (hard ? "" : " (informational)")
              << "\n";
    if (hard && !d.match) hard_ok = false;
  }
  std::cout << (hard_ok ? "verify: all checked counts match\n"
                        : "verify: checked counts differ\n");
  return hard_ok ? 0 : 1;
}

int run_export(const std::string& catalog_path, const std::string& code_hex,
               const std::string& format, const std::string& out_path) {
  mobius::Catalog cat = load_catalog(catalog_path);
  mobius::CanonicalCode code = mobius::code_from_hex(code_hex);
  const mobius::SeparatrixDiagram* d = mobius::find_by_code(cat, code);
  if (!d) throw mobius::not_found_error("no catalog entry with code " + code_hex);
  if (format == "json")
    emit(mobius::diagram_to_json(*d).dump(2) + "\n", out_path);
  else
    emit(mobius::diagram_to_dot(*d), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Census of Morse flows and their bifurcations on the Mobius strip"};
  app.require_subcommand(1);

  int max_points = 6;
  std::string census_out;
  bool stamp = false;
  CLI::App* census = app.add_subcommand("census", "Enumerate flows and write the catalog JSON");
  census->add_option("--max-points", max_points, "Largest number of singular points (3-6)")
      ->check(CLI::Range(3, 6));
  census->add_option("--out", census_out, "Write to this file instead of stdout");
  census->add_flag("--stamp", stamp, "Include a generation timestamp (off by default)");

  std::string table_catalog;
  CLI::App* table = app.add_subcommand("table", "Print the census counts as a table");
  table->add_option("--catalog", table_catalog, "Catalog JSON file")->required();

  std::string verify_catalog;
  CLI::App* verify = app.add_subcommand("verify", "Compare a catalog against the reference counts");
  verify->add_option("--catalog", verify_catalog, "Catalog JSON file")->required();

  std::string export_catalog, export_code, export_format = "json", export_out;
  CLI::App* exp = app.add_subcommand("export", "Export one diagram from a catalog");
  exp->add_option("--catalog", export_catalog, "Catalog JSON file")->required();
  exp->add_option("--code", export_code, "Canonical code (hex) of the diagram")->required();
  exp->add_option("--format", export_format, "json or graph-text")
      ->check(CLI::IsMember({"json", "graph-text"}));
  exp->add_option("--out", export_out, "Write to this file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (census->parsed()) return run_census(max_points, census_out, stamp);
    if (table->parsed()) return run_table(table_catalog);
    if (verify->parsed()) return run_verify(verify_catalog);
    if (exp->parsed()) return run_export(export_catalog, export_code, export_format, export_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
