#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cdm/dynamics.hpp"
#include "cdm/graph.hpp"
#include "cdm/pachner.hpp"

namespace cdm {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

/// A graph read as written: edges are stored per direction without merging,
/// so that closure problems survive for validation.
struct ParsedGraph {
  Graph graph;
  std::map<Name, int> vertex_line;
  std::map<PortRef, int> edge_line;     // both directions of every edge record
  std::vector<std::pair<int, Violation>> conflicts;  // port reuse across records
};

struct LocatedViolation {
  int line = 0;  // 0 when no single record is responsible
  Violation violation;
};

/// Syntax errors throw ParseError; structural problems are kept for validate.
ParsedGraph read_graph(const std::string& text);
std::vector<LocatedViolation> locate_violations(const ParsedGraph& p);
/// read_graph, then ParseError on the first located violation.
Graph parse_graph(const std::string& text);
/// `dim`, vertices by name, then one `edge` line per reciprocal pair.
std::string serialize_graph(const Graph& g);

/// `rule radius <r> bound <b> dim <n>`, optional `default <builtin>`, then
/// `entry { disk { center <c> ... } output { ... } }` blocks, one token group per line.
LocalRule parse_rule(const std::string& text);
std::string serialize_rule(const LocalRule& f);

/// One move record per line; '#' comments.
std::vector<MoveRecord> parse_moves(const std::string& text, int dim);
std::string serialize_moves(const std::vector<MoveRecord>& moves);

/// Undirected DOT: one node per vertex, one edge per reciprocal pair labeled `p↔q γ`.
std::string export_dot(const Graph& g);

/// Ordered key: value lines.
class Report {
 public:
  Report& add(std::string key, std::string value);
  Report& add(std::string key, long long value) { return add(std::move(key), std::to_string(value)); }
  std::string str() const;
  const std::vector<std::pair<std::string, std::string>>& fields() const { return fields_; }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

void add_certificate(Report& r, const RuleCertificate& c);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace cdm
