#include "cdm/io.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

namespace cdm {

namespace {

using Line = std::pair<int, std::string>;

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string line;
  for (int no = 1; std::getline(in, line); ++no) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (!tokens(line).empty()) out.push_back({no, line});
  }
  return out;
}

int to_int(const std::string& s, int line, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw ParseError(line, std::string("bad ") + what + " '" + s + "'");
}

Name to_name(const std::string& s, int line) {
  try {
    return Name(s);
  } catch (const std::exception& e) {
    throw ParseError(line, "bad name '" + s + "': " + e.what());
  }
}

PortRef to_port_ref(const std::string& s, int line) {
  auto colon = s.rfind(':');
  if (colon == std::string::npos) throw ParseError(line, "expected <vertex>:<port>, got '" + s + "'");
  return {to_name(s.substr(0, colon), line), to_int(s.substr(colon + 1), line, "port")};
}

void put_directed(ParsedGraph& p, const PortRef& a, const Permutation& g, const PortRef& b, int line) {
  auto it = p.graph.links().find(a);
  if (it != p.graph.links().end()) {
    if (it->second == Graph::Link{g, b}) return;
    p.conflicts.push_back({line, Violation{Condition::DuplicateEdge, to_string(a),
                                           "port already carries the edge from line " +
                                               std::to_string(p.edge_line.at(a))}});
    return;
  }
  p.graph.add_directed_edge(a, g, b);
  p.edge_line[a] = line;
}

// Graph records from `lines`; `dim` < 0 means a leading `dim` line is required.
ParsedGraph read_records(const std::vector<Line>& lines, int dim, std::optional<Name>* center) {
  ParsedGraph p;
  std::size_t k = 0;
  if (dim < 0 || (!lines.empty() && tokens(lines[0].second).front() == "dim")) {
    if (lines.empty()) throw ParseError(1, "empty graph: expected 'dim <n>'");
    auto t = tokens(lines[0].second);
    if (t.size() != 2 || t[0] != "dim") throw ParseError(lines[0].first, "expected 'dim <n>'");
    int d = to_int(t[1], lines[0].first, "dimension");
    if (d < 1 || d > 12) throw ParseError(lines[0].first, "dimension out of range");
    if (dim >= 0 && d != dim) throw ParseError(lines[0].first, "dimension differs from the rule");
    dim = d;
    k = 1;
  }
  p.graph = Graph(dim);
  for (; k < lines.size(); ++k) {
    const int no = lines[k].first;
    auto t = tokens(lines[k].second);
    if (t[0] == "vertex") {
      if (t.size() < 3 || t[2] != "ports") throw ParseError(no, "expected 'vertex <name> ports <p>...'");
      Name v = to_name(t[1], no);
      if (p.graph.has_vertex(v)) throw ParseError(no, "vertex " + v.str() + " declared twice");
      PortSet ps = 0;
      std::string label;
      std::size_t i = 3;
      for (; i < t.size() && t[i] != "label"; ++i) {
        int q = to_int(t[i], no, "port");
        if (q < 0 || q > dim + 1) throw ParseError(no, "port " + t[i] + " outside 0.." + std::to_string(dim + 1));
        if (has_port(ps, q)) throw ParseError(no, "port " + t[i] + " listed twice");
        ps |= port_bit(q);
      }
      if (i < t.size()) {
        if (i + 2 != t.size()) throw ParseError(no, "expected 'label <sym>' at the end");
        label = t[i + 1];
      }
      p.graph.add_vertex(v, ps, label);
      p.vertex_line[v] = no;
    } else if (t[0] == "edge") {
      if (t.size() != 5 || t[3] != "perm") throw ParseError(no, "expected 'edge <u>:<p> <v>:<q> perm <images>'");
      PortRef a = to_port_ref(t[1], no), b = to_port_ref(t[2], no);
      Permutation g;
      try {
        g = Permutation::parse(dim, t[4]);
      } catch (const std::exception& e) {
        throw ParseError(no, std::string("bad gluing: ") + e.what());
      }
      put_directed(p, a, g, b, no);
      if (!(a == b)) put_directed(p, b, g.inverse(), a, no);
    } else if (t[0] == "center" && center) {
      if (t.size() != 2) throw ParseError(no, "expected 'center <name>'");
      *center = to_name(t[1], no);
    } else {
      throw ParseError(no, "unknown record '" + t[0] + "'");
    }
  }
  return p;
}

std::string gluing_text(const Permutation& g) {
  if (g.is_transposition()) {
    for (int i = 0; i < g.size(); ++i) {
      if (g(i) != i) return "s" + std::to_string(i) + std::to_string(g(i));
    }
  }
  return g.to_string();
}

void write_records(std::ostream& out, const Graph& g, const std::string& indent) {
  for (const auto& [n, info] : g.vertices()) {
    out << indent << "vertex " << n.str() << " ports";
    for (int p : ports_of(info.ports)) out << ' ' << p;
    if (!info.label.empty()) out << " label " << info.label;
    out << '\n';
  }
  for (const auto& e : g.undirected_edges()) {
    out << indent << "edge " << to_string(e.from) << ' ' << to_string(e.to) << " perm " << e.gluing.to_string() << '\n';
  }
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ParsedGraph read_graph(const std::string& text) { return read_records(content_lines(text), -1, nullptr); }

std::vector<LocatedViolation> locate_violations(const ParsedGraph& p) {
  std::vector<LocatedViolation> out;
  for (const auto& [line, v] : p.conflicts) out.push_back({line, v});
  std::map<std::string, int> where;
  for (const auto& [v, line] : p.vertex_line) where[v.str()] = line;
  for (const auto& e : p.graph.edges()) where[to_string(e)] = p.edge_line.at(e.from);
  for (auto& v : validate(p.graph)) {
    auto it = where.find(v.where);
    out.push_back({it == where.end() ? 0 : it->second, std::move(v)});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.line < b.line; });
  return out;
}

Graph parse_graph(const std::string& text) {
  auto p = read_graph(text);
  auto v = locate_violations(p);
  if (!v.empty()) {
    throw ParseError(v.front().line, std::string(condition_name(v.front().violation.condition)) + ": " +
                                         v.front().violation.message + " at " + v.front().violation.where);
  }
  return p.graph;
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << "dim " << g.dim() << '\n';
  write_records(out, g, "");
  return out.str();
}

LocalRule parse_rule(const std::string& text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(1, "empty rule file");
  auto h = tokens(lines[0].second);
  if (h.size() != 7 || h[0] != "rule" || h[1] != "radius" || h[3] != "bound" || h[5] != "dim") {
    throw ParseError(lines[0].first, "expected 'rule radius <r> bound <b> dim <n>'");
  }
  const int no = lines[0].first;
  int dim = to_int(h[6], no, "dimension");
  LocalRule f;
  try {
    f = LocalRule(dim, to_int(h[2], no, "radius"), to_int(h[4], no, "bound"));
  } catch (const RuleError& e) {
    throw ParseError(no, e.what());
  }
  std::size_t k = 1;
  auto expect = [&](const std::vector<std::string>& want) {
    if (k >= lines.size()) throw ParseError(lines.back().first, "unexpected end of file");
    if (tokens(lines[k].second) != want) {
      std::string w;
      for (const auto& s : want) w += (w.empty() ? "" : " ") + s;
      throw ParseError(lines[k].first, "expected '" + w + "'");
    }
    ++k;
  };
  auto block = [&](const std::string& name) {
    expect({name, "{"});
    std::vector<Line> body;
    while (k < lines.size() && tokens(lines[k].second) != std::vector<std::string>{"}"}) body.push_back(lines[k++]);
    expect({"}"});
    return body;
  };
  while (k < lines.size()) {
    auto t = tokens(lines[k].second);
    const int at = lines[k].first;
    if (t[0] == "default") {
      if (t.size() != 2) throw ParseError(at, "expected 'default <identity|subdivide|none>'");
      if (t[1] == "identity") f.set_fallback(Builtin::Identity);
      else if (t[1] == "subdivide") f.set_fallback(Builtin::Subdivide);
      else if (t[1] == "none") f.set_fallback(Builtin::None);
      else throw ParseError(at, "unknown default '" + t[1] + "'");
      ++k;
      continue;
    }
    expect({"entry", "{"});
    std::optional<Name> center;
    auto d = read_records(block("disk"), dim, &center);
    auto o = read_records(block("output"), dim, nullptr);
    expect({"}"});
    if (!center) throw ParseError(at, "entry disk has no 'center' line");
    for (const auto* part : {&d, &o}) {
      auto v = locate_violations(*part);
      if (!v.empty()) throw ParseError(v.front().line ? v.front().line : at, v.front().violation.message);
    }
    try {
      f.add_entry(d.graph, *center, o.graph);
    } catch (const RuleError& e) {
      throw ParseError(at, e.what());
    }
  }
  return f;
}

std::string serialize_rule(const LocalRule& f) {
  std::ostringstream out;
  out << "rule radius " << f.radius() << " bound " << f.bound() << " dim " << f.dim() << '\n';
  if (f.fallback() != Builtin::None) out << "default " << builtin_name(f.fallback()) << '\n';
  for (const auto& e : f.entries()) {
    out << "entry {\n  disk {\n    center " << e.center.str() << '\n';
    write_records(out, e.disk, "    ");
    out << "  }\n  output {\n";
    write_records(out, e.output, "    ");
    out << "  }\n}\n";
  }
  return out.str();
}

std::vector<MoveRecord> parse_moves(const std::string& text, int dim) {
  std::vector<MoveRecord> out;
  for (const auto& [no, line] : content_lines(text)) {
    try {
      out.push_back(parse_move(line, dim));
    } catch (const std::exception& e) {
      throw ParseError(no, e.what());
    }
  }
  return out;
}

std::string serialize_moves(const std::vector<MoveRecord>& moves) {
  std::string out;
  for (const auto& m : moves) out += to_string(m) + '\n';
  return out;
}

std::string export_dot(const Graph& g) {
  std::ostringstream out;
  out << "graph G {\n  node [shape=triangle];\n";
  for (const auto& [n, info] : g.vertices()) {
    std::string label = n.str() + "\\nports";
    for (int p : ports_of(info.ports)) label += " " + std::to_string(p);
    if (!info.label.empty()) label += "\\n" + info.label;
    out << "  " << quoted(n.str()) << " [label=" << quoted(label) << "];\n";
  }
  for (const auto& e : g.undirected_edges()) {
    out << "  " << quoted(e.from.vertex.str()) << " -- " << quoted(e.to.vertex.str()) << " [label="
        << quoted(std::to_string(e.from.port) + "↔" + std::to_string(e.to.port) + " " + gluing_text(e.gluing)) << "];\n";
  }
  out << "}\n";
  return out.str();
}

Report& Report::add(std::string key, std::string value) {
  fields_.emplace_back(std::move(key), std::move(value));
  return *this;
}

std::string Report::str() const {
  std::string out;
  for (const auto& [k, v] : fields_) out += k + ": " + v + '\n';
  return out;
}

void add_certificate(Report& r, const RuleCertificate& c) {
  r.add(c.property, cert_verdict_name(c.verdict));
  r.add(c.property + ".scope", c.scope);
  r.add(c.property + ".checked", static_cast<long long>(c.checked));
  if (!c.witness.empty()) r.add(c.property + ".witness", c.witness);
  if (c.witness_disk) {
    std::string g = serialize_graph(c.witness_disk->graph);
    for (auto& ch : g) {
      if (ch == '\n') ch = ';';
    }
    r.add(c.property + ".witness-disk", "center " + c.witness_disk->center.str() + "; " + g);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace cdm
