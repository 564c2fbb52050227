#include <chrono>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cdm/dynamics.hpp"
#include "cdm/geometry.hpp"
#include "cdm/io.hpp"
#include "cdm/pachner.hpp"

using namespace cdm;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

LocalRule load_rule(const std::string& source) {
  if (source.rfind("builtin:", 0) == 0) {
    std::string which = source.substr(8);
    if (which == "identity") return identity_rule(2, 1);
    if (which == "subdivide") return subdivision_rule();
    if (which == "collapse") return collapse_rule();
    if (which == "port-sensitive") return port_sensitive_rule();
    throw Failure("unknown builtin rule '" + which + "' (identity, subdivide, collapse, port-sensitive)");
  }
  return parse_rule(read_file(source));
}

Graph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

void emit_graph(const Graph& g, const std::string& out, Report& r) {
  if (out.empty()) {
    std::cout << serialize_graph(g);
  } else {
    write_file(out, serialize_graph(g));
    r.add("output", out);
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double x) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(3);
  s << x;
  return s.str();
}

// Report goes to stderr when stdout carries a graph.
void print(const Report& r, bool to_err) { (to_err ? std::cerr : std::cout) << r.str(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal dynamics of discrete manifolds: graphs, Pachner moves, local rules"};
  app.require_subcommand(1);

  std::string graph_path, rule_path, out_path, move_spec, moves_path, log_path;
  std::vector<std::string> checks;
  int bound_s = -1, budget = -1, steps = 1, dim = 2, radius = 1, r_prime = 1;
  std::size_t cap = 20000;
  bool strongify_flag = false, torsion_flag = false, manifold_flag = false, quotient_flag = false, print_flag = false;
  std::string property = "all", rule_out;

  auto* validate_cmd = app.add_subcommand("validate", "check graph conditions, optionally torsion / bounded-star / manifold");
  validate_cmd->add_option("graph", graph_path, "graph file")->required();
  validate_cmd->add_option("--check", checks, "torsion, bounded-star, manifold")
      ->check(CLI::IsMember({"torsion", "bounded-star", "manifold"}));
  validate_cmd->add_option("--bound-s", bound_s, "bound for --check bounded-star");
  validate_cmd->add_option("--budget", budget, "move budget for --check manifold");

  auto* evolve_cmd = app.add_subcommand("evolve", "apply the induced dynamics");
  evolve_cmd->add_option("graph", graph_path, "graph file")->required();
  evolve_cmd->add_option("rule", rule_path, "rule file or builtin:<name>")->required();
  evolve_cmd->add_option("--steps", steps, "number of steps")->check(CLI::NonNegativeNumber);
  evolve_cmd->add_option("-o,--out", out_path, "output graph file (stdout if absent)");

  auto* certify_cmd = app.add_subcommand("certify", "decide rotation commutation and preservation properties");
  certify_cmd->add_option("rule", rule_path, "rule file or builtin:<name>")->required();
  certify_cmd->add_option("--property", property, "all, rotation, bounded-star, torsion-free, manifold")
      ->check(CLI::IsMember({"all", "rotation", "bounded-star", "torsion-free", "manifold"}));
  certify_cmd->add_option("--r-prime", r_prime, "output radius r' (s = 2r')")->check(CLI::PositiveNumber);
  certify_cmd->add_option("--bound-s", bound_s, "star bound s, must be even (sets r' = s/2)");
  certify_cmd->add_option("--budget", budget, "work budget: disk cap and manifold moves");
  certify_cmd->add_option("--cap", cap, "maximum number of enumerated disks");
  certify_cmd->add_flag("--strongify", strongify_flag, "certify the strongified rule instead");
  certify_cmd->add_option("--write-rule", rule_out, "write the certified rule to this file");

  auto* move_cmd = app.add_subcommand("move", "apply one Pachner move or rotation");
  move_cmd->add_option("graph", graph_path, "graph file")->required();
  move_cmd->add_option("move", move_spec, "e.g. 'unshell u=u ports=0,1'")->required();
  move_cmd->add_option("-o,--out", out_path, "output graph file (stdout if absent)");
  move_cmd->add_option("--log", log_path, "append the completed move record here");

  auto* replay_cmd = app.add_subcommand("replay", "apply a logged move sequence");
  replay_cmd->add_option("graph", graph_path, "graph file")->required();
  replay_cmd->add_option("moves", moves_path, "move log")->required();
  replay_cmd->add_option("-o,--out", out_path, "output graph file (stdout if absent)");

  auto* dot_cmd = app.add_subcommand("export-dot", "render a graph as DOT");
  dot_cmd->add_option("graph", graph_path, "graph file")->required();
  dot_cmd->add_option("-o,--out", out_path, "DOT file (stdout if absent)");

  auto* enum_cmd = app.add_subcommand("enum-disks", "enumerate pointed disks up to isomorphism");
  enum_cmd->add_option("--dim", dim, "dimension n")->check(CLI::Range(1, 4));
  enum_cmd->add_option("--radius", radius, "disk radius")->check(CLI::NonNegativeNumber);
  enum_cmd->add_option("--bound-s", bound_s, "only s-bounded-star disks");
  enum_cmd->add_flag("--torsion-free", torsion_flag, "only torsion-free disks");
  enum_cmd->add_flag("--manifold", manifold_flag, "only discrete-manifold disks");
  enum_cmd->add_option("--budget", budget, "move budget for --manifold");
  enum_cmd->add_option("--cap", cap, "maximum number of disks");
  enum_cmd->add_flag("--rotation-quotient", quotient_flag, "identify rotation-equivalent disks");
  enum_cmd->add_flag("--print", print_flag, "print every disk");

  CLI11_PARSE(app, argc, argv);
  const auto t0 = std::chrono::steady_clock::now();
  Report r;
  bool to_err = false;
  try {
    if (*validate_cmd) {
      r.add("command", "validate").add("file", graph_path);
      auto parsed = read_graph(read_file(graph_path));
      auto violations = locate_violations(parsed);
      r.add("dim", parsed.graph.dim()).add("vertices", static_cast<long long>(parsed.graph.size()));
      r.add("violations", static_cast<long long>(violations.size()));
      for (const auto& v : violations) {
        r.add("violation", "line " + std::to_string(v.line) + ": " + condition_name(v.violation.condition) + ": " +
                               v.violation.message + " (" + v.violation.where + ")");
      }
      bool ok = violations.empty();
      if (ok) {
        const Graph& g = parsed.graph;
        for (const auto& c : checks) {
          if (c == "torsion") {
            auto w = torsion_scan(g);
            r.add("torsion", w.empty() ? "free" : "found");
            if (!w.empty()) {
              r.add("torsion.witness", to_string(Face{w.front().vertex, w.front().face}) + " ~ " +
                                           to_string(Face{w.front().vertex, w.front().other}) + " by " +
                                           to_string(w.front().hinge));
              ok = false;
            }
          } else if (c == "bounded-star") {
            if (bound_s < 0) throw Failure("--check bounded-star needs --bound-s");
            auto b = bounded_star_check(g, bound_s);
            r.add("bounded-star", std::string(b.bounded ? "yes" : "no") + " (s=" + std::to_string(bound_s) + ")");
            if (!b.bounded) {
              r.add("bounded-star.witness", to_string(b.longest));
              ok = false;
            }
          } else {
            auto m = is_discrete_manifold(g, budget < 0 ? 2000 : budget);
            r.add("manifold", verdict_name(m.verdict));
            for (const auto& s : m.stars) {
              if (s.verdict != Verdict::Yes) r.add("manifold.star", s.vertex.str() + ": " + verdict_name(s.verdict) + ": " + s.reason);
            }
            ok &= m.verdict == Verdict::Yes;
          }
        }
      }
      r.add("result", ok ? "valid" : "invalid");
      r.add("seconds", fixed(seconds_since(t0)));
      print(r, false);
      return ok ? 0 : 1;
    }

    if (*evolve_cmd) {
      to_err = out_path.empty();
      r.add("command", "evolve").add("file", graph_path).add("rule", rule_path).add("steps", steps);
      Graph g = load_graph(graph_path);
      LocalRule f = load_rule(rule_path);
      if (f.dim() != g.dim()) throw Failure("rule dimension differs from the graph");
      r.add("vertices.0", static_cast<long long>(g.size()));
      for (int k = 1; k <= steps; ++k) {
        try {
          g = evaluate(f, g);
        } catch (const EvaluationError& e) {
          r.add("error", "step " + std::to_string(k) + ": " + e.what());
          if (e.first) r.add("error.vertex", e.first->str());
          if (e.second) r.add("error.other", e.second->str());
          print(r, to_err);
          return 1;
        }
        r.add("vertices." + std::to_string(k), static_cast<long long>(g.size()));
      }
      r.add("valid", is_valid(g) ? "yes" : "no");
      emit_graph(g, out_path, r);
      r.add("seconds", fixed(seconds_since(t0)));
      print(r, to_err);
      return 0;
    }

    if (*certify_cmd) {
      r.add("command", "certify").add("rule", rule_path);
      LocalRule f = load_rule(rule_path);
      if (bound_s >= 0) {
        if (bound_s == 0 || bound_s % 2) throw Failure("--bound-s must be a positive even number (s = 2r')");
        r_prime = bound_s / 2;
      }
      PreservationOptions opt;
      opt.r_prime = r_prime;
      opt.cap = cap;
      if (budget >= 0) {
        opt.cap = std::min<std::size_t>(cap, static_cast<std::size_t>(budget));
        opt.manifold_budget = budget;
      }
      r.add("dim", f.dim()).add("radius", f.radius()).add("bound", f.bound());
      r.add("entries", static_cast<long long>(f.entries().size())).add("default", builtin_name(f.fallback()));
      if (strongify_flag) {
        try {
          f = strongify(f);
        } catch (const StrongifyError& e) {
          r.add("strongify", std::string("failed: ") + e.what());
          print(r, false);
          return 1;
        }
        r.add("strongified.entries", static_cast<long long>(f.entries().size()));
      }
      if (!rule_out.empty()) write_file(rule_out, serialize_rule(f));
      bool all_pass = true, any_unknown = false;
      auto note = [&](const RuleCertificate& c) {
        add_certificate(r, c);
        all_pass &= c.verdict == CertVerdict::Pass;
        any_unknown |= c.verdict == CertVerdict::Unknown;
      };
      std::optional<CertVerdict> strong;
      if (property == "all" || property == "rotation") {
        auto c = check_strongly_rotation_commuting(f);
        strong = c.verdict;
        note(c);
        if (c.verdict == CertVerdict::Fail && !strongify_flag) {
          r.add("suggestion", "rerun with --strongify to build an equivalent strongly-rotation-commuting rule");
        }
      }
      if (strong) opt.rotation_quotient = *strong == CertVerdict::Pass;
      std::vector<Property> wanted;
      for (auto [name, p] : {std::pair{"bounded-star", Property::BoundedStar}, std::pair{"torsion-free", Property::TorsionFree},
                             std::pair{"manifold", Property::DiscreteManifold}}) {
        if (property == "all" || property == name) wanted.push_back(p);
      }
      if (!wanted.empty()) {
        for (const auto& c : check_preservation(f, wanted, opt)) note(c);
      }
      if (property == "all") r.add("cddm", all_pass ? "pass" : any_unknown ? "unknown-or-fail" : "fail");
      r.add("result", all_pass ? "pass" : "not certified");
      r.add("seconds", fixed(seconds_since(t0)));
      print(r, false);
      return all_pass ? 0 : 1;
    }

    if (*move_cmd) {
      to_err = out_path.empty();
      Graph g = load_graph(graph_path);
      r.add("command", "move").add("file", graph_path);
      MoveRecord m = parse_move(move_spec, g.dim());
      Graph h = apply_move(g, m);
      r.add("move", to_string(m));
      r.add("vertices.before", static_cast<long long>(g.size())).add("vertices.after", static_cast<long long>(h.size()));
      r.add("valid", is_valid(h) ? "yes" : "no");
      if (!log_path.empty()) {
        std::string prior;
        try {
          prior = read_file(log_path);
        } catch (const std::exception&) {
        }
        write_file(log_path, prior + serialize_moves({m}));
        r.add("log", log_path);
      }
      emit_graph(h, out_path, r);
      print(r, to_err);
      return 0;
    }

    if (*replay_cmd) {
      to_err = out_path.empty();
      Graph g = load_graph(graph_path);
      auto moves = parse_moves(read_file(moves_path), g.dim());
      r.add("command", "replay").add("file", graph_path).add("moves", static_cast<long long>(moves.size()));
      Graph h = apply_moves(g, moves);
      r.add("vertices", static_cast<long long>(h.size()));
      emit_graph(h, out_path, r);
      print(r, to_err);
      return 0;
    }

    if (*dot_cmd) {
      auto dot = export_dot(load_graph(graph_path));
      if (out_path.empty()) {
        std::cout << dot;
      } else {
        write_file(out_path, dot);
        r.add("command", "export-dot").add("output", out_path);
        print(r, false);
      }
      return 0;
    }

    if (*enum_cmd) {
      DiskConstraints c;
      if (bound_s >= 0) c.bounded_star = bound_s;
      c.torsion_free = torsion_flag;
      c.discrete_manifold = manifold_flag;
      if (budget >= 0) c.manifold_budget = budget;
      std::size_t shown = 0;
      std::ostringstream disks;
      auto stats = enum_disks(
          dim, radius, c, cap,
          [&](const PointedDisk& d) {
            if (print_flag) {
              disks << "# disk " << ++shown << "\ncenter " << d.center.str() << '\n' << serialize_graph(d.graph);
            }
            return true;
          },
          quotient_flag ? Quotient::Rotation : Quotient::None);
      if (print_flag) std::cout << disks.str();
      r.add("command", "enum-disks").add("dim", dim).add("radius", radius);
      r.add("disks", static_cast<long long>(stats.emitted)).add("states", static_cast<long long>(stats.states));
      r.add("complete", stats.complete ? "yes" : "no");
      if (manifold_flag) r.add("manifold.unknown", static_cast<long long>(stats.manifold_unknown));
      r.add("seconds", fixed(seconds_since(t0)));
      print(r, print_flag);
      return stats.complete ? 0 : 1;
    }
  } catch (const std::exception& e) {
    r.add("error", e.what());
    print(r, true);
    return 2;
  }
  return 0;
}
