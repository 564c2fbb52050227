#include <set>
#include <unordered_set>

#include "cdm/dynamics.hpp"
#include "cdm/geometry.hpp"
#include "cdm/pachner.hpp"

namespace cdm {

namespace {

struct State {
  Graph g;
  std::set<PortRef> open;
  std::map<Name, int> dist;
  int next = 1;
};

class Enumerator {
 public:
  Enumerator(int n, int radius, const DiskConstraints& c, std::size_t cap,
             const std::function<bool(const PointedDisk&)>& visit, Quotient q, std::size_t max_states)
      : n_(n), radius_(radius), c_(c), cap_(cap), visit_(visit), quotient_(q), max_states_(max_states) {}

  EnumStats run() {
    std::vector<PortSet> centers;
    if (quotient_ == Quotient::Rotation) {
      centers.push_back(static_cast<PortSet>(full_port_set(n_) & ~port_bit(n_ + 1)));
    } else {
      for (int m = 0; m <= n_ + 1; ++m) centers.push_back(static_cast<PortSet>(full_port_set(n_) & ~port_bit(m)));
    }
    for (PortSet ps : centers) {
      if (stop_) break;
      State s{Graph(n_), {}, {}, 1};
      s.g.add_vertex(center_, ps);
      s.dist[center_] = 0;
      for (int p : ports_of(ps)) s.open.insert({center_, p});
      step(s);
    }
    return stats_;
  }

 private:
  bool admissible(const Graph& g) const {
    if (c_.bounded_star && !bounded_star_check(g, *c_.bounded_star).bounded) return false;
    if (c_.torsion_free && !torsion_free(g)) return false;
    return true;
  }

  void push(State&& s, bool glued) {
    if (stop_) return;
    if (glued && !admissible(s.g)) return;
    CodeMarks marks{&s.open, nullptr};
    if (!seen_.insert(pointed_code(s.g, center_, quotient_, marks)).second) return;
    step(s);
  }

  void emit(const State& s) {
    if (c_.discrete_manifold) {
      Verdict v = is_discrete_manifold(s.g, c_.manifold_budget).verdict;
      if (v == Verdict::Unknown) ++stats_.manifold_unknown;
      if (v != Verdict::Yes) return;
    }
    if (stats_.emitted == cap_) {
      stats_.complete = false;
      stop_ = true;
      return;
    }
    ++stats_.emitted;
    if (!visit_(PointedDisk{s.g, center_, radius_})) stop_ = true;
  }

  void step(const State& s) {
    if (stop_) return;
    if (++stats_.states > max_states_) {
      stats_.complete = false;
      stop_ = true;
      return;
    }
    if (s.open.empty()) {
      emit(s);
      return;
    }
    const PortRef* at = nullptr;
    for (const auto& o : s.open) {
      if (!at || s.dist.at(o.vertex) < s.dist.at(at->vertex)) at = &o;
    }
    const PortRef here = *at;
    const Name& x = here.vertex;
    const int p = here.port;
    const PortSet px = s.g.ports(x);

    {
      State t = s;
      t.open.erase(here);
      push(std::move(t), false);
    }
    for (const auto& there : s.open) {
      if (there == here) continue;
      const PortSet py = s.g.ports(there.vertex);
      for (const auto& gamma : Permutation::odd(n_)) {
        if (gamma(p) != there.port || gamma.apply(px) != py) continue;
        State t = s;
        t.g.add_edge(here, gamma, there);
        t.open.erase(here);
        t.open.erase(there);
        push(std::move(t), true);
      }
    }
    const int d = s.dist.at(x) + 1;
    if (d > radius_ + 1) return;
    const Name y = Name::atom("x" + std::to_string(s.next));
    auto grow = [&](PortSet py, const Permutation& gamma) {
      State t = s;
      t.g.add_vertex(y, py);
      t.g.add_edge(here, gamma, {y, gamma(p)});
      t.dist[y] = d;
      ++t.next;
      t.open.erase(here);
      for (int q : ports_of(py)) {
        if (q != gamma(p)) t.open.insert({y, q});
      }
      push(std::move(t), true);
    };
    if (quotient_ == Quotient::Rotation) {
      Permutation s01 = Permutation::transposition(n_, 0, 1);
      grow(s01.apply(px), s01);
      return;
    }
    for (const auto& gamma : Permutation::odd(n_)) grow(gamma.apply(px), gamma);
  }

  int n_;
  int radius_;
  DiskConstraints c_;
  std::size_t cap_;
  const std::function<bool(const PointedDisk&)>& visit_;
  Quotient quotient_;
  std::size_t max_states_;
  Name center_ = Name::atom("c");
  std::unordered_set<std::string> seen_;
  EnumStats stats_;
  bool stop_ = false;
};

}  // namespace

EnumStats enum_disks(int n, int radius, const DiskConstraints& constraints, std::size_t cap,
                     const std::function<bool(const PointedDisk&)>& visit, Quotient quotient, std::size_t max_states) {
  if (n < 1) throw RuleError("dimension must be positive");
  if (radius < 0) throw RuleError("negative radius");
  if (cap == 0) {
    EnumStats s;
    s.complete = false;
    return s;
  }
  return Enumerator(n, radius, constraints, cap, visit, quotient, max_states).run();
}

std::vector<PointedDisk> enum_disks(int n, int radius, const DiskConstraints& constraints, std::size_t cap,
                                    EnumStats* stats, Quotient quotient) {
  std::vector<PointedDisk> out;
  EnumStats s = enum_disks(
      n, radius, constraints, cap,
      [&](const PointedDisk& d) {
        out.push_back(d);
        return true;
      },
      quotient);
  if (stats) *stats = s;
  return out;
}

}  // namespace cdm
