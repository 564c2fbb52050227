#include "cdm/canonical.hpp"

#include <algorithm>

namespace cdm {

namespace {

void put(std::string& out, int v) {
  out += std::to_string(v);
  out += ' ';
}

ComponentLabeling traverse(const Graph& g, const Name& root, const Permutation& root_frame, Quotient quotient,
                           const CodeMarks& marks) {
  const int n = g.dim();
  const Permutation flip = Permutation::transposition(n, 0, 1);
  const Permutation id = Permutation::identity(n);
  ComponentLabeling out;
  std::map<Name, int> index{{root, 0}};
  out.order.push_back(root);
  out.frames.push_back(root_frame);
  for (std::size_t i = 0; i < out.order.size(); ++i) {
    const Name u = out.order[i];
    const Permutation rho = out.frames[i];
    const Permutation rho_inv = rho.inverse();
    const auto& info = g.vertex(u);
    out.code += '[';
    out.code += info.label;
    out.code += marks.marked_vertices && marks.marked_vertices->count(u) ? "|*" : "|";
    put(out.code, rho.apply(info.ports));
    for (int framed = 0; framed < n + 2; ++framed) {
      const int p = rho_inv(framed);
      if (!has_port(info.ports, p)) continue;
      auto l = g.link({u, p});
      if (!l) {
        out.code += marks.open_ports && marks.open_ports->count({u, p}) ? 'O' : 'S';
        continue;
      }
      const Name& x = l->to.vertex;
      auto [it, fresh] = index.emplace(x, static_cast<int>(out.order.size()));
      if (fresh) {
        out.order.push_back(x);
        // tree edges are normalised to the flip s01 in the rotation quotient
        out.frames.push_back(quotient == Quotient::Rotation ? flip * rho * l->gluing.inverse() : id);
      }
      const Permutation& frame_x = out.frames[static_cast<std::size_t>(it->second)];
      const Permutation framed_gluing = frame_x * l->gluing * rho_inv;
      out.code += 'E';
      put(out.code, it->second);
      put(out.code, frame_x(l->to.port));
      out.code += framed_gluing.to_string();
      out.code += ';';
    }
    out.code += ']';
  }
  return out;
}

ComponentLabeling best_labeling(const Graph& g, const std::set<Name>& component, Quotient quotient,
                                const std::optional<Name>& root, const CodeMarks& marks) {
  std::vector<Name> roots;
  if (root) {
    roots.push_back(*root);
  } else {
    roots.assign(component.begin(), component.end());
  }
  std::vector<Permutation> frames;
  if (quotient == Quotient::Rotation) {
    frames = Permutation::even(g.dim());
  } else {
    frames.push_back(Permutation::identity(g.dim()));
  }
  std::optional<ComponentLabeling> best;
  for (const auto& r : roots) {
    for (const auto& f : frames) {
      auto t = traverse(g, r, f, quotient, marks);
      if (!best || t.code < best->code) best = std::move(t);
    }
  }
  return *best;
}

std::vector<ComponentLabeling> labelings(const Graph& g, Quotient quotient) {
  std::vector<ComponentLabeling> out;
  for (const auto& comp : components(g)) out.push_back(best_labeling(g, comp, quotient, std::nullopt, {}));
  return out;
}

}  // namespace

ComponentLabeling canonical_component(const Graph& g, const std::set<Name>& component, Quotient quotient,
                                      const std::optional<Name>& root, const CodeMarks& marks) {
  if (component.empty()) throw GraphError("empty component");
  return best_labeling(g, component, quotient, root, marks);
}

std::string canonical_code(const Graph& g, Quotient quotient, const CodeMarks& marks) {
  std::vector<std::string> codes;
  for (const auto& comp : components(g)) codes.push_back(best_labeling(g, comp, quotient, std::nullopt, marks).code);
  std::sort(codes.begin(), codes.end());
  std::string out = "dim " + std::to_string(g.dim()) + ":";
  for (const auto& c : codes) out += c + "|";
  return out;
}

std::string pointed_code(const Graph& g, const Name& center, Quotient quotient, const CodeMarks& marks) {
  std::vector<std::string> others;
  std::string main;
  for (const auto& comp : components(g)) {
    if (comp.count(center)) {
      main = best_labeling(g, comp, quotient, center, marks).code;
    } else {
      others.push_back(best_labeling(g, comp, quotient, std::nullopt, marks).code);
    }
  }
  if (main.empty()) throw GraphError("unknown center " + center.str());
  std::sort(others.begin(), others.end());
  std::string out = "dim " + std::to_string(g.dim()) + ":" + main + "#";
  for (const auto& c : others) out += c + "|";
  return out;
}

namespace {

// Pairs up components with equal codes; returns aligned labelings or nullopt.
std::optional<std::vector<std::pair<ComponentLabeling, ComponentLabeling>>> match_components(
    std::vector<ComponentLabeling> a, std::vector<ComponentLabeling> b) {
  if (a.size() != b.size()) return std::nullopt;
  auto by_code = [](const ComponentLabeling& x, const ComponentLabeling& y) { return x.code < y.code; };
  std::sort(a.begin(), a.end(), by_code);
  std::sort(b.begin(), b.end(), by_code);
  std::vector<std::pair<ComponentLabeling, ComponentLabeling>> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].code != b[i].code) return std::nullopt;
    out.emplace_back(std::move(a[i]), std::move(b[i]));
  }
  return out;
}

}  // namespace

std::optional<std::map<Name, Name>> isomorphism(const Graph& g, const Graph& h) {
  if (g.dim() != h.dim() || g.size() != h.size()) return std::nullopt;
  auto pairs = match_components(labelings(g, Quotient::None), labelings(h, Quotient::None));
  if (!pairs) return std::nullopt;
  std::map<Name, Name> out;
  for (const auto& [x, y] : *pairs) {
    for (std::size_t i = 0; i < x.order.size(); ++i) out.emplace(x.order[i], y.order[i]);
  }
  return out;
}

std::optional<std::map<Name, Name>> pointed_isomorphism(const Graph& g, const Name& g_center, const Graph& h,
                                                        const Name& h_center) {
  if (g.dim() != h.dim() || g.size() != h.size()) return std::nullopt;
  std::vector<ComponentLabeling> ga, ha;
  std::optional<ComponentLabeling> gm, hm;
  for (const auto& comp : components(g)) {
    if (comp.count(g_center)) {
      gm = best_labeling(g, comp, Quotient::None, g_center, {});
    } else {
      ga.push_back(best_labeling(g, comp, Quotient::None, std::nullopt, {}));
    }
  }
  for (const auto& comp : components(h)) {
    if (comp.count(h_center)) {
      hm = best_labeling(h, comp, Quotient::None, h_center, {});
    } else {
      ha.push_back(best_labeling(h, comp, Quotient::None, std::nullopt, {}));
    }
  }
  if (!gm || !hm || gm->code != hm->code) return std::nullopt;
  auto pairs = match_components(std::move(ga), std::move(ha));
  if (!pairs) return std::nullopt;
  pairs->emplace_back(*gm, *hm);
  std::map<Name, Name> out;
  for (const auto& [x, y] : *pairs) {
    for (std::size_t i = 0; i < x.order.size(); ++i) out.emplace(x.order[i], y.order[i]);
  }
  return out;
}

std::optional<RotationIsomorphism> rotation_isomorphism(const Graph& g, const Graph& h) {
  if (g.dim() != h.dim() || g.size() != h.size()) return std::nullopt;
  auto pairs = match_components(labelings(g, Quotient::Rotation), labelings(h, Quotient::Rotation));
  if (!pairs) return std::nullopt;
  RotationIsomorphism out;
  for (const auto& [x, y] : *pairs) {
    for (std::size_t i = 0; i < x.order.size(); ++i) {
      out.renaming.emplace(x.order[i], y.order[i]);
      out.rotation.emplace(x.order[i], y.frames[i].inverse() * x.frames[i]);
    }
  }
  return out;
}

}  // namespace cdm
