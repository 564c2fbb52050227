#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "cdm/canonical.hpp"
#include "cdm/graph.hpp"
#include "cdm/rotation.hpp"

namespace cdm {

class RuleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by evaluate: an unmatched disk, or two outputs that disagree.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, std::optional<Name> first = std::nullopt,
                  std::optional<Name> second = std::nullopt)
      : std::runtime_error(what), first(std::move(first)), second(std::move(second)) {}
  std::optional<Name> first;
  std::optional<Name> second;
};

/// Fallback for disks without an entry.
///  Identity:  the radius-0 disk of the center, each x renamed {x}.
///  Subdivide: n = 2 only, radius >= 1. Every simplex is replaced by its
///             1 -> 3 bistellar image; pieces are {x.1},{x.2},{x.3}.
enum class Builtin { None, Identity, Subdivide };
const char* builtin_name(Builtin b);

struct RuleEntry {
  Graph disk;
  Name center;
  Graph output;
};

class LocalRule {
 public:
  LocalRule() = default;
  LocalRule(int dim, int radius, int bound, Builtin fallback = Builtin::None);

  int dim() const { return dim_; }
  int radius() const { return radius_; }
  int bound() const { return bound_; }
  Builtin fallback() const { return fallback_; }
  void set_fallback(Builtin b) { fallback_ = b; }

  /// Checks the entry and adds it. Throws RuleError when the disk is not a
  /// radius-r disk of its center, the output is invalid or uses names not
  /// derived over V(D) with suffix <= b, or an isomorphic key is already
  /// present with an output that is not its R* image.
  /// Returns false for a harmless duplicate.
  bool add_entry(const Graph& disk, const Name& center, const Graph& output);

  const std::vector<RuleEntry>& entries() const { return entries_; }
  const RuleEntry* find(const Graph& disk, const Name& center) const;

 private:
  int dim_ = 0;
  int radius_ = 0;
  int bound_ = 0;
  Builtin fallback_ = Builtin::None;
  std::vector<RuleEntry> entries_;
  std::map<std::string, std::size_t> index_;
  std::set<std::tuple<std::size_t, std::size_t, PortSet>> shapes_;  // cheap pre-filter for find
};

/// Output of a builtin on a disk.
Graph builtin_output(Builtin b, const PointedDisk& d);

/// f(d): R*(entry output) for the entry isomorphic to d, else the fallback.
Graph apply_rule(const LocalRule& f, const PointedDisk& d);

/// F(g): the union of f over every disk of g.
Graph evaluate(const LocalRule& f, const Graph& g);

/// Output vertex rotations induced by input rotations: {x} follows x, every
/// other output vertex is left alone.
RotationAssignment follow_rotation(const Graph& output, const RotationAssignment& input);

/// Adds, for every entry and every per-vertex rotation of its disk, the
/// rotated disk with the output rotated by follow_rotation.
LocalRule rotation_closure(const LocalRule& f);

enum class CertVerdict { Pass, Fail, Unknown };
const char* cert_verdict_name(CertVerdict v);

struct RuleCertificate {
  std::string property;
  CertVerdict verdict = CertVerdict::Unknown;
  std::string witness;                  // violated condition, empty on pass
  std::optional<PointedDisk> witness_disk;
  std::string scope;                    // what was actually covered
  std::size_t checked = 0;              // disks examined
};

/// (i) every entry disk D and single rotation r_u: f(r_u D) is rotation
/// equivalent to f(D); (ii) inside every entry disk, for every second disk
/// D2 and single rotation, f(D1) u f(D2) and f(rD1) u f(rD2) are consistent
/// and rotation equivalent. `extra` adds disks for covering the fallback.
RuleCertificate check_strongly_rotation_commuting(const LocalRule& f,
                                                  const std::vector<PointedDisk>& extra = {});

class StrongifyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The rule f~(D) = U over rotation assignments r of r*^-1 f(rD), with r*
/// found from F(rD) = r* F(D). Computed on the rotation orbits of the
/// entries; entries equal to the fallback are dropped.
LocalRule strongify(const LocalRule& f);

struct DiskConstraints {
  std::optional<int> bounded_star;  // s
  bool torsion_free = false;
  bool discrete_manifold = false;
  int manifold_budget = 200;
};

struct EnumStats {
  bool complete = true;
  std::size_t emitted = 0;
  std::size_t states = 0;
  std::size_t manifold_unknown = 0;  // disks skipped because the verdict was unknown
};

/// Every pointed disk of the given radius up to isomorphism (or up to
/// isomorphism and rotation), built by deciding one port at a time in
/// breadth-first order. Stops after `cap` disks or `max_states` partial
/// graphs, reporting incompleteness. The visitor may return false to stop.
EnumStats enum_disks(int n, int radius, const DiskConstraints& constraints, std::size_t cap,
                     const std::function<bool(const PointedDisk&)>& visit, Quotient quotient = Quotient::None,
                     std::size_t max_states = 5000000);
std::vector<PointedDisk> enum_disks(int n, int radius, const DiskConstraints& constraints, std::size_t cap,
                                    EnumStats* stats = nullptr, Quotient quotient = Quotient::None);

enum class Property { BoundedStar, TorsionFree, DiscreteManifold };
const char* property_name(Property p);

struct PreservationOptions {
  int r_prime = 1;
  std::size_t cap = 200000;
  int manifold_budget = 200;
  /// nullopt: use the rotation quotient when the rule passes the strong check.
  std::optional<bool> rotation_quotient;
};

/// Enumerates the s-bounded-star disks of radius 2rr'+r+r' (s = 2r') that
/// satisfy the hypothesis side and checks the property on F(D).
RuleCertificate check_preservation(const LocalRule& f, Property p, const PreservationOptions& opt = {});
/// Several properties over one shared enumeration; certificates in the order given.
std::vector<RuleCertificate> check_preservation(const LocalRule& f, const std::vector<Property>& props,
                                                const PreservationOptions& opt = {});

struct CddmReport {
  std::vector<RuleCertificate> certificates;  // rotation, bounded-star, torsion-free, manifold
  CertVerdict cdc = CertVerdict::Unknown;
  CertVerdict cddm = CertVerdict::Unknown;
};
CddmReport certify_cddm(const LocalRule& f, const PreservationOptions& opt = {});

/// Identity everywhere (fallback only).
LocalRule identity_rule(int dim, int radius);
/// n = 2 subdivision, radius 1, bound 3.
LocalRule subdivision_rule();
/// n = 1, radius 1: identity except on disks whose center has ports {0,1}
/// and no neighbor with ports {0,1}; there only the bare center is output.
/// Induces the identity.
LocalRule port_sensitive_rule();
/// n = 2, radius 1: a chain of three triangles around one point is closed
/// into a fan of four by a new triangle {c.1}. Rotation closed.
LocalRule collapse_rule();

}  // namespace cdm
