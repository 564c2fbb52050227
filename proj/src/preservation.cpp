#include <sstream>

#include "cdm/dynamics.hpp"
#include "cdm/geometry.hpp"
#include "cdm/pachner.hpp"

namespace cdm {

const char* property_name(Property p) {
  switch (p) {
    case Property::BoundedStar: return "bounded-star-preserving";
    case Property::TorsionFree: return "torsion-free-preserving";
    case Property::DiscreteManifold: return "discrete-manifold-preserving";
  }
  return "";
}

std::vector<RuleCertificate> check_preservation(const LocalRule& f, const std::vector<Property>& props,
                                                const PreservationOptions& opt) {
  const int r = f.radius();
  const int rp = opt.r_prime;
  const int big = 2 * r * rp + r + rp;
  const int s = 2 * rp;
  bool quotient = opt.rotation_quotient.value_or(false);
  if (!opt.rotation_quotient) quotient = check_strongly_rotation_commuting(f).verdict == CertVerdict::Pass;

  struct Track {
    Property p;
    RuleCertificate cert;
    bool failed = false;
    std::size_t hypothesis_unknown = 0;
    std::size_t output_unknown = 0;
  };
  std::vector<Track> tracks;
  bool all_need_torsion = true;
  for (Property p : props) {
    Track t{p, {}};
    t.cert.property = std::string(property_name(p)) + "(" + std::to_string(s) + ")";
    tracks.push_back(std::move(t));
    all_need_torsion &= p != Property::BoundedStar;
  }
  DiskConstraints c;
  c.bounded_star = s;
  c.torsion_free = all_need_torsion;

  auto open = [&] {
    for (const auto& t : tracks) {
      if (!t.failed) return true;
    }
    return false;
  };

  EnumStats stats = enum_disks(
      f.dim(), big, c, opt.cap,
      [&](const PointedDisk& d) {
        std::optional<bool> torsion_free_in;
        std::optional<Verdict> manifold_in;
        std::optional<Graph> out;
        std::string undefined;
        for (auto& t : tracks) {
          if (t.failed) continue;
          if (t.p != Property::BoundedStar) {
            if (!torsion_free_in) torsion_free_in = torsion_free(d.graph);
            if (!*torsion_free_in) continue;
          }
          if (t.p == Property::DiscreteManifold) {
            if (!manifold_in) manifold_in = is_discrete_manifold(d.graph, opt.manifold_budget).verdict;
            if (*manifold_in == Verdict::Unknown) ++t.hypothesis_unknown;
            if (*manifold_in != Verdict::Yes) continue;
          }
          ++t.cert.checked;
          if (!out && undefined.empty()) {
            try {
              out = evaluate(f, d.graph);
            } catch (const std::exception& e) {
              undefined = std::string("F is undefined on the disk: ") + e.what();
            }
          }
          std::ostringstream why;
          if (!out) {
            why << undefined;
          } else if (t.p == Property::BoundedStar) {
            auto report = bounded_star_check(*out, s);
            if (report.bounded) continue;
            why << "F(D) has a hinge of length " << report.longest.length() << " > " << s << ": "
                << to_string(report.longest);
          } else if (t.p == Property::TorsionFree) {
            auto w = torsion_scan(*out);
            if (w.empty()) continue;
            why << "F(D) has torsion at " << w.front().vertex.str() << ": " << to_string(w.front().hinge);
          } else {
            auto report = is_discrete_manifold(*out, opt.manifold_budget);
            if (report.verdict == Verdict::Yes) continue;
            if (report.verdict == Verdict::Unknown) {
              ++t.output_unknown;
              continue;
            }
            for (const auto& sv : report.stars) {
              if (sv.verdict == Verdict::No) {
                why << "star of " << sv.vertex.str() << " in F(D) is not a ball: " << sv.reason;
                break;
              }
            }
          }
          t.failed = true;
          t.cert.witness = why.str();
          t.cert.witness_disk = d;
        }
        return open();
      },
      quotient ? Quotient::Rotation : Quotient::None);

  std::vector<RuleCertificate> out;
  for (auto& t : tracks) {
    RuleCertificate& cert = t.cert;
    std::ostringstream scope;
    scope << "n=" << f.dim() << " disk radius " << big << " (r=" << r << ", r'=" << rp << "), s=" << s << ", "
          << stats.emitted << " disks" << (quotient ? " up to rotation" : "") << ", "
          << (stats.complete ? "enumeration complete" : "enumeration stopped early");
    if (t.hypothesis_unknown) scope << ", " << t.hypothesis_unknown << " disks with undecided manifold hypothesis";
    if (t.output_unknown) scope << ", " << t.output_unknown << " outputs with undecided manifold verdict";
    cert.scope = scope.str();
    if (t.failed) {
      cert.verdict = CertVerdict::Fail;
    } else if (!stats.complete || t.hypothesis_unknown || t.output_unknown) {
      cert.verdict = CertVerdict::Unknown;
      cert.witness = stats.complete ? "manifold check budget exhausted" : "enumeration capped";
    } else {
      cert.verdict = CertVerdict::Pass;
    }
    out.push_back(std::move(cert));
  }
  return out;
}

RuleCertificate check_preservation(const LocalRule& f, Property p, const PreservationOptions& opt) {
  return check_preservation(f, std::vector<Property>{p}, opt).front();
}

CddmReport certify_cddm(const LocalRule& f, const PreservationOptions& opt) {
  CddmReport report;
  RuleCertificate strong = check_strongly_rotation_commuting(f);
  PreservationOptions o = opt;
  if (!o.rotation_quotient) o.rotation_quotient = strong.verdict == CertVerdict::Pass;
  report.cdc = strong.verdict;
  report.certificates.push_back(std::move(strong));
  for (auto& c : check_preservation(f, {Property::BoundedStar, Property::TorsionFree, Property::DiscreteManifold}, o)) {
    report.certificates.push_back(std::move(c));
  }
  bool any_fail = false, any_unknown = false;
  for (const auto& c : report.certificates) {
    any_fail |= c.verdict == CertVerdict::Fail;
    any_unknown |= c.verdict == CertVerdict::Unknown;
  }
  report.cddm = any_fail ? CertVerdict::Fail : any_unknown ? CertVerdict::Unknown : CertVerdict::Pass;
  return report;
}

}  // namespace cdm
