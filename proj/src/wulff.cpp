#include "wulffkit/wulff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "wulffkit/errors.hpp"

namespace wulffkit {

Polytope wulff_shape(const PolyhedralDensity& phi) {
  const auto pts = density_generators(phi);
  Polytope w = polytope_from_points(pts);
  if (w.degenerate) throw DomainError("degenerate density: Wulff body is flat");
  std::mt19937_64 rng(20240601);
  std::normal_distribution<double> g;
  const double scale = w.circumradius();
  for (int i = 0; i < 1000; ++i) {
    const Vec3 nu = normalized(Vec3{g(rng), g(rng), g(rng)});
    if (std::abs(support(w, nu) - phi(nu)) > 1e-9 * scale)
      throw std::logic_error("wulff_shape: support function disagrees with density");
  }
  return w;
}

double anisotropic_perimeter(const Polytope& p, const std::function<double(const Vec3&)>& phi) {
  double s = 0.0;
  for (const auto& f : p.facets) s += phi(f.normal) * f.area;
  return s;
}

DensityBounds density_bounds(const Polytope& w) {
  DensityBounds b{std::numeric_limits<double>::infinity(), w.circumradius()};
  for (const auto& f : w.facets) b.c = std::min(b.c, dot(f.normal, w.vertices[f.loop[0]]));
  return b;
}

namespace {

std::vector<Mat3> candidate_maps() {
  std::vector<Mat3> out;
  std::array<int, 3> perm{0, 1, 2};
  do {
    for (int signs = 0; signs < 8; ++signs) {
      Mat3 m;
      for (int r = 0; r < 3; ++r) m.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(perm[static_cast<std::size_t>(r)])] = (signs >> r) & 1 ? -1.0 : 1.0;
      out.push_back(m);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  const double c = 0.5, s = std::sqrt(3.0) / 2.0;
  const Mat3 rot{{Vec3{c, -s, 0}, Vec3{s, c, 0}, Vec3{0, 0, 1}}};
  Mat3 r = Mat3::identity();
  for (int k = 0; k < 6; ++k, r = rot * r)
    for (double zs : {1.0, -1.0})
      for (double xs : {1.0, -1.0}) out.push_back(r * Mat3{{Vec3{xs, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, zs}}});
  return out;
}

int find_facet(const Polytope& p, const Vec3& n) {
  for (std::size_t f = 0; f < p.facets.size(); ++f)
    if (max_abs_diff(p.facets[f].normal, n) < 1e-8) return static_cast<int>(f);
  return -1;
}

}  // namespace

std::vector<Mat3> symmetry_group(const Polytope& p) {
  std::vector<Mat3> out;
  const double scale = std::max(1.0, p.circumradius());
  for (const Mat3& m : candidate_maps()) {
    bool ok = true;
    for (const auto& f : p.facets) {
      const int g = find_facet(p, m * f.normal);
      if (g < 0 || std::abs(p.facets[static_cast<std::size_t>(g)].area - f.area) > 1e-8 * scale * scale ||
          std::abs(dot(p.facets[static_cast<std::size_t>(g)].normal, p.vertices[p.facets[static_cast<std::size_t>(g)].loop[0]]) -
                   dot(f.normal, p.vertices[f.loop[0]])) > 1e-8 * scale) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    bool dup = false;
    for (const Mat3& q : out) {
      double d = 0.0;
      for (std::size_t r = 0; r < 3; ++r) d = std::max(d, max_abs_diff(q.rows[r], m.rows[r]));
      if (d < 1e-12) dup = true;
    }
    if (!dup) out.push_back(m);
  }
  return out;
}

WulffReport wulff_report(const PolyhedralDensity& phi, const std::string& name) {
  WulffReport r;
  r.lattice = name;
  r.body = wulff_shape(phi);
  r.volume = r.body.volume;
  r.surface_integral = anisotropic_perimeter(r.body, phi);
  r.quotient = r.surface_integral * std::pow(r.volume, -2.0 / 3.0);
  r.limit_constant = std::pow(2.0, -1.0 / 3.0) * r.quotient;

  const auto group = symmetry_group(r.body);
  r.facet_orbit.assign(r.body.facets.size(), -1);
  for (std::size_t f = 0; f < r.body.facets.size(); ++f) {
    if (r.facet_orbit[f] >= 0) continue;
    const int orbit = static_cast<int>(r.census.size());
    const auto& facet = r.body.facets[f];
    CensusEntry e{facet.normal, 0, facet.area, phi(facet.normal), facet.loop.size()};
    for (const Mat3& m : group) {
      const int g = find_facet(r.body, m * facet.normal);
      if (g >= 0 && r.facet_orbit[static_cast<std::size_t>(g)] < 0) {
        r.facet_orbit[static_cast<std::size_t>(g)] = orbit;
        ++e.multiplicity;
      }
    }
    r.census.push_back(e);
  }
  return r;
}

PolyhedralDensity single_sublattice_density(const LatticeSpec& spec) {
  if (spec.sublattice_count() != 1)
    throw DomainError("closed-form Wulff construction needs a single-sublattice lattice; '" + spec.name() + "' has " +
                      std::to_string(spec.sublattice_count()));
  const double cell = std::abs(spec.basis_matrix().determinant());
  PolyhedralDensity d;
  for (const auto& e : spec.stencil(0)) d.abs_terms.push_back(e.displacement / (2.0 * cell));
  return d;
}

WulffReport wulff_report(const std::string& selector) {
  if (selector == "fcc") return wulff_report(fcc_density(), "fcc");
  if (selector == "hcp") return wulff_report(hcp_density(), "hcp");
  const LatticeSpec spec = lattice_from_selector(selector);
  return wulff_report(single_sublattice_density(spec), spec.name());
}

nlohmann::json to_json(const WulffReport& r) {
  nlohmann::json j;
  j["lattice"] = r.lattice;
  j["volume"] = r.volume;
  j["surface_integral"] = r.surface_integral;
  j["quotient"] = r.quotient;
  j["limit_constant"] = r.limit_constant;
  j["facets"] = nlohmann::json::array();
  for (std::size_t f = 0; f < r.body.facets.size(); ++f) {
    const auto& fc = r.body.facets[f];
    j["facets"].push_back({{"normal", {fc.normal.x, fc.normal.y, fc.normal.z}},
                           {"area", fc.area},
                           {"phi", r.census[static_cast<std::size_t>(r.facet_orbit[f])].phi},
                           {"orbit", r.facet_orbit[f]}});
  }
  j["orbits"] = nlohmann::json::array();
  for (const auto& e : r.census)
    j["orbits"].push_back({{"normal", {e.normal.x, e.normal.y, e.normal.z}},
                           {"multiplicity", e.multiplicity},
                           {"area", e.area},
                           {"phi", e.phi},
                           {"corners", e.polygon_size}});
  return j;
}

LatticeComparison compare_lattices() {
  LatticeComparison c;
  c.m_fcc = wulff_report("fcc").quotient;
  c.m_hcp = wulff_report("hcp").quotient;
  c.difference = c.m_hcp - c.m_fcc;
  c.limit_fcc = std::pow(2.0, -1.0 / 3.0) * c.m_fcc;
  c.limit_hcp = std::pow(2.0, -1.0 / 3.0) * c.m_hcp;
  c.verdict = c.m_fcc < c.m_hcp ? "fcc" : (c.m_hcp < c.m_fcc ? "hcp" : "tie");
  return c;
}

exact::IPolytope exact_fcc_wulff() {
  const std::array<exact::IPoint, 6> gens{{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, -1, 0}, {1, 0, -1}, {0, 1, -1}}};
  std::vector<exact::IPoint> pts;
  for (int mask = 0; mask < 64; ++mask) {
    exact::IPoint p;
    for (std::size_t i = 0; i < 6; ++i) {
      const std::int64_t s = (mask >> i) & 1 ? -1 : 1;
      p.x += s * gens[i].x;
      p.y += s * gens[i].y;
      p.z += s * gens[i].z;
    }
    pts.push_back(p);
  }
  return exact::hull(pts);
}

std::int64_t exact_fcc_twice_perimeter(const exact::IPolytope& p) {
  std::int64_t s = 0;
  for (const auto& f : p.facets) {
    const auto& n = f.normal;
    const std::int64_t phi = std::abs(n.x + n.y) + std::abs(n.x + n.z) + std::abs(n.y + n.z) + std::abs(n.x - n.y) +
                             std::abs(n.x - n.z) + std::abs(n.y - n.z);
    s += phi * f.area_factor;
  }
  return s;
}

}  // namespace wulffkit
