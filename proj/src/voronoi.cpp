#include "wulffkit/voronoi.hpp"

#include <algorithm>

#include "wulffkit/errors.hpp"

namespace wulffkit {

namespace {
constexpr double kCandidateRadius = 3.0;
constexpr double kFaceArea = 1e-10;
}  // namespace

VoronoiCell voronoi_cell(const LatticeSpec& spec, const SiteId& id) {
  if (id.sub < 0 || static_cast<std::size_t>(id.sub) >= spec.sublattice_count())
    throw LatticeError("invalid sublattice index " + std::to_string(id.sub));
  const Vec3 x = site_position(spec, id);
  std::vector<SiteId> cand;
  std::vector<Halfspace> hs;
  for (const auto& s : enumerate_sites(spec, BallRegion{x, kCandidateRadius})) {
    if (s == id) continue;
    const Vec3 b = site_position(spec, s) - x;
    cand.push_back(s);
    hs.push_back(Halfspace::from_unnormalized(b, norm2(b) / 2.0 + dot(b, x)));
  }
  VoronoiCell cell{id, intersect_halfspaces(hs, x), {}};
  for (std::size_t f = 0; f < cell.polytope.facets.size(); ++f) {
    const auto& facet = cell.polytope.facets[f];
    if (facet.tag < 0 || facet.area <= kFaceArea) continue;
    const SiteId& nb = cand[static_cast<std::size_t>(facet.tag)];
    cell.faces.push_back({site_position(spec, nb) - x, nb, facet.area, f});
  }
  std::sort(cell.faces.begin(), cell.faces.end(), [](const VoronoiFace& a, const VoronoiFace& b) { return a.neighbor < b.neighbor; });
  return cell;
}

std::vector<Vec3> face_corners(const LatticeSpec& spec, const SiteId& id, const Vec3& b0) {
  const auto& st = spec.stencil(id.sub);
  if (std::none_of(st.begin(), st.end(), [&](const StencilEntry& e) { return max_abs_diff(e.displacement, b0) < 1e-9; }))
    throw DomainError("face_corners: displacement is not a stencil bond");
  const VoronoiCell cell = voronoi_cell(spec, id);
  for (const auto& face : cell.faces)
    if (max_abs_diff(face.displacement, b0) < 1e-9) {
      std::vector<Vec3> out;
      for (std::size_t i : cell.polytope.facets[face.facet].loop) out.push_back(cell.polytope.vertices[i]);
      return out;
    }
  throw DomainError("face_corners: the cells do not share a face");
}

std::vector<SiteId> nearest_neighbors_by_face(const LatticeSpec& spec, const SiteId& id) {
  std::vector<SiteId> out;
  for (const auto& f : voronoi_cell(spec, id).faces) out.push_back(f.neighbor);
  return out;
}

std::vector<double> stencil_face_areas(const LatticeSpec& spec, int sub) {
  const VoronoiCell cell = voronoi_cell(spec, SiteId{IVec3{}, sub});
  std::vector<double> out;
  for (const auto& e : spec.stencil(sub)) {
    double a = 0.0;
    for (const auto& f : cell.faces)
      if (max_abs_diff(f.displacement, e.displacement) < 1e-9) a = f.area;
    out.push_back(a);
  }
  return out;
}

}  // namespace wulffkit
