#pragma once

// Voronoi cells of lattice sites as explicit polytopes.

#include <vector>

#include "wulffkit/convex.hpp"
#include "wulffkit/lattice.hpp"

namespace wulffkit {

struct VoronoiFace {
  Vec3 displacement;  ///< neighbor position minus site position
  SiteId neighbor;
  double area = 0.0;
  std::size_t facet = 0;  ///< index into the polytope's facets
};

struct VoronoiCell {
  SiteId site;
  Polytope polytope;  ///< in absolute coordinates
  std::vector<VoronoiFace> faces;
};

VoronoiCell voronoi_cell(const LatticeSpec& spec, const SiteId& id);

/// Corners of the face shared with the neighbor at displacement b0,
/// counterclockwise seen from outside. Throws DomainError when b0 is not in
/// the stencil or the two cells do not share a face.
std::vector<Vec3> face_corners(const LatticeSpec& spec, const SiteId& id, const Vec3& b0);

/// Sites whose cells share a face of area > 1e-10 with the cell of id.
std::vector<SiteId> nearest_neighbors_by_face(const LatticeSpec& spec, const SiteId& id);

/// Face area per stencil entry of the sublattice (0 when the bond has no face).
std::vector<double> stencil_face_areas(const LatticeSpec& spec, int sub);

}  // namespace wulffkit
