#pragma once

// Small tolerance-based convex geometry kernel for bounded 3-polytopes.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "wulffkit/vec3.hpp"

namespace wulffkit {

/// The set {y : <normal, y> <= offset}; normal has unit length.
struct Halfspace {
  Vec3 normal;
  double offset = 0.0;

  /// Normalizes an arbitrary (nonzero) normal and rescales the offset.
  static Halfspace from_unnormalized(const Vec3& n, double offset);
};

struct Facet {
  Vec3 normal;                     ///< outward unit normal
  double area = 0.0;
  std::vector<std::size_t> loop;   ///< vertex indices, counterclockwise seen from outside
  int tag = -1;                    ///< generating halfspace index when built by intersection
};

struct Polytope {
  std::vector<Vec3> vertices;
  std::vector<Facet> facets;
  double volume = 0.0;
  /// Set when the input spans fewer than three dimensions; facets are then
  /// empty, volume is zero and vertices are the extreme points.
  bool degenerate = false;

  Vec3 facet_centroid(std::size_t f) const;
  std::size_t edge_count() const;
  double circumradius() const;
  /// Sum of facet areas.
  double surface_area() const;
};

struct HullOptions {
  bool allow_degenerate = false;
};

/// Convex hull of a point set with coplanar triangles merged into polygonal
/// facets. Flat input throws GeometryError(Degenerate) unless allowed.
Polytope convex_hull(std::span<const Vec3> points, HullOptions opts = {});

/// Intersection of halfspaces. The interior point must lie strictly inside
/// every halfspace; when it does not, the routine classifies the input as
/// empty or searches for another interior point. Throws GeometryError with
/// kind Unbounded or Empty.
Polytope intersect_halfspaces(std::span<const Halfspace> hs, const Vec3& interior = Vec3{});

/// Cuts a polytope with one halfspace. An empty result comes back as a
/// degenerate polytope with no vertices.
Polytope clip(const Polytope& p, const Halfspace& h);

Polytope minkowski_sum(const Polytope& p, const Polytope& q);

/// Degenerate polytope for the segment [-a, a].
Polytope segment(const Vec3& a);

/// Polytope from an explicit point list (hull, degeneracy allowed).
Polytope polytope_from_points(std::span<const Vec3> points);

/// max over vertices of <v, nu>. Throws DomainError for nu = 0.
double support(const Polytope& p, const Vec3& nu);

/// {z : <z, v> <= 1 for all vertices v}. Requires the origin in the interior.
Polytope polar(const Polytope& p);

Polytope translated(const Polytope& p, const Vec3& t);
Polytope scaled(const Polytope& p, double s);

/// Halfspace representation of the facets.
std::vector<Halfspace> facet_halfspaces(const Polytope& p);

bool contains(const Polytope& p, const Vec3& x, double tol = 1e-12);

/// Vertices sorted lexicographically after rounding to the given tolerance;
/// used for comparing bodies up to vertex order.
std::vector<Vec3> canonical_vertices(const Polytope& p);
/// Largest distance from a vertex of a to its nearest vertex of b, symmetrized.
double vertex_set_distance(const Polytope& a, const Polytope& b);

// -- export -----------------------------------------------------------------

void write_off(std::ostream& os, const Polytope& p);
void write_obj(std::ostream& os, const Polytope& p);
nlohmann::json to_json(const Polytope& p);

// -- exact integer path -------------------------------------------------------

namespace exact {

struct IPoint {
  std::int64_t x = 0, y = 0, z = 0;
  friend auto operator<=>(const IPoint&, const IPoint&) = default;
};

struct IFacet {
  IPoint normal;               ///< primitive outward normal
  std::int64_t offset = 0;     ///< <normal, x> = offset on the facet
  std::int64_t area_factor = 0;  ///< twice the facet area divided by |normal|
  std::vector<IPoint> loop;
};

struct IPolytope {
  std::vector<IPoint> vertices;
  std::vector<IFacet> facets;
  std::int64_t six_volume = 0;  ///< 6 * volume
};

/// Exact hull of integer points by supporting-plane enumeration. Intended for
/// small inputs (a few hundred points at most).
IPolytope hull(std::span<const IPoint> points);

}  // namespace exact

}  // namespace wulffkit
