#include "wulffkit/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "wulffkit/errors.hpp"

namespace wulffkit {

namespace {

// Tolerances in coordinates normalized to unit circumradius.
constexpr double kDedupTol = 1e-9;
constexpr double kVisibleTol = 1e-10;
constexpr double kOnPlaneTol = 1e-9;
constexpr double kNormalMergeTol = 1e-8;
constexpr double kSliverArea = 1e-12;

struct Tri {
  std::array<std::size_t, 3> v;
  Vec3 n;
  double d = 0.0;
  double area = 0.0;
  bool alive = true;
};

Tri make_tri(const std::vector<Vec3>& q, std::size_t a, std::size_t b, std::size_t c) {
  Tri t;
  t.v = {a, b, c};
  const Vec3 cr = cross(q[b] - q[a], q[c] - q[a]);
  const double len = norm(cr);
  t.area = len / 2.0;
  t.n = len > 0.0 ? cr / len : Vec3{};
  t.d = dot(t.n, q[a]);
  return t;
}

/// Orthonormal (u, v) with cross(u, v) = n.
std::pair<Vec3, Vec3> plane_basis(const Vec3& n) {
  const Vec3 seed = std::abs(n.x) < 0.6 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const Vec3 u = normalized(seed - dot(seed, n) * n);
  return {u, cross(n, u)};
}

/// Counterclockwise strictly convex polygon (in the (u,v) chart) from the
/// given point indices; collinear points are dropped.
std::vector<std::size_t> polygon_hull(const std::vector<Vec3>& q, std::vector<std::size_t> idx, const Vec3& n) {
  const auto [u, v] = plane_basis(n);
  struct P2 {
    double x, y;
    std::size_t i;
  };
  std::vector<P2> pts;
  pts.reserve(idx.size());
  for (std::size_t i : idx) pts.push_back({dot(q[i], u), dot(q[i], v), i});
  std::sort(pts.begin(), pts.end(), [](const P2& a, const P2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const P2& a, const P2& b) { return std::abs(a.x - b.x) < kDedupTol && std::abs(a.y - b.y) < kDedupTol; }),
            pts.end());
  if (pts.size() < 3) {
    std::vector<std::size_t> out;
    for (const auto& p : pts) out.push_back(p.i);
    return out;
  }
  auto turn = [](const P2& o, const P2& a, const P2& b) {
    const double ax = a.x - o.x, ay = a.y - o.y, bx = b.x - o.x, by = b.y - o.y;
    const double c = ax * by - ay * bx;
    // Relative collinearity test: normalize by edge lengths.
    const double scale = std::hypot(ax, ay) * std::hypot(bx, by);
    return scale > 0.0 ? c / scale : 0.0;
  };
  std::vector<P2> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], pts[i]) <= 1e-9) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(h[k - 2], h[k - 1], pts[i]) <= 1e-9) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  std::vector<std::size_t> out;
  for (const auto& p : h) out.push_back(p.i);
  return out;
}

Vec3 newell(const std::vector<Vec3>& pts, const std::vector<std::size_t>& loop) {
  Vec3 n{};
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Vec3& a = pts[loop[i]];
    const Vec3& b = pts[loop[(i + 1) % loop.size()]];
    n += cross(a, b);
  }
  return n;
}

/// Builds the final polytope from a point list and the polygonal facet
/// loops (indices into pts), dropping unused points.
Polytope assemble(const std::vector<Vec3>& pts, const std::vector<std::vector<std::size_t>>& loops) {
  Polytope out;
  std::map<std::size_t, std::size_t> remap;
  for (const auto& loop : loops)
    for (std::size_t i : loop)
      if (!remap.count(i)) remap.emplace(i, 0);
  // Deterministic vertex order: lexicographic by coordinates.
  std::vector<std::size_t> used;
  for (const auto& [i, _] : remap) used.push_back(i);
  std::sort(used.begin(), used.end(), [&](std::size_t a, std::size_t b) {
    const Vec3 &p = pts[a], &q = pts[b];
    if (p.x != q.x) return p.x < q.x;
    if (p.y != q.y) return p.y < q.y;
    return p.z < q.z;
  });
  for (std::size_t k = 0; k < used.size(); ++k) {
    remap[used[k]] = k;
    out.vertices.push_back(pts[used[k]]);
  }
  double vol = 0.0;
  for (const auto& loop : loops) {
    Facet f;
    for (std::size_t i : loop) f.loop.push_back(remap[i]);
    const Vec3 nw = newell(out.vertices, f.loop);
    const double len = norm(nw);
    f.area = len / 2.0;
    f.normal = nw / len;
    out.facets.push_back(std::move(f));
    vol += out.facets.back().area * dot(out.facets.back().normal, out.facet_centroid(out.facets.size() - 1)) / 3.0;
  }
  out.volume = vol;
  return out;
}

Polytope degenerate_polytope(const std::vector<Vec3>& pts) {
  Polytope p;
  p.degenerate = true;
  p.vertices = pts;
  std::sort(p.vertices.begin(), p.vertices.end(), [](const Vec3& a, const Vec3& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
  });
  return p;
}

}  // namespace

Halfspace Halfspace::from_unnormalized(const Vec3& n, double offset) {
  const double len = norm(n);
  if (!(len > 0.0)) throw DomainError("halfspace normal must be nonzero");
  return {n / len, offset / len};
}

Vec3 Polytope::facet_centroid(std::size_t f) const {
  Vec3 c{};
  for (std::size_t i : facets[f].loop) c += vertices[i];
  return c / static_cast<double>(facets[f].loop.size());
}

std::size_t Polytope::edge_count() const {
  std::size_t half_edges = 0;
  for (const auto& f : facets) half_edges += f.loop.size();
  return half_edges / 2;
}

double Polytope::circumradius() const {
  double r = 0.0;
  for (const auto& v : vertices) r = std::max(r, norm(v));
  return r;
}

double Polytope::surface_area() const {
  double a = 0.0;
  for (const auto& f : facets) a += f.area;
  return a;
}

Polytope convex_hull(std::span<const Vec3> points, HullOptions opts) {
  if (points.empty()) {
    if (opts.allow_degenerate) return degenerate_polytope({});
    throw GeometryError(GeometryError::Kind::Degenerate, "convex_hull: empty point set");
  }
  Vec3 c{};
  for (const auto& p : points) c += p;
  c /= static_cast<double>(points.size());
  double scale = 0.0;
  for (const auto& p : points) scale = std::max(scale, norm(p - c));
  if (scale == 0.0) {
    if (opts.allow_degenerate) return degenerate_polytope({points[0]});
    throw GeometryError(GeometryError::Kind::Degenerate, "convex_hull: all points coincide");
  }

  // Normalize and deduplicate.
  std::vector<Vec3> raw;
  raw.reserve(points.size());
  for (const auto& p : points) raw.push_back((p - c) / scale);
  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return raw[a].x < raw[b].x; });
  std::vector<Vec3> q;
  std::vector<Vec3> orig;
  {
    std::vector<std::size_t> kept;
    for (std::size_t oi = 0; oi < order.size(); ++oi) {
      const Vec3& p = raw[order[oi]];
      bool dup = false;
      for (std::size_t k = kept.size(); k-- > 0;) {
        const Vec3& r = raw[kept[k]];
        if (p.x - r.x > kDedupTol) break;
        if (max_abs_diff(p, r) <= kDedupTol) {
          dup = true;
          break;
        }
      }
      if (!dup) kept.push_back(order[oi]);
    }
    std::sort(kept.begin(), kept.end());
    for (std::size_t k : kept) {
      q.push_back(raw[k]);
      orig.push_back(points[k]);
    }
  }
  const std::size_t n = q.size();

  // Initial simplex.
  std::size_t i0 = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (q[i].x < q[i0].x || (q[i].x == q[i0].x && (q[i].y < q[i0].y || (q[i].y == q[i0].y && q[i].z < q[i0].z)))) i0 = i;
  std::size_t i1 = i0;
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i)
    if (norm(q[i] - q[i0]) > best) best = norm(q[i] - q[i0]), i1 = i;
  if (best <= kDedupTol) {
    if (opts.allow_degenerate) return degenerate_polytope({orig[i0]});
    throw GeometryError(GeometryError::Kind::Degenerate, "convex_hull: all points coincide");
  }
  const Vec3 dir = normalized(q[i1] - q[i0]);
  std::size_t i2 = i0;
  best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = norm(cross(q[i] - q[i0], dir));
    if (d > best) best = d, i2 = i;
  }
  if (best <= kOnPlaneTol) {
    if (opts.allow_degenerate) {
      std::size_t lo = i0, hi = i0;
      for (std::size_t i = 0; i < n; ++i) {
        if (dot(q[i], dir) < dot(q[lo], dir)) lo = i;
        if (dot(q[i], dir) > dot(q[hi], dir)) hi = i;
      }
      return degenerate_polytope({orig[lo], orig[hi]});
    }
    throw GeometryError(GeometryError::Kind::Degenerate, "convex_hull: points are collinear");
  }
  const Vec3 pn = normalized(cross(q[i1] - q[i0], q[i2] - q[i0]));
  std::size_t i3 = i0;
  best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(dot(q[i] - q[i0], pn));
    if (d > best) best = d, i3 = i;
  }
  if (best <= kOnPlaneTol) {
    if (opts.allow_degenerate) {
      std::vector<std::size_t> all(n);
      std::iota(all.begin(), all.end(), 0);
      std::vector<Vec3> ext;
      for (std::size_t i : polygon_hull(q, all, pn)) ext.push_back(orig[i]);
      return degenerate_polytope(ext);
    }
    throw GeometryError(GeometryError::Kind::Degenerate, "convex_hull: points are coplanar");
  }

  std::vector<Tri> tris;
  {
    const Vec3 inner = (q[i0] + q[i1] + q[i2] + q[i3]) / 4.0;
    auto add = [&](std::size_t a, std::size_t b, std::size_t cc) {
      Tri t = make_tri(q, a, b, cc);
      if (dot(t.n, inner) > t.d) t = make_tri(q, a, cc, b);
      tris.push_back(t);
    };
    add(i0, i1, i2);
    add(i0, i1, i3);
    add(i0, i2, i3);
    add(i1, i2, i3);
  }

  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (i != i0 && i != i1 && i != i2 && i != i3) rest.push_back(i);
  // Far points first so that interior points are rejected cheaply.
  std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) { return norm2(q[a]) > norm2(q[b]); });

  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t p : rest) {
    edges.clear();
    bool any = false;
    for (auto& t : tris) {
      if (!t.alive) continue;
      if (dot(t.n, q[p]) - t.d > kVisibleTol) {
        any = true;
        t.alive = false;
        for (int k = 0; k < 3; ++k) edges.emplace(t.v[k], t.v[(k + 1) % 3]);
      }
    }
    if (!any) continue;
    for (const auto& [a, b] : edges)
      if (!edges.count({b, a})) tris.push_back(make_tri(q, a, b, p));
    // Compact occasionally.
    if (tris.size() > 64 && tris.size() > 4 * static_cast<std::size_t>(std::count_if(tris.begin(), tris.end(), [](const Tri& t) { return t.alive; })))
      tris.erase(std::remove_if(tris.begin(), tris.end(), [](const Tri& t) { return !t.alive; }), tris.end());
  }

  // Hull vertex candidates and supporting planes from non-sliver triangles.
  std::vector<std::size_t> hv;
  {
    std::set<std::size_t> s;
    for (const auto& t : tris)
      if (t.alive) s.insert(t.v.begin(), t.v.end());
    hv.assign(s.begin(), s.end());
  }
  struct Plane {
    Vec3 n;
    double d;
  };
  std::vector<Plane> planes;
  for (const auto& t : tris) {
    if (!t.alive || t.area < kSliverArea) continue;
    bool seen = false;
    for (const auto& pl : planes)
      if (max_abs_diff(pl.n, t.n) < kNormalMergeTol && std::abs(pl.d - t.d) < kNormalMergeTol) {
        seen = true;
        break;
      }
    if (!seen) planes.push_back({t.n, t.d});
  }

  std::vector<std::vector<std::size_t>> loops;
  std::set<std::vector<std::size_t>> loop_keys;
  for (const auto& pl : planes) {
    std::vector<std::size_t> on;
    for (std::size_t i : hv)
      if (std::abs(dot(pl.n, q[i]) - pl.d) <= kOnPlaneTol) on.push_back(i);
    if (on.size() < 3) continue;
    auto loop = polygon_hull(q, on, pl.n);
    if (loop.size() < 3) continue;
    if (norm(newell(q, loop)) / 2.0 < kSliverArea) continue;
    auto key = loop;
    std::sort(key.begin(), key.end());
    if (!loop_keys.insert(key).second) continue;
    loops.push_back(std::move(loop));
  }
  return assemble(orig, loops);
}

Polytope polytope_from_points(std::span<const Vec3> points) {
  return convex_hull(points, HullOptions{.allow_degenerate = true});
}

Polytope segment(const Vec3& a) {
  const std::array<Vec3, 2> pts{-a, a};
  return polytope_from_points(pts);
}

Polytope clip(const Polytope& p, const Halfspace& h) {
  std::vector<Vec3> pts;
  const double scale = std::max(1.0, p.circumradius());
  const double tol = 1e-12 * scale;
  for (const auto& v : p.vertices)
    if (dot(h.normal, v) <= h.offset + tol) pts.push_back(v);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& f : p.facets)
    for (std::size_t k = 0; k < f.loop.size(); ++k) {
      std::size_t a = f.loop[k], b = f.loop[(k + 1) % f.loop.size()];
      if (a > b) std::swap(a, b);
      if (!seen.emplace(a, b).second) continue;
      const double da = dot(h.normal, p.vertices[a]) - h.offset;
      const double db = dot(h.normal, p.vertices[b]) - h.offset;
      if ((da < -tol && db > tol) || (da > tol && db < -tol)) {
        const double t = da / (da - db);
        pts.push_back(p.vertices[a] + t * (p.vertices[b] - p.vertices[a]));
      }
    }
  if (pts.empty()) return degenerate_polytope({});
  return polytope_from_points(pts);
}

Polytope intersect_halfspaces(std::span<const Halfspace> hs, const Vec3& interior) {
  if (hs.empty()) throw GeometryError(GeometryError::Kind::Unbounded, "intersect_halfspaces: unbounded (no constraints)");
  for (const auto& h : hs)
    if (std::abs(norm(h.normal) - 1.0) > 1e-12) throw DomainError("intersect_halfspaces: halfspace normal is not unit length");

  double offset_scale = 1.0;
  for (const auto& h : hs) offset_scale = std::max(offset_scale, std::abs(h.offset));
  double min_slack = std::numeric_limits<double>::infinity();
  for (const auto& h : hs) min_slack = std::min(min_slack, h.offset - dot(h.normal, interior));

  if (!(min_slack > 1e-12 * offset_scale)) {
    // Classify by clipping a large box, then retry from its centroid.
    const double L = 1e3 * (offset_scale + norm(interior) + 1.0);
    const std::array<Vec3, 8> corners{Vec3{-L, -L, -L}, Vec3{L, -L, -L}, Vec3{-L, L, -L}, Vec3{L, L, -L},
                                      Vec3{-L, -L, L},  Vec3{L, -L, L},  Vec3{-L, L, L},  Vec3{L, L, L}};
    Polytope box = convex_hull(corners);
    for (const auto& h : hs) {
      box = clip(box, h);
      if (box.degenerate) throw GeometryError(GeometryError::Kind::Empty, "intersect_halfspaces: intersection is empty or flat");
    }
    Vec3 c{};
    for (const auto& v : box.vertices) c += v;
    c /= static_cast<double>(box.vertices.size());
    double slack = std::numeric_limits<double>::infinity();
    for (const auto& h : hs) slack = std::min(slack, h.offset - dot(h.normal, c));
    if (!(slack > 1e-9 * offset_scale)) throw GeometryError(GeometryError::Kind::Empty, "intersect_halfspaces: no interior point");
    return intersect_halfspaces(hs, c);
  }

  std::vector<Vec3> dual;
  dual.reserve(hs.size());
  for (const auto& h : hs) dual.push_back(h.normal / (h.offset - dot(h.normal, interior)));
  const Polytope dh = polytope_from_points(dual);
  if (dh.degenerate) throw GeometryError(GeometryError::Kind::Unbounded, "intersect_halfspaces: unbounded (normals do not span space)");
  const double dscale = dh.circumradius();
  std::vector<Vec3> primal;
  for (std::size_t f = 0; f < dh.facets.size(); ++f) {
    const double h = dot(dh.facets[f].normal, dh.vertices[dh.facets[f].loop[0]]);
    if (!(h > 1e-10 * dscale)) throw GeometryError(GeometryError::Kind::Unbounded, "intersect_halfspaces: unbounded intersection");
    primal.push_back(dh.facets[f].normal / h + interior);
  }
  Polytope out = convex_hull(primal);
  for (auto& f : out.facets) {
    const double off = dot(f.normal, out.vertices[f.loop[0]]);
    for (std::size_t i = 0; i < hs.size(); ++i)
      if (max_abs_diff(hs[i].normal, f.normal) < 1e-6 && std::abs(hs[i].offset - off) < 1e-6 * offset_scale) {
        f.tag = static_cast<int>(i);
        break;
      }
  }
  return out;
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  std::vector<Vec3> pts;
  pts.reserve(p.vertices.size() * q.vertices.size());
  for (const auto& a : p.vertices)
    for (const auto& b : q.vertices) pts.push_back(a + b);
  return polytope_from_points(pts);
}

double support(const Polytope& p, const Vec3& nu) {
  if (!(norm(nu) > 0.0)) throw DomainError("support: direction must be nonzero");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : p.vertices) best = std::max(best, dot(v, nu));
  return best;
}

Polytope polar(const Polytope& p) {
  if (p.degenerate) throw GeometryError(GeometryError::Kind::NotInterior, "polar: body is flat, origin cannot be interior");
  const double scale = p.circumradius();
  for (const auto& f : p.facets)
    if (!(dot(f.normal, p.vertices[f.loop[0]]) > 1e-12 * scale))
      throw GeometryError(GeometryError::Kind::NotInterior, "polar: origin is not in the interior");
  std::vector<Halfspace> hs;
  hs.reserve(p.vertices.size());
  for (const auto& v : p.vertices) hs.push_back(Halfspace::from_unnormalized(v, 1.0));
  return intersect_halfspaces(hs);
}

Polytope translated(const Polytope& p, const Vec3& t) {
  Polytope out = p;
  for (auto& v : out.vertices) v += t;
  return out;
}

Polytope scaled(const Polytope& p, double s) {
  Polytope out = p;
  for (auto& v : out.vertices) v *= s;
  for (auto& f : out.facets) f.area *= s * s;
  out.volume *= s * s * s;
  return out;
}

std::vector<Halfspace> facet_halfspaces(const Polytope& p) {
  std::vector<Halfspace> hs;
  for (const auto& f : p.facets) hs.push_back({f.normal, dot(f.normal, p.vertices[f.loop[0]])});
  return hs;
}

bool contains(const Polytope& p, const Vec3& x, double tol) {
  for (const auto& f : p.facets)
    if (dot(f.normal, x - p.vertices[f.loop[0]]) > tol) return false;
  return !p.degenerate;
}

std::vector<Vec3> canonical_vertices(const Polytope& p) {
  std::vector<Vec3> v = p.vertices;
  auto key = [](double a) { return std::round(a * 1e8) / 1e8; };
  std::sort(v.begin(), v.end(), [&](const Vec3& a, const Vec3& b) {
    if (key(a.x) != key(b.x)) return key(a.x) < key(b.x);
    if (key(a.y) != key(b.y)) return key(a.y) < key(b.y);
    return key(a.z) < key(b.z);
  });
  return v;
}

double vertex_set_distance(const Polytope& a, const Polytope& b) {
  auto one_way = [](const Polytope& x, const Polytope& y) {
    double worst = 0.0;
    for (const auto& v : x.vertices) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& w : y.vertices) best = std::min(best, norm(v - w));
      worst = std::max(worst, best);
    }
    return worst;
  };
  if (a.vertices.empty() || b.vertices.empty()) return a.vertices.size() == b.vertices.size() ? 0.0 : std::numeric_limits<double>::infinity();
  return std::max(one_way(a, b), one_way(b, a));
}

void write_off(std::ostream& os, const Polytope& p) {
  os.precision(17);
  os << "OFF\n" << p.vertices.size() << ' ' << p.facets.size() << " 0\n";
  for (const auto& v : p.vertices) os << v.x << ' ' << v.y << ' ' << v.z << '\n';
  for (const auto& f : p.facets) {
    os << f.loop.size();
    for (std::size_t i : f.loop) os << ' ' << i;
    os << '\n';
  }
}

void write_obj(std::ostream& os, const Polytope& p) {
  os.precision(17);
  for (const auto& v : p.vertices) os << "v " << v.x << ' ' << v.y << ' ' << v.z << '\n';
  for (const auto& f : p.facets) {
    os << 'f';
    for (std::size_t i : f.loop) os << ' ' << i + 1;
    os << '\n';
  }
}

nlohmann::json to_json(const Polytope& p) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : p.vertices) j["vertices"].push_back({v.x, v.y, v.z});
  j["facets"] = nlohmann::json::array();
  for (const auto& f : p.facets)
    j["facets"].push_back({{"normal", {f.normal.x, f.normal.y, f.normal.z}}, {"area", f.area}, {"loop", f.loop}});
  j["volume"] = p.volume;
  j["degenerate"] = p.degenerate;
  return j;
}

namespace exact {

namespace {

IPoint sub(const IPoint& a, const IPoint& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
IPoint icross(const IPoint& a, const IPoint& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
std::int64_t idot(const IPoint& a, const IPoint& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

IPoint primitive(IPoint n) {
  const std::int64_t g = std::gcd(std::gcd(std::abs(n.x), std::abs(n.y)), std::abs(n.z));
  return {n.x / g, n.y / g, n.z / g};
}

}  // namespace

IPolytope hull(std::span<const IPoint> input) {
  std::vector<IPoint> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();

  std::set<std::pair<IPoint, std::int64_t>> planes;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        IPoint nn = icross(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
        if (nn.x == 0 && nn.y == 0 && nn.z == 0) continue;
        nn = primitive(nn);
        std::int64_t d = idot(nn, pts[i]);
        bool above = false, below = false;
        for (const auto& p : pts) {
          const std::int64_t s = idot(nn, p) - d;
          above |= s > 0;
          below |= s < 0;
          if (above && below) break;
        }
        if (above && below) continue;
        if (above) nn = {-nn.x, -nn.y, -nn.z}, d = -d;
        planes.emplace(nn, d);
      }

  IPolytope out;
  std::set<IPoint> verts;
  for (const auto& [nn, d] : planes) {
    std::vector<IPoint> on;
    for (const auto& p : pts)
      if (idot(nn, p) == d) on.push_back(p);
    // Exact gift wrapping around the outward normal.
    auto orient = [&](const IPoint& a, const IPoint& b, const IPoint& c) {
      return idot(nn, icross(sub(b, a), sub(c, a)));
    };
    std::vector<IPoint> loop;
    IPoint start = *std::min_element(on.begin(), on.end());
    IPoint cur = start;
    do {
      loop.push_back(cur);
      IPoint next = cur == on[0] ? on[1] : on[0];
      for (const auto& c : on) {
        if (c == cur) continue;
        const std::int64_t o = orient(cur, next, c);
        const auto d1 = idot(sub(next, cur), sub(next, cur));
        const auto d2 = idot(sub(c, cur), sub(c, cur));
        if (o < 0 || (o == 0 && d2 > d1)) next = c;
      }
      cur = next;
    } while (!(cur == start) && loop.size() <= on.size());
    IPoint acc{0, 0, 0};
    for (std::size_t i = 1; i + 1 < loop.size(); ++i) {
      const IPoint c = icross(sub(loop[i], loop[0]), sub(loop[i + 1], loop[0]));
      acc = {acc.x + c.x, acc.y + c.y, acc.z + c.z};
    }
    const std::int64_t k = idot(acc, nn) / idot(nn, nn);
    IFacet f{nn, d, k, loop};
    out.six_volume += k * d;
    verts.insert(loop.begin(), loop.end());
    out.facets.push_back(std::move(f));
  }
  out.vertices.assign(verts.begin(), verts.end());
  return out;
}

}  // namespace exact

}  // namespace wulffkit
