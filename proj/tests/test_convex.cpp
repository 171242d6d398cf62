#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "test_util.hpp"
#include "wulffkit/convex.hpp"
#include "wulffkit/errors.hpp"

using namespace wulffkit;

namespace {

std::vector<Vec3> cube_points(double h) {
  std::vector<Vec3> v;
  for (int i = 0; i < 8; ++i) v.push_back({i & 1 ? h : -h, i & 2 ? h : -h, i & 4 ? h : -h});
  return v;
}

std::vector<Vec3> random_cloud(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vec3> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({u(rng), u(rng), 0.5 * u(rng)});
  return pts;
}

// Volume from fan tetrahedra about the origin, independent of facet areas.
double fan_volume(const Polytope& p) {
  double v = 0.0;
  for (const auto& f : p.facets)
    for (std::size_t k = 1; k + 1 < f.loop.size(); ++k)
      v += dot(p.vertices[f.loop[0]], cross(p.vertices[f.loop[k]], p.vertices[f.loop[k + 1]])) / 6.0;
  return v;
}

void check_invariants(const Polytope& p) {
  const long V = static_cast<long>(p.vertices.size()), F = static_cast<long>(p.facets.size());
  const long E = static_cast<long>(p.edge_count());
  CHECK(V - E + F == 2);
  CHECK(fan_volume(p) == doctest::Approx(p.volume).epsilon(1e-10));
  Vec3 area_vector{};
  for (std::size_t f = 0; f < p.facets.size(); ++f) {
    const auto& fc = p.facets[f];
    CHECK(norm(fc.normal) == doctest::Approx(1.0));
    area_vector = area_vector + fc.area * fc.normal;
    const double off = dot(fc.normal, p.vertices[fc.loop[0]]);
    for (auto vi : fc.loop) CHECK(dot(fc.normal, p.vertices[vi]) == doctest::Approx(off).epsilon(1e-10));
  }
  CHECK(norm(area_vector) < 1e-10 * (1.0 + p.surface_area()));
}

}  // namespace

TEST_CASE("hull of a cube") {
  const auto pts = cube_points(1.0);
  const Polytope p = convex_hull(pts);
  CHECK(p.vertices.size() == 8);
  CHECK(p.facets.size() == 6);
  CHECK(p.edge_count() == 12);
  CHECK(p.volume == doctest::Approx(8.0));
  CHECK(p.surface_area() == doctest::Approx(24.0));
  for (const auto& f : p.facets) CHECK(f.loop.size() == 4);
  check_invariants(p);
}

TEST_CASE("hull of random clouds against brute force") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto pts = random_cloud(60 + 20 * seed, seed);
    const Polytope p = convex_hull(pts);
    check_invariants(p);
    for (const auto& h : facet_halfspaces(p))
      for (const auto& x : pts) CHECK(dot(h.normal, x) <= h.offset + 1e-10);
    for (const auto& v : p.vertices) {
      double d = 1e300;
      for (const auto& x : pts) d = std::min(d, norm(x - v));
      CHECK(d < 1e-12);
    }
  }
}

TEST_CASE("flat input is degenerate") {
  std::vector<Vec3> flat = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
  CHECK_THROWS_AS(convex_hull(flat), GeometryError);
  const Polytope p = convex_hull(flat, {.allow_degenerate = true});
  CHECK(p.degenerate);
  CHECK(p.volume == 0.0);
}

TEST_CASE("halfspace intersection") {
  std::vector<Halfspace> hs;
  for (int i = 0; i < 3; ++i) {
    Vec3 e{};
    if (i == 0) e.x = 1;
    if (i == 1) e.y = 1;
    if (i == 2) e.z = 1;
    hs.push_back({e, 1.0});
    hs.push_back({-e, 2.0});
  }
  const Polytope box = intersect_halfspaces(hs);
  CHECK(box.volume == doctest::Approx(27.0));
  CHECK(box.facets.size() == 6);
  for (const auto& f : box.facets) CHECK(f.tag >= 0);

  const Polytope shifted = intersect_halfspaces(hs, Vec3{0.9, 0.9, 0.9});
  CHECK(shifted.volume == doctest::Approx(27.0));

  std::vector<Halfspace> open(hs.begin(), hs.end() - 1);
  try {
    (void)intersect_halfspaces(open);
    FAIL("expected unbounded");
  } catch (const GeometryError& e) {
    CHECK(e.kind() == GeometryError::Kind::Unbounded);
  }

  std::vector<Halfspace> empty = hs;
  empty.push_back({{1, 0, 0}, -5.0});
  try {
    (void)intersect_halfspaces(empty);
    FAIL("expected empty");
  } catch (const GeometryError& e) {
    CHECK(e.kind() == GeometryError::Kind::Empty);
  }
}

TEST_CASE("polar of the cube is the octahedron and polar is an involution") {
  const Polytope cube = convex_hull(cube_points(1.0));
  const Polytope oct = polar(cube);
  CHECK(oct.vertices.size() == 6);
  CHECK(oct.facets.size() == 8);
  CHECK(oct.volume == doctest::Approx(4.0 / 3.0));
  CHECK(vertex_set_distance(polar(oct), cube) < 1e-12);

  for (std::uint64_t seed = 11; seed <= 14; ++seed) {
    const Polytope p = convex_hull(random_cloud(40, seed));
    Vec3 mean{};
    for (const auto& v : p.vertices) mean = mean + v;
    const Polytope q = translated(p, -(mean / static_cast<double>(p.vertices.size())));
    CHECK(vertex_set_distance(polar(polar(q)), q) < 1e-9);
  }

  const Polytope off_center = translated(cube, Vec3{3, 0, 0});
  try {
    (void)polar(off_center);
    FAIL("expected a geometry error");
  } catch (const GeometryError& e) {
    CHECK(e.kind() == GeometryError::Kind::NotInterior);
  }
}

TEST_CASE("clip, minkowski sum, support") {
  const Polytope cube = convex_hull(cube_points(1.0));
  const Polytope half = clip(cube, {{1, 0, 0}, 0.0});
  CHECK(half.volume == doctest::Approx(4.0));
  check_invariants(half);
  CHECK(clip(cube, {{1, 0, 0}, -2.0}).vertices.empty());

  Polytope z = segment({1, 0, 0});
  z = minkowski_sum(z, segment({0, 1, 0}));
  z = minkowski_sum(z, segment({0, 0, 1}));
  CHECK_FALSE(z.degenerate);
  CHECK(vertex_set_distance(z, cube) < 1e-12);

  auto dirs = testutil::random_units(100, 5);
  for (const auto& nu : dirs) CHECK(support(cube, nu) == doctest::Approx(std::abs(nu.x) + std::abs(nu.y) + std::abs(nu.z)));
  CHECK_THROWS_AS(support(cube, Vec3{}), DomainError);
  CHECK(contains(cube, {0.5, -0.5, 0.99}));
  CHECK_FALSE(contains(cube, {0.5, -0.5, 1.01}));
}

TEST_CASE("mesh export") {
  const Polytope cube = convex_hull(cube_points(0.5));
  std::ostringstream off, obj;
  write_off(off, cube);
  write_obj(obj, cube);
  std::istringstream in(off.str());
  std::string header;
  std::size_t nv = 0, nf = 0, ne = 1;
  in >> header >> nv >> nf >> ne;
  CHECK(header == "OFF");
  CHECK(nv == 8);
  CHECK(nf == 6);
  CHECK(ne == 0);
  CHECK(obj.str().find("\nf ") != std::string::npos);
  const auto j = to_json(cube);
  CHECK(j["vertices"].size() == 8);
  CHECK(j["volume"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("exact hull agrees with the floating hull") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> u(-6, 6);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<exact::IPoint> ip;
    std::vector<Vec3> fp;
    for (int i = 0; i < 40; ++i) {
      exact::IPoint q{u(rng), u(rng), u(rng)};
      ip.push_back(q);
      fp.push_back({double(q.x), double(q.y), double(q.z)});
    }
    const auto e = exact::hull(ip);
    const Polytope p = convex_hull(fp);
    CHECK(static_cast<double>(e.six_volume) == doctest::Approx(6.0 * p.volume).epsilon(1e-12));
    CHECK(e.vertices.size() == p.vertices.size());
    CHECK(e.facets.size() == p.facets.size());
  }
}
