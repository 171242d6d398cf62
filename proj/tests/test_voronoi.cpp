#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "test_util.hpp"
#include "wulffkit/errors.hpp"
#include "wulffkit/voronoi.hpp"

using namespace wulffkit;

TEST_CASE("fcc and hcp cells have volume 1/rho and twelve equal faces") {
  for (const auto& spec : {make_fcc(), make_hcp()}) {
    for (std::size_t s = 0; s < spec.sublattice_count(); ++s) {
      const VoronoiCell c = voronoi_cell(spec, SiteId{IVec3{}, static_cast<int>(s)});
      CHECK(c.polytope.volume == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
      CHECK(c.faces.size() == 12);
      double total = 0.0;
      for (const auto& f : c.faces) {
        CHECK(f.area == doctest::Approx(std::sqrt(2.0) / 4.0).epsilon(1e-12));
        total += f.area;
      }
      // Every face sits at distance 1/2, so the cone decomposition gives
      // volume = total area / 6.
      CHECK(total / 6.0 == doctest::Approx(c.polytope.volume).epsilon(1e-12));
    }
  }
}

TEST_CASE("cell membership matches brute-force nearest site") {
  std::mt19937_64 rng(5);
  for (const auto& spec : {make_fcc(), make_hcp()}) {
    const SiteId id{IVec3{1, 0, -1}, static_cast<int>(spec.sublattice_count()) - 1};
    const VoronoiCell c = voronoi_cell(spec, id);
    const Vec3 x = site_position(spec, id);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto near = enumerate_sites(spec, BallRegion{x, 3.0});
    for (int i = 0; i < 2000; ++i) {
      const Vec3 p = x + Vec3{u(rng), u(rng), u(rng)};
      double dself = norm(p - x), dother = 1e300;
      for (const auto& y : near)
        if (!(y == id)) dother = std::min(dother, norm(site_position(spec, y) - p));
      if (std::abs(dself - dother) < 1e-9) continue;
      CHECK(contains(c.polytope, p, 1e-12) == (dself < dother));
    }
  }
}

TEST_CASE("face corners lie on the bisector and match the cell") {
  for (const auto& spec : {make_fcc(), make_hcp()}) {
    const SiteId id{IVec3{}, 0};
    for (const auto& e : spec.stencil(0)) {
      const auto corners = face_corners(spec, id, e.displacement);
      CHECK(corners.size() == 4);
      for (const auto& q : corners) CHECK(std::abs(norm(q) - norm(q - e.displacement)) < 1e-12);
    }
    CHECK_THROWS_AS(face_corners(spec, id, Vec3{2, 0, 0}), DomainError);
  }
}

TEST_CASE("face neighbors are the stencil neighbors") {
  for (const auto& spec : {make_fcc(), make_hcp(), make_cubic()}) {
    for (std::size_t s = 0; s < spec.sublattice_count(); ++s) {
      const SiteId id{IVec3{}, static_cast<int>(s)};
      auto a = nearest_neighbors_by_face(spec, id);
      auto b = neighbors(spec, id);
      CHECK(std::set<SiteId>(a.begin(), a.end()) == std::set<SiteId>(b.begin(), b.end()));
    }
  }
}

TEST_CASE("cubic cell") {
  const VoronoiCell c = voronoi_cell(make_cubic(), SiteId{});
  CHECK(c.faces.size() == 6);
  for (const auto& f : c.faces) CHECK(f.area == doctest::Approx(1.0));
  CHECK(c.polytope.volume == doctest::Approx(1.0));
  const auto areas = stencil_face_areas(make_cubic(), 0);
  CHECK(areas.size() == 6);
}
