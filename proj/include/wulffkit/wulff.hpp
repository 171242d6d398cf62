#pragma once

// Wulff crystals of polyhedral densities and the FCC/HCP comparison.

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wulffkit/convex.hpp"
#include "wulffkit/surface_density.hpp"

namespace wulffkit {

/// W = (sum of segments [-a_i, a_i]) + (sum of conv c_j), checked against
/// phi on random directions. Throws DomainError for degenerate densities.
Polytope wulff_shape(const PolyhedralDensity& phi);

/// Sum over facets of phi(normal) * area.
double anisotropic_perimeter(const Polytope& p, const std::function<double(const Vec3&)>& phi);

/// Inradius and circumradius of W about the origin, i.e. the best constants
/// with c <= phi(nu) <= C on the unit sphere.
struct DensityBounds {
  double c = 0.0;
  double C = 0.0;
};
DensityBounds density_bounds(const Polytope& wulff);

/// Orthogonal maps preserving the polytope, drawn from the signed
/// permutations and the hexagonal group generated by a z-rotation by pi/3 and
/// the reflections z -> -z, x -> -x.
std::vector<Mat3> symmetry_group(const Polytope& p);

struct CensusEntry {
  Vec3 normal;  ///< representative
  int multiplicity = 0;
  double area = 0.0;
  double phi = 0.0;
  std::size_t polygon_size = 0;
};

struct WulffReport {
  std::string lattice;
  Polytope body;
  double volume = 0.0;
  double surface_integral = 0.0;
  double quotient = 0.0;
  double limit_constant = 0.0;
  std::vector<CensusEntry> census;
  std::vector<int> facet_orbit;  ///< census index per facet of body
};

WulffReport wulff_report(const PolyhedralDensity& phi, const std::string& name);
/// Accepts fcc, hcp, cubic or file:PATH. User lattices need one sublattice.
WulffReport wulff_report(const std::string& selector);

/// Density of a single-sublattice lattice with unit weights, in closed form.
PolyhedralDensity single_sublattice_density(const LatticeSpec& spec);

nlohmann::json to_json(const WulffReport& r);

struct LatticeComparison {
  double m_fcc = 0.0;
  double m_hcp = 0.0;
  double difference = 0.0;  ///< m_hcp - m_fcc
  double limit_fcc = 0.0;   ///< 2^{-1/3} m
  double limit_hcp = 0.0;
  std::string verdict;      ///< lattice with the smaller quotient
};

LatticeComparison compare_lattices();

/// Integer zonotope of the six FCC bond directions.
exact::IPolytope exact_fcc_wulff();
/// Twice the anisotropic perimeter of an integer polytope under phi_FCC.
std::int64_t exact_fcc_twice_perimeter(const exact::IPolytope& p);

}  // namespace wulffkit
