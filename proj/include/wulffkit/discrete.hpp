#pragma once

// Finite configurations on a scaled lattice and their energies.

#include <functional>
#include <iosfwd>
#include <memory>
#include <unordered_set>
#include <vector>

#include "wulffkit/lattice.hpp"
#include "wulffkit/surface_density.hpp"

namespace wulffkit {

using SiteSet = std::unordered_set<SiteId, SiteIdHash>;

struct Configuration {
  std::shared_ptr<const LatticeSpec> lattice;
  double epsilon = 1.0;
  SiteSet sites;

  std::size_t size() const noexcept { return sites.size(); }
  bool occupied(const SiteId& s) const { return sites.count(s) != 0; }
  /// Scaled position epsilon * x.
  Vec3 position(const SiteId& s) const { return epsilon * site_position(*lattice, s); }
  std::vector<SiteId> sorted_sites() const;
};

/// Membership test on scaled positions.
using RegionPredicate = std::function<bool(const Vec3&)>;
RegionPredicate as_predicate(const Region& r);

/// Sum over occupied sites in A of the weighted count of vacant neighbors.
double energy(const Configuration& X, const RegionPredicate& A, const BondWeights& w = {});
double energy(const Configuration& X, const Region& A = AllSpace{}, const BondWeights& w = {});

/// Unordered occupied-occupied bonds.
std::size_t bond_count(const Configuration& X);

/// N^{-2/3} E(X). Throws DomainError for an empty configuration.
double excess_energy(const Configuration& X);

/// Ordered nearest-neighbor pairs (x, y) with eps*x in A (f_eps) or with both
/// endpoints in A (f_hat_eps), weighted by eps^2 |chi(x) - chi(y)|.
double f_eps(const Configuration& X, const RegionPredicate& A, const BondWeights& w = {});
double f_hat_eps(const Configuration& X, const RegionPredicate& A, const BondWeights& w = {});

struct EmpiricalMeasure {
  std::vector<std::pair<Vec3, double>> atoms;
  double total_mass() const;
};

EmpiricalMeasure empirical_measure(const Configuration& X);

struct VoronoiUnion {
  double volume = 0.0;
  double perimeter = 0.0;
};

VoronoiUnion voronoi_union(const Configuration& X);

/// Lines of "cx cy cz sub"; '#' starts a comment. Duplicates are rejected.
Configuration read_configuration(std::istream& in, std::shared_ptr<const LatticeSpec> lattice, double epsilon = 1.0);
Configuration load_configuration(const std::string& path, std::shared_ptr<const LatticeSpec> lattice, double epsilon = 1.0);
void write_configuration(std::ostream& out, const Configuration& X);

}  // namespace wulffkit
