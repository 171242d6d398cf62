#pragma once

// Ground-state search for N-atom clusters and shape diagnostics.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "wulffkit/convex.hpp"
#include "wulffkit/discrete.hpp"

namespace wulffkit {

struct AnnealSchedule {
  double initial_temperature = 1.0;
  double cooling = 0.985; ///< per sweep, in (0, 1)
  int sweeps = 200;
  std::int64_t moves_per_sweep = 10000;
  std::uint64_t seed = 1;

  /// Throws DomainError unless every field is positive and cooling < 1.
  void validate() const;
};

struct GroundState {
  Configuration config;
  double energy = 0.0;
};

struct AnnealResult {
  Configuration config;
  double energy = 0.0;
  double initial_energy = 0.0;
  std::vector<double> best_per_sweep;
  std::int64_t accepted = 0;
};

/// Exhaustive branch and bound over connected N-site animals, one per
/// translation class. Requires 1 <= N <= 10.
GroundState exact_ground_state(std::shared_ptr<const LatticeSpec> spec, int N);

/// The N sites closest to the origin (ties by SiteId).
Configuration ball_configuration(std::shared_ptr<const LatticeSpec> spec, int N, double epsilon = 1.0);

/// Metropolis annealing from the ball configuration. Moves relocate an atom
/// with a vacant neighbor to a vacant site that still touches the cluster.
AnnealResult anneal_ground_state(std::shared_ptr<const LatticeSpec> spec, int N, const AnnealSchedule& sched);

/// Translation point eps * (cell . basis) maximizing the number of occupied
/// sites within radius; candidates are the cells of occupied sites and ties
/// go to the lexicographically smallest cell.
Vec3 nucleation_center(const Configuration& X, double radius);

struct ShapeDeviation {
  std::size_t N = 0;
  Vec3 tau;  ///< center of the aligned Wulff body, in scaled units
  double symdiff = 0.0;
};

struct ShapeOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = 7;
};

/// Symmetric difference between the Voronoi union of X rescaled by
/// eps = N^{-1/3} and the Wulff body of the same volume, relative to that
/// volume. The body is a Wulff shape centered at the origin.
ShapeDeviation shape_deviation(const Configuration& X, const Polytope& wulff, const ShapeOptions& opts = {});
/// Uses the Wulff body of fcc or hcp.
ShapeDeviation shape_deviation(const Configuration& X, const std::string& lattice, const ShapeOptions& opts = {});

struct ScalingRow {
  int N = 0;
  std::vector<double> excess;   ///< per seed
  std::vector<double> symdiff;  ///< per seed, empty unless requested
  double median_excess = 0.0;
  double median_symdiff = 0.0;
  double predicted = 0.0;
  double ratio = 0.0;
};

struct ScalingOptions {
  int seeds = 5;
  bool shape = false;
  /// Moves per sweep are max(sched.moves_per_sweep, moves_per_atom * N) when > 0.
  std::int64_t moves_per_atom = 0;
};

/// Annealing over the given N values, seeds sched.seed, sched.seed + 1, ...
std::vector<ScalingRow> scaling_curve(const std::string& lattice, const std::vector<int>& Ns, const AnnealSchedule& sched,
                                      const ScalingOptions& opts = {});

double median(std::vector<double> v);

nlohmann::json to_json(const ScalingRow& r);

}  // namespace wulffkit
