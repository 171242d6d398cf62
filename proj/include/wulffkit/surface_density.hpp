#pragma once

// Surface energy densities: closed forms, the periodic cell formula, the
// finite-window min-cut, and polar functions.

#include <vector>

#include "wulffkit/convex.hpp"
#include "wulffkit/lattice.hpp"
#include "wulffkit/vec3.hpp"

namespace wulffkit {

/// phi(nu) = sum_i |<a_i, nu>| + sum_j max_k <c_jk, nu>.
struct PolyhedralDensity {
  std::vector<Vec3> abs_terms;
  std::vector<std::vector<Vec3>> max_terms;

  double operator()(const Vec3& nu) const;
};

PolyhedralDensity fcc_density();
PolyhedralDensity hcp_density();

double phi_fcc(const Vec3& nu);
double phi_hcp(const Vec3& nu);

struct GnuMin {
  double value = 0.0;
  double argmin = 0.0;
};

/// g_nu(t) = |t| + sum over e1, e2, e3, e3+e1, e3+e2 of |t - <e, nu>|.
double g_nu(const Vec3& nu, double t);
/// Minimum over the six breakpoints; ties go to the smallest breakpoint.
GnuMin g_nu_min(const Vec3& nu);

/// Per-bond weights shaped like the stencils: weights[sub][k] belongs to
/// spec.stencil(sub)[k]. Empty means unit weights.
using BondWeights = std::vector<std::vector<double>>;

struct CellFormulaProblem {
  const LatticeSpec& lattice;
  BondWeights weights;
  Vec3 nu;
};

/// Throws DomainError when weights are malformed, nonpositive or asymmetric.
void validate_weights(const LatticeSpec& spec, const BondWeights& w);

double phi_cell_formula(const CellFormulaProblem& problem);

struct MincutOptions {
  double layer = 3.0;
  BondWeights weights;
};

/// T^-2 times the minimal E_L(X, Q_T^nu) over X agreeing with u_nu outside
/// Q_{T-layer}^nu. Requires T >= 10.
double phi_window_mincut(const LatticeSpec& spec, const Vec3& nu, double T, const MincutOptions& opts = {});

double polar_fcc(const Vec3& zeta);
double polar_hcp(const Vec3& zeta);

/// Polar function evaluated on the vertices of the unit ball {phi <= 1}.
class PolarNumeric {
 public:
  /// Throws DomainError for degenerate densities.
  explicit PolarNumeric(const PolyhedralDensity& phi);

  double operator()(const Vec3& zeta) const;
  const Polytope& unit_ball() const noexcept { return ball_; }

 private:
  Polytope ball_;
};

double polar_numeric(const PolyhedralDensity& phi, const Vec3& zeta);

/// Every w = sum_i s_i a_i + sum_j c_j,k(j); phi(nu) = max <w, nu>.
/// Throws DomainError when the count exceeds max_points.
std::vector<Vec3> density_generators(const PolyhedralDensity& phi, std::size_t max_points = 1u << 16);

}  // namespace wulffkit
