#pragma once

// Periodic admissible lattices: FCC, HCP, simple cubic and user-supplied
// point sets given by a basis, sublattice offsets and unit-distance stencils.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wulffkit/vec3.hpp"

namespace wulffkit {

/// A lattice site: integer coefficients of the basis plus a sublattice index.
struct SiteId {
  IVec3 cell{};
  int sub = 0;

  friend constexpr auto operator<=>(const SiteId&, const SiteId&) = default;
};

struct SiteIdHash {
  std::size_t operator()(const SiteId& s) const noexcept {
    std::size_t h = static_cast<std::size_t>(static_cast<unsigned>(s.cell.a)) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::size_t>(static_cast<unsigned>(s.cell.b)) * 0xC2B2AE3D27D4EB4FULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(static_cast<unsigned>(s.cell.c)) * 0x165667B19E3779F9ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(s.sub) + 0x27D4EB2F165667C5ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// One neighbor bond as seen from a sublattice: the Euclidean displacement and
/// the integer bookkeeping needed to step to the neighboring site.
struct StencilEntry {
  Vec3 displacement;
  IVec3 cell_shift;
  int target_sub = 0;
};

struct AdmissibilityConstants {
  double r = 0.0;  ///< minimal pair separation
  double R = 0.0;  ///< covering radius (grid-certified upper bound)
};

/// Immutable description of a periodic lattice. Construct through make_fcc(),
/// make_hcp(), make_cubic() or LatticeSpec::create(); creation validates the
/// stencils against a brute-force unit-distance search.
class LatticeSpec {
 public:
  /// Builds and validates a lattice from explicit data. Each stencil is a list
  /// of displacements from a site of that sublattice to its unit-distance
  /// neighbors. Throws LatticeError on any invariant violation.
  static LatticeSpec create(std::string name, const std::array<Vec3, 3>& basis, std::vector<Vec3> offsets,
                            const std::vector<std::vector<Vec3>>& stencils, int max_coordination);

  const std::string& name() const noexcept { return name_; }
  const std::array<Vec3, 3>& basis() const noexcept { return basis_; }
  const std::vector<Vec3>& offsets() const noexcept { return offsets_; }
  std::size_t sublattice_count() const noexcept { return offsets_.size(); }
  const std::vector<StencilEntry>& stencil(int sub) const { return stencils_.at(static_cast<std::size_t>(sub)); }
  int max_coordination() const noexcept { return max_coordination_; }

  /// Columns are the basis vectors.
  const Mat3& basis_matrix() const noexcept { return basis_matrix_; }
  const Mat3& inverse_basis() const noexcept { return inverse_basis_; }

  /// Site whose position equals p (within tol), if any.
  std::optional<SiteId> locate(const Vec3& p, double tol = 1e-9) const;
  /// Lattice site closest to p (ties broken by SiteId order).
  SiteId nearest_site(const Vec3& p) const;

 private:
  LatticeSpec() = default;

  std::string name_;
  std::array<Vec3, 3> basis_{};
  std::vector<Vec3> offsets_;
  std::vector<std::vector<StencilEntry>> stencils_;
  int max_coordination_ = 0;
  Mat3 basis_matrix_{};
  Mat3 inverse_basis_{};
};

namespace vectors {
/// FCC generators b1, b2, b3 (unit length).
Vec3 b1();
Vec3 b2();
Vec3 b3();
/// HCP periodicity vectors e1, e2, e3 and the sublattice shift v1.
Vec3 e1();
Vec3 e2();
Vec3 e3();
Vec3 v1();
}  // namespace vectors

LatticeSpec make_fcc();
LatticeSpec make_hcp();
/// Z^3 with its 6-neighbor stencil.
LatticeSpec make_cubic();

/// Parses the line-oriented lattice file format (see README).
LatticeSpec parse_lattice_spec(std::istream& in);
LatticeSpec load_lattice_spec(const std::string& path);
/// Resolves a CLI selector: "fcc", "hcp", "cubic" or "file:PATH".
LatticeSpec lattice_from_selector(const std::string& selector);

// -- regions ----------------------------------------------------------------

struct BoxRegion {
  Vec3 lo;
  Vec3 hi;
};

/// Closed ball (boundary included up to 1e-12).
struct BallRegion {
  Vec3 center;
  double radius = 0.0;
};

/// Open cube center + side * Q^nu, faces orthogonal to the frame completed
/// from nu (see orthonormal_frame()).
struct RotatedCubeRegion {
  Vec3 center;
  Vec3 nu;
  double side = 0.0;
};

struct AllSpace {};

using Region = std::variant<BoxRegion, BallRegion, RotatedCubeRegion, AllSpace>;

/// Orthonormal frame {u1, u2, nu/|nu|}. u1 comes from Gram-Schmidt on the
/// standard basis vector least aligned with nu (ties to the lowest index).
std::array<Vec3, 3> orthonormal_frame(const Vec3& nu);

bool region_contains(const Region& region, const Vec3& p);
bool region_bounded(const Region& region);

// -- operations -------------------------------------------------------------

Vec3 site_position(const LatticeSpec& spec, const SiteId& id);

/// All sites whose positions lie in the region, sorted by (cell, sub).
/// Throws DomainError for unbounded regions.
std::vector<SiteId> enumerate_sites(const LatticeSpec& spec, const Region& region);

/// The unit-distance neighbors of id, in stencil order.
std::vector<SiteId> neighbors(const LatticeSpec& spec, const SiteId& id);

/// Inline neighbor step without allocation.
inline SiteId step(const SiteId& id, const StencilEntry& e) { return SiteId{id.cell + e.cell_shift, e.target_sub}; }

/// Points per unit volume: #offsets / |det(basis)|.
double density_rho(const LatticeSpec& spec);

/// r from pair distances against a 3^3-cell block; R from a grid over the
/// periodicity cell, padded by the grid cell diameter.
AdmissibilityConstants admissibility_constants(const LatticeSpec& spec, int grid = 24);

}  // namespace wulffkit
