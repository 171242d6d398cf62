#include "wulffkit/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "wulffkit/errors.hpp"

namespace wulffkit {

namespace {

constexpr double kLocateTol = 1e-9;

IVec3 round_cell(const Vec3& c) {
  return {static_cast<int>(std::lround(c.x)), static_cast<int>(std::lround(c.y)), static_cast<int>(std::lround(c.z))};
}

Vec3 cell_vector(const Mat3& basis_matrix, const IVec3& cell) {
  return basis_matrix * Vec3{static_cast<double>(cell.a), static_cast<double>(cell.b), static_cast<double>(cell.c)};
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Vec3 parse_vec(std::istringstream& ls, const std::string& line) {
  Vec3 v;
  if (!(ls >> v.x >> v.y >> v.z)) throw LatticeError("lattice file: expected three numbers in line '" + line + "'");
  return v;
}

}  // namespace

namespace vectors {
Vec3 b1() { return Vec3{1, 1, 0} / std::sqrt(2.0); }
Vec3 b2() { return Vec3{1, 0, 1} / std::sqrt(2.0); }
Vec3 b3() { return Vec3{0, 1, 1} / std::sqrt(2.0); }
Vec3 e1() { return {1, 0, 0}; }
Vec3 e2() { return Vec3{1, std::sqrt(3.0), 0} / 2.0; }
Vec3 e3() { return Vec3{0, 0, 1} * (2.0 / 3.0 * std::sqrt(6.0)); }
Vec3 v1() { return (e1() + e2()) / 3.0 + e3() / 2.0; }
}  // namespace vectors

LatticeSpec LatticeSpec::create(std::string name, const std::array<Vec3, 3>& basis, std::vector<Vec3> offsets,
                                const std::vector<std::vector<Vec3>>& stencils, int max_coordination) {
  LatticeSpec spec;
  spec.name_ = std::move(name);
  spec.basis_ = basis;
  spec.basis_matrix_ = Mat3::from_columns(basis[0], basis[1], basis[2]);
  const double det = spec.basis_matrix_.determinant();
  const double scale = norm(basis[0]) * norm(basis[1]) * norm(basis[2]);
  if (!(std::abs(det) > 1e-10 * scale)) throw LatticeError("degenerate lattice basis (determinant " + std::to_string(det) + ")");
  spec.inverse_basis_ = spec.basis_matrix_.inverse();
  if (offsets.empty()) offsets.push_back(Vec3{});
  spec.offsets_ = std::move(offsets);
  if (stencils.size() != spec.offsets_.size())
    throw LatticeError("lattice has " + std::to_string(spec.offsets_.size()) + " sublattices but " +
                       std::to_string(stencils.size()) + " stencils");
  if (max_coordination <= 0) throw LatticeError("max_coordination must be positive");
  spec.max_coordination_ = max_coordination;

  // Sublattice offsets must be distinct modulo the translation lattice.
  for (std::size_t i = 0; i < spec.offsets_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const Vec3 c = spec.inverse_basis_ * (spec.offsets_[i] - spec.offsets_[j]);
      if (max_abs_diff(c, Vec3{std::round(c.x), std::round(c.y), std::round(c.z)}) < kLocateTol)
        throw LatticeError("sublattice offsets " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
    }

  spec.stencils_.resize(spec.offsets_.size());
  for (std::size_t s = 0; s < stencils.size(); ++s) {
    for (const Vec3& d : stencils[s]) {
      if (std::abs(norm(d) - 1.0) > 1e-9) {
        std::ostringstream msg;
        msg << "stencil " << s << " displacement " << d << " has norm " << norm(d) << ", expected 1";
        throw LatticeError(msg.str());
      }
      const auto target = spec.locate(spec.offsets_[s] + d);
      if (!target) {
        std::ostringstream msg;
        msg << "stencil " << s << " displacement " << d << " does not land on a lattice site";
        throw LatticeError(msg.str());
      }
      spec.stencils_[s].push_back(StencilEntry{d, target->cell, target->sub});
    }
  }

  // Symmetry of the neighbor relation and completeness against brute force.
  for (std::size_t s = 0; s < spec.stencils_.size(); ++s) {
    for (const auto& e : spec.stencils_[s]) {
      const auto& back = spec.stencils_[static_cast<std::size_t>(e.target_sub)];
      const bool found = std::any_of(back.begin(), back.end(), [&](const StencilEntry& b) {
        return max_abs_diff(b.displacement, -e.displacement) < kLocateTol;
      });
      if (!found) throw LatticeError("stencil is not symmetric: reverse bond missing in sublattice " + std::to_string(e.target_sub));
    }
    std::size_t unit_count = 0;
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b)
        for (int c = -2; c <= 2; ++c)
          for (std::size_t t = 0; t < spec.offsets_.size(); ++t) {
            const Vec3 p = cell_vector(spec.basis_matrix_, IVec3{a, b, c}) + spec.offsets_[t];
            const Vec3 d = p - spec.offsets_[s];
            if (std::abs(norm(d) - 1.0) > 1e-9) continue;
            ++unit_count;
            const auto& st = spec.stencils_[s];
            if (std::none_of(st.begin(), st.end(),
                             [&](const StencilEntry& e) { return max_abs_diff(e.displacement, d) < kLocateTol; })) {
              std::ostringstream msg;
              msg << "sublattice " << s << " has a unit-distance neighbor " << d << " missing from its stencil";
              throw LatticeError(msg.str());
            }
          }
    if (unit_count != spec.stencils_[s].size())
      throw LatticeError("stencil " + std::to_string(s) + " contains duplicate or out-of-range displacements");
    if (static_cast<int>(spec.stencils_[s].size()) > spec.max_coordination_)
      throw LatticeError("stencil " + std::to_string(s) + " exceeds max_coordination");
  }
  return spec;
}

std::optional<SiteId> LatticeSpec::locate(const Vec3& p, double tol) const {
  for (std::size_t s = 0; s < offsets_.size(); ++s) {
    const Vec3 c = inverse_basis_ * (p - offsets_[s]);
    const IVec3 cell = round_cell(c);
    if (distance(cell_vector(basis_matrix_, cell) + offsets_[s], p) < tol) return SiteId{cell, static_cast<int>(s)};
  }
  return std::nullopt;
}

SiteId LatticeSpec::nearest_site(const Vec3& p) const {
  SiteId best{};
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < offsets_.size(); ++s) {
    const Vec3 c = inverse_basis_ * (p - offsets_[s]);
    const IVec3 base{static_cast<int>(std::floor(c.x)), static_cast<int>(std::floor(c.y)),
                     static_cast<int>(std::floor(c.z))};
    for (int a = -1; a <= 2; ++a)
      for (int b = -1; b <= 2; ++b)
        for (int cc = -1; cc <= 2; ++cc) {
          const SiteId id{base + IVec3{a, b, cc}, static_cast<int>(s)};
          const double d = norm2(cell_vector(basis_matrix_, id.cell) + offsets_[s] - p);
          if (d < best_d - 1e-15 || (std::abs(d - best_d) <= 1e-15 && id < best)) {
            best_d = d;
            best = id;
          }
        }
  }
  return best;
}

LatticeSpec make_fcc() {
  using namespace vectors;
  const Vec3 b[3] = {b1(), b2(), b3()};
  std::vector<Vec3> st;
  for (const Vec3& v : {b[0], b[1], b[2], b[0] - b[1], b[0] - b[2], b[1] - b[2]}) {
    st.push_back(v);
    st.push_back(-v);
  }
  return LatticeSpec::create("fcc", {b[0], b[1], b[2]}, {Vec3{}}, {st}, 12);
}

LatticeSpec make_hcp() {
  using namespace vectors;
  const Vec3 a1 = e1(), a2 = e2(), a3 = e3(), v = v1();
  std::vector<Vec3> in_plane;
  for (const Vec3& d : {a1, a2, a1 - a2}) {
    in_plane.push_back(d);
    in_plane.push_back(-d);
  }
  std::vector<Vec3> st0 = in_plane;
  for (const Vec3& d : {v, v - a1, v - a2, v - a3, v - a1 - a3, v - a2 - a3}) st0.push_back(d);
  std::vector<Vec3> st1 = in_plane;
  for (const Vec3& d : {-v, a1 - v, a2 - v, a3 - v, a1 + a3 - v, a2 + a3 - v}) st1.push_back(d);
  return LatticeSpec::create("hcp", {a1, a2, a3}, {Vec3{}, v}, {st0, st1}, 12);
}

LatticeSpec make_cubic() {
  std::vector<Vec3> st;
  for (const Vec3& d : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}) {
    st.push_back(d);
    st.push_back(-d);
  }
  return LatticeSpec::create("cubic", {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}, {Vec3{}}, {st}, 6);
}

LatticeSpec parse_lattice_spec(std::istream& in) {
  std::string name = "custom";
  std::array<Vec3, 3> basis{};
  int basis_rows = -1;
  std::vector<Vec3> offsets;
  std::vector<std::vector<Vec3>> stencils;
  int max_coord = 0;

  std::string raw;
  while (std::getline(in, raw)) {
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (basis_rows >= 0 && basis_rows < 3) {
      basis[static_cast<std::size_t>(basis_rows)] = parse_vec(ls, line);
      ++basis_rows;
      continue;
    }
    std::string key;
    ls >> key;
    if (key == "name") {
      ls >> name;
    } else if (key == "basis") {
      basis_rows = 0;
    } else if (key == "offset") {
      offsets.push_back(parse_vec(ls, line));
    } else if (key == "stencil") {
      std::string idx;
      ls >> idx;
      if (idx.empty() || idx.back() != ':') throw LatticeError("lattice file: expected 'stencil i:' in line '" + line + "'");
      idx.pop_back();
      std::size_t pos = 0;
      int i = -1;
      try {
        i = std::stoi(idx, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != idx.size() || i < 0) throw LatticeError("lattice file: bad stencil index in line '" + line + "'");
      if (stencils.size() <= static_cast<std::size_t>(i)) stencils.resize(static_cast<std::size_t>(i) + 1);
      stencils[static_cast<std::size_t>(i)].push_back(parse_vec(ls, line));
    } else if (key == "max_coordination") {
      if (!(ls >> max_coord)) throw LatticeError("lattice file: bad max_coordination");
    } else {
      throw LatticeError("lattice file: unknown keyword '" + key + "'");
    }
  }
  if (basis_rows != 3) throw LatticeError("lattice file: 'basis' must be followed by three vector lines");
  if (offsets.empty()) offsets.push_back(Vec3{});
  if (stencils.size() < offsets.size()) stencils.resize(offsets.size());
  if (max_coord == 0) {
    for (const auto& s : stencils) max_coord = std::max(max_coord, static_cast<int>(s.size()));
  }
  return LatticeSpec::create(name, basis, offsets, stencils, max_coord);
}

LatticeSpec load_lattice_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LatticeError("cannot open lattice file '" + path + "'");
  return parse_lattice_spec(in);
}

LatticeSpec lattice_from_selector(const std::string& selector) {
  if (selector == "fcc") return make_fcc();
  if (selector == "hcp") return make_hcp();
  if (selector == "cubic") return make_cubic();
  if (selector.rfind("file:", 0) == 0) return load_lattice_spec(selector.substr(5));
  throw LatticeError("unknown lattice '" + selector + "' (expected fcc, hcp, cubic or file:PATH)");
}

std::array<Vec3, 3> orthonormal_frame(const Vec3& nu) {
  const Vec3 n = normalized(nu);
  std::size_t seed = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (std::abs(n[i]) < std::abs(n[seed])) seed = i;
  Vec3 s{};
  s[seed] = 1.0;
  const Vec3 u1 = normalized(s - dot(s, n) * n);
  const Vec3 u2 = cross(n, u1);
  return {u1, u2, n};
}

bool region_contains(const Region& region, const Vec3& p) {
  return std::visit(
      [&](const auto& r) -> bool {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, BoxRegion>) {
          return p.x >= r.lo.x && p.x <= r.hi.x && p.y >= r.lo.y && p.y <= r.hi.y && p.z >= r.lo.z && p.z <= r.hi.z;
        } else if constexpr (std::is_same_v<R, BallRegion>) {
          return norm(p - r.center) <= r.radius + 1e-12;
        } else if constexpr (std::is_same_v<R, RotatedCubeRegion>) {
          const auto frame = orthonormal_frame(r.nu);
          const Vec3 d = p - r.center;
          for (const Vec3& u : frame)
            if (!(std::abs(dot(d, u)) < r.side / 2.0)) return false;
          return true;
        } else {
          return true;
        }
      },
      region);
}

bool region_bounded(const Region& region) { return !std::holds_alternative<AllSpace>(region); }

Vec3 site_position(const LatticeSpec& spec, const SiteId& id) {
  if (id.sub < 0 || static_cast<std::size_t>(id.sub) >= spec.sublattice_count())
    throw LatticeError("invalid sublattice index " + std::to_string(id.sub));
  return cell_vector(spec.basis_matrix(), id.cell) + spec.offsets()[static_cast<std::size_t>(id.sub)];
}

std::vector<SiteId> enumerate_sites(const LatticeSpec& spec, const Region& region) {
  Vec3 center;
  double radius = 0.0;
  std::visit(
      [&](const auto& r) {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, BoxRegion>) {
          center = (r.lo + r.hi) / 2.0;
          radius = norm(r.hi - r.lo) / 2.0;
        } else if constexpr (std::is_same_v<R, BallRegion>) {
          center = r.center;
          radius = r.radius;
        } else if constexpr (std::is_same_v<R, RotatedCubeRegion>) {
          center = r.center;
          radius = r.side * std::sqrt(3.0) / 2.0;
        } else {
          throw DomainError("enumerate_sites: region is unbounded");
        }
      },
      region);

  const Mat3& inv = spec.inverse_basis();
  std::vector<SiteId> out;
  for (std::size_t s = 0; s < spec.sublattice_count(); ++s) {
    const Vec3 c = inv * (center - spec.offsets()[s]);
    IVec3 lo, hi;
    for (std::size_t i = 0; i < 3; ++i) {
      const double reach = radius * norm(inv.rows[i]) + 1.0;
      lo[i] = static_cast<int>(std::floor(c[i] - reach));
      hi[i] = static_cast<int>(std::ceil(c[i] + reach));
    }
    for (int a = lo.a; a <= hi.a; ++a)
      for (int b = lo.b; b <= hi.b; ++b)
        for (int cc = lo.c; cc <= hi.c; ++cc) {
          const SiteId id{IVec3{a, b, cc}, static_cast<int>(s)};
          if (region_contains(region, site_position(spec, id))) out.push_back(id);
        }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SiteId> neighbors(const LatticeSpec& spec, const SiteId& id) {
  if (id.sub < 0 || static_cast<std::size_t>(id.sub) >= spec.sublattice_count())
    throw LatticeError("invalid sublattice index " + std::to_string(id.sub));
  std::vector<SiteId> out;
  for (const auto& e : spec.stencil(id.sub)) out.push_back(step(id, e));
  return out;
}

double density_rho(const LatticeSpec& spec) {
  const double det = std::abs(spec.basis_matrix().determinant());
  if (det < 1e-14) throw LatticeError("degenerate lattice basis");
  return static_cast<double>(spec.sublattice_count()) / det;
}

AdmissibilityConstants admissibility_constants(const LatticeSpec& spec, int grid) {
  AdmissibilityConstants k;
  k.r = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < spec.sublattice_count(); ++s)
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b)
        for (int c = -1; c <= 1; ++c)
          for (std::size_t t = 0; t < spec.sublattice_count(); ++t) {
            if (a == 0 && b == 0 && c == 0 && s == t) continue;
            const Vec3 p = site_position(spec, SiteId{IVec3{a, b, c}, static_cast<int>(t)});
            k.r = std::min(k.r, distance(p, spec.offsets()[s]));
          }

  const auto& B = spec.basis();
  const double g = static_cast<double>(grid);
  double max_d = 0.0;
  for (int i = 0; i <= grid; ++i)
    for (int j = 0; j <= grid; ++j)
      for (int l = 0; l <= grid; ++l) {
        const Vec3 p = B[0] * (i / g) + B[1] * (j / g) + B[2] * (l / g);
        max_d = std::max(max_d, distance(p, site_position(spec, spec.nearest_site(p))));
      }
  double diam = 0.0;
  for (const Vec3& d : {B[0] + B[1] + B[2], B[0] + B[1] - B[2], B[0] - B[1] + B[2], -B[0] + B[1] + B[2]})
    diam = std::max(diam, norm(d) / g);
  k.R = max_d + diam;
  return k;
}

}  // namespace wulffkit
