#include "wulffkit/surface_density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <unordered_map>

#include "wulffkit/errors.hpp"
#include "wulffkit/maxflow.hpp"

namespace wulffkit {

double PolyhedralDensity::operator()(const Vec3& nu) const {
  double s = 0.0;
  for (const auto& a : abs_terms) s += std::abs(dot(a, nu));
  for (const auto& group : max_terms) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& c : group) m = std::max(m, dot(c, nu));
    s += m;
  }
  return s;
}

PolyhedralDensity fcc_density() {
  return {{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, -1, 0}, {1, 0, -1}, {0, 1, -1}}, {}};
}

PolyhedralDensity hcp_density() {
  using namespace vectors;
  const double s2 = std::sqrt(2.0);
  PolyhedralDensity d;
  d.abs_terms = {s2 * e1(), s2 * e2(), s2 * (e1() - e2()), e3() / s2};
  d.max_terms.push_back({});
  for (const Vec3& v : {e1(), e2(), e3(), e1() - e2()}) {
    d.max_terms.back().push_back(s2 * v);
    d.max_terms.back().push_back(-s2 * v);
  }
  return d;
}

double phi_fcc(const Vec3& n) {
  return std::abs(n.x + n.y) + std::abs(n.x + n.z) + std::abs(n.y + n.z) + std::abs(n.x - n.y) + std::abs(n.x - n.z) +
         std::abs(n.y - n.z);
}

double phi_hcp(const Vec3& nu) {
  using namespace vectors;
  const double s2 = std::sqrt(2.0);
  const double a1 = std::abs(dot(e1(), nu));
  const double a2 = std::abs(dot(e2(), nu));
  const double a3 = std::abs(dot(e3(), nu));
  const double a12 = std::abs(dot(e1() - e2(), nu));
  return s2 * (a1 + a2 + a12) + a3 / s2 + s2 * std::max({a1, a2, a3, a12});
}

double g_nu(const Vec3& nu, double t) {
  using namespace vectors;
  double s = std::abs(t);
  for (const Vec3& e : {e1(), e2(), e3(), e3() + e1(), e3() + e2()}) s += std::abs(t - dot(e, nu));
  return s;
}

GnuMin g_nu_min(const Vec3& nu) {
  using namespace vectors;
  std::array<double, 6> bp{0.0, dot(e1(), nu), dot(e2(), nu), dot(e3(), nu), dot(e3() + e1(), nu), dot(e3() + e2(), nu)};
  std::sort(bp.begin(), bp.end());
  GnuMin best{std::numeric_limits<double>::infinity(), 0.0};
  const double tol = 1e-14 * (1.0 + norm(nu));
  for (double t : bp) {
    const double v = g_nu(nu, t);
    if (v < best.value - tol) best = {v, t};
  }
  return best;
}

void validate_weights(const LatticeSpec& spec, const BondWeights& w) {
  if (w.empty()) return;
  if (w.size() != spec.sublattice_count()) throw DomainError("bond weights: expected one list per sublattice");
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& st = spec.stencil(static_cast<int>(i));
    if (w[i].size() != st.size()) throw DomainError("bond weights: list length differs from stencil size");
    for (std::size_t k = 0; k < st.size(); ++k) {
      if (!(w[i][k] > 0.0) || !std::isfinite(w[i][k])) throw DomainError("bond weights must be positive and finite");
      const auto& back = spec.stencil(st[k].target_sub);
      bool matched = false;
      for (std::size_t m = 0; m < back.size(); ++m)
        if (max_abs_diff(back[m].displacement, -st[k].displacement) < 1e-9) {
          matched = std::abs(w[static_cast<std::size_t>(st[k].target_sub)][m] - w[i][k]) <= 1e-12 * w[i][k];
          break;
        }
      if (!matched) throw DomainError("bond weights are not symmetric");
    }
  }
}

namespace {

double weight(const BondWeights& w, std::size_t sub, std::size_t k) { return w.empty() ? 1.0 : w[sub][k]; }

struct CellEnergy {
  const LatticeSpec& spec;
  const BondWeights& w;
  std::vector<std::vector<double>> proj;  // <d, nu> per stencil entry

  CellEnergy(const LatticeSpec& s, const BondWeights& wt, const Vec3& nu) : spec(s), w(wt) {
    for (std::size_t i = 0; i < s.sublattice_count(); ++i) {
      proj.emplace_back();
      for (const auto& e : s.stencil(static_cast<int>(i))) proj.back().push_back(dot(e.displacement, nu));
    }
  }

  double operator()(const std::vector<double>& c) const {
    double f = 0.0;
    for (std::size_t i = 0; i < proj.size(); ++i) {
      const auto& st = spec.stencil(static_cast<int>(i));
      for (std::size_t k = 0; k < st.size(); ++k)
        f += weight(w, i, k) * std::abs(proj[i][k] + c[static_cast<std::size_t>(st[k].target_sub)] - c[i]);
    }
    return 0.5 * f;
  }

  /// Values of c_j at which some term involving c_j has a kink.
  std::vector<double> breakpoints(const std::vector<double>& c, std::size_t j) const {
    std::vector<double> bp;
    for (std::size_t i = 0; i < proj.size(); ++i) {
      const auto& st = spec.stencil(static_cast<int>(i));
      for (std::size_t k = 0; k < st.size(); ++k) {
        const auto t = static_cast<std::size_t>(st[k].target_sub);
        if (t == j && i != j) bp.push_back(c[i] - proj[i][k]);
        if (i == j && t != j) bp.push_back(c[t] + proj[i][k]);
      }
    }
    std::sort(bp.begin(), bp.end());
    return bp;
  }
};

/// Minimizes over c_j by breakpoint scan; returns true on strict improvement.
bool coordinate_step(const CellEnergy& energy, std::vector<double>& c, std::size_t j, double& current) {
  const auto bp = energy.breakpoints(c, j);
  if (bp.empty()) return false;
  const double keep = c[j];
  double best_t = keep, best_v = current;
  const double tol = 1e-14 * (1.0 + std::abs(current));
  for (double t : bp) {
    c[j] = t;
    const double v = energy(c);
    if (v < best_v - tol) best_v = v, best_t = t;
  }
  c[j] = best_t;
  const bool improved = best_t != keep;
  current = best_v;
  return improved;
}

}  // namespace

double phi_cell_formula(const CellFormulaProblem& p) {
  const LatticeSpec& spec = p.lattice;
  validate_weights(spec, p.weights);
  const double cell = std::abs(spec.basis_matrix().determinant());
  const std::size_t k = spec.sublattice_count();
  const CellEnergy energy(spec, p.weights, p.nu);
  std::vector<double> c(k, 0.0);
  if (k == 1) return energy(c) / cell;
  if (k == 2) {
    double best = energy(c);
    coordinate_step(energy, c, 1, best);
    return best / cell;
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double best = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < 8; ++restart) {
    for (std::size_t j = 1; j < k; ++j) c[j] = restart == 0 ? 0.0 : uni(rng) * norm(p.nu);
    double cur = energy(c);
    for (int sweep = 0; sweep < 1000; ++sweep) {
      bool moved = false;
      for (std::size_t j = 1; j < k; ++j) moved |= coordinate_step(energy, c, j, cur);
      if (!moved) break;
    }
    best = std::min(best, cur);
  }
  return best / cell;
}

double phi_window_mincut(const LatticeSpec& spec, const Vec3& nu_in, double T, const MincutOptions& opts) {
  if (!(norm(nu_in) > 0.0)) throw DomainError("phi_window_mincut: direction must be nonzero");
  if (!(T >= 10.0)) throw DomainError("phi_window_mincut: window size T must be at least 10");
  if (!(opts.layer >= 0.0) || !(opts.layer < T)) throw DomainError("phi_window_mincut: layer width must lie in [0, T)");
  validate_weights(spec, opts.weights);
  const Vec3 nu = normalized(nu_in);

  const RotatedCubeRegion window{Vec3{}, nu, T};
  const RotatedCubeRegion inner{Vec3{}, nu, T - opts.layer};
  const auto sites = enumerate_sites(spec, window);

  std::unordered_map<SiteId, int, SiteIdHash> index;
  int nvar = 0;
  for (const auto& s : sites)
    if (region_contains(inner, site_position(spec, s))) index.emplace(s, nvar++);
  if (nvar == 0) throw DomainError("phi_window_mincut: window contains no free sites");

  constexpr double kScale = 1099511627776.0;  // 2^40
  auto cap = [&](std::size_t sub, std::size_t k) {
    return static_cast<std::int64_t>(std::llround(weight(opts.weights, sub, k) * kScale));
  };
  auto fixed_value = [&](const SiteId& s) { return dot(site_position(spec, s), nu) >= -1e-9; };

  MaxFlow g(nvar + 2);
  const int src = nvar, snk = nvar + 1;
  std::int64_t constant = 0;
  for (const auto& x : sites) {
    const auto ix = index.find(x);
    const auto sub = static_cast<std::size_t>(x.sub);
    const auto& st = spec.stencil(x.sub);
    for (std::size_t k = 0; k < st.size(); ++k) {
      const SiteId y = step(x, st[k]);
      const auto iy = index.find(y);
      const std::int64_t w = cap(sub, k);
      if (ix != index.end()) {
        if (iy != index.end())
          g.add_edge(ix->second, iy->second, w);
        else if (!fixed_value(y))
          g.add_edge(ix->second, snk, w);
      } else if (fixed_value(x)) {
        if (iy != index.end())
          g.add_edge(src, iy->second, w);
        else if (!fixed_value(y))
          constant += w;
      }
    }
  }
  const std::int64_t total = g.solve(src, snk) + constant;
  return static_cast<double>(total) / kScale / (T * T);
}

double polar_fcc(const Vec3& z) {
  const double inf = std::max({std::abs(z.x), std::abs(z.y), std::abs(z.z)});
  const double one = std::abs(z.x) + std::abs(z.y) + std::abs(z.z);
  return std::max(inf / 4.0, one / 6.0);
}

double polar_hcp(const Vec3& z) {
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
  const double a = std::abs(z.x), b = std::abs(z.y), c = std::abs(z.z);
  return std::max({2.0 / (7.0 * s2) * (a + b / s3 + 3.0 / (2.0 * s6) * c), c / (2.0 * s3), 2.0 / (3.0 * s6) * b,
                   4.0 / (7.0 * s6) * b + 3.0 / (14.0 * s3) * c, 1.0 / (3.0 * s2) * (a + b / s3)});
}

std::vector<Vec3> density_generators(const PolyhedralDensity& phi, std::size_t max_points) {
  std::vector<Vec3> pts{Vec3{}};
  for (const auto& a : phi.abs_terms) {
    if (pts.size() * 2 > max_points) throw DomainError("density has too many generator combinations");
    std::vector<Vec3> next;
    for (const auto& p : pts) {
      next.push_back(p + a);
      next.push_back(p - a);
    }
    pts = std::move(next);
  }
  for (const auto& group : phi.max_terms) {
    if (group.empty()) throw DomainError("density has an empty max term");
    if (pts.size() * group.size() > max_points) throw DomainError("density has too many generator combinations");
    std::vector<Vec3> next;
    for (const auto& p : pts)
      for (const auto& c : group) next.push_back(p + c);
    pts = std::move(next);
  }
  return pts;
}

PolarNumeric::PolarNumeric(const PolyhedralDensity& phi) {
  std::vector<Halfspace> hs;
  for (const auto& w : density_generators(phi))
    if (norm(w) > 1e-12) hs.push_back(Halfspace::from_unnormalized(w, 1.0));
  try {
    ball_ = intersect_halfspaces(hs);
  } catch (const GeometryError&) {
    throw DomainError("degenerate density: {phi <= 1} is unbounded");
  }
}

double PolarNumeric::operator()(const Vec3& zeta) const {
  double best = 0.0;
  for (const auto& v : ball_.vertices) best = std::max(best, dot(zeta, v));
  return best;
}

double polar_numeric(const PolyhedralDensity& phi, const Vec3& zeta) { return PolarNumeric(phi)(zeta); }

}  // namespace wulffkit
