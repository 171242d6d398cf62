#include "wulffkit/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wulffkit/errors.hpp"
#include "wulffkit/voronoi.hpp"

namespace wulffkit {

namespace {

double bond_weight(const BondWeights& w, int sub, std::size_t k) {
  return w.empty() ? 1.0 : w[static_cast<std::size_t>(sub)][k];
}

double cut_sum(const Configuration& X, const RegionPredicate& A, const BondWeights& w, bool both) {
  validate_weights(*X.lattice, w);
  double s = 0.0;
  for (const SiteId& x : X.sites) {
    const Vec3 px = X.position(x);
    const bool x_in = A(px);
    const auto& st = X.lattice->stencil(x.sub);
    for (std::size_t k = 0; k < st.size(); ++k) {
      const SiteId y = step(x, st[k]);
      if (X.occupied(y)) continue;
      const bool y_in = A(X.position(y));
      // The bond is cut; it appears as the ordered pairs (x, y) and (y, x).
      const double c = bond_weight(w, x.sub, k);
      if (both) {
        if (x_in && y_in) s += 2.0 * c;
      } else {
        s += c * ((x_in ? 1.0 : 0.0) + (y_in ? 1.0 : 0.0));
      }
    }
  }
  return X.epsilon * X.epsilon * s;
}

}  // namespace

std::vector<SiteId> Configuration::sorted_sites() const {
  std::vector<SiteId> v(sites.begin(), sites.end());
  std::sort(v.begin(), v.end());
  return v;
}

RegionPredicate as_predicate(const Region& r) {
  return [r](const Vec3& p) { return region_contains(r, p); };
}

double energy(const Configuration& X, const RegionPredicate& A, const BondWeights& w) {
  validate_weights(*X.lattice, w);
  double e = 0.0;
  for (const SiteId& x : X.sites) {
    if (!A(X.position(x))) continue;
    const auto& st = X.lattice->stencil(x.sub);
    for (std::size_t k = 0; k < st.size(); ++k)
      if (!X.occupied(step(x, st[k]))) e += bond_weight(w, x.sub, k);
  }
  return e;
}

double energy(const Configuration& X, const Region& A, const BondWeights& w) {
  if (std::holds_alternative<AllSpace>(A)) return energy(X, RegionPredicate([](const Vec3&) { return true; }), w);
  return energy(X, as_predicate(A), w);
}

std::size_t bond_count(const Configuration& X) {
  std::size_t twice = 0;
  for (const SiteId& x : X.sites)
    for (const auto& e : X.lattice->stencil(x.sub))
      if (X.occupied(step(x, e))) ++twice;
  return twice / 2;
}

double excess_energy(const Configuration& X) {
  if (X.sites.empty()) throw DomainError("excess_energy: empty configuration");
  return std::pow(static_cast<double>(X.size()), -2.0 / 3.0) * energy(X);
}

double f_eps(const Configuration& X, const RegionPredicate& A, const BondWeights& w) { return cut_sum(X, A, w, false); }

double f_hat_eps(const Configuration& X, const RegionPredicate& A, const BondWeights& w) { return cut_sum(X, A, w, true); }

double EmpiricalMeasure::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms) m += a.second;
  return m;
}

EmpiricalMeasure empirical_measure(const Configuration& X) {
  EmpiricalMeasure m;
  const double mass = X.epsilon * X.epsilon * X.epsilon;
  for (const SiteId& s : X.sorted_sites()) m.atoms.emplace_back(X.position(s), mass);
  return m;
}

VoronoiUnion voronoi_union(const Configuration& X) {
  const LatticeSpec& spec = *X.lattice;
  std::vector<std::vector<double>> areas;
  for (std::size_t s = 0; s < spec.sublattice_count(); ++s) areas.push_back(stencil_face_areas(spec, static_cast<int>(s)));
  const double e2 = X.epsilon * X.epsilon;
  VoronoiUnion u;
  u.volume = static_cast<double>(X.size()) * e2 * X.epsilon / density_rho(spec);
  for (const SiteId& x : X.sites) {
    const auto& st = spec.stencil(x.sub);
    for (std::size_t k = 0; k < st.size(); ++k)
      if (!X.occupied(step(x, st[k]))) u.perimeter += areas[static_cast<std::size_t>(x.sub)][k] * e2;
  }
  return u;
}

Configuration read_configuration(std::istream& in, std::shared_ptr<const LatticeSpec> lattice, double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("configuration scale epsilon must be positive");
  Configuration X{std::move(lattice), epsilon, {}};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    SiteId s;
    if (!(ls >> s.cell.a)) continue;
    std::string rest;
    if (!(ls >> s.cell.b >> s.cell.c >> s.sub) || (ls >> rest))
      throw DomainError("configuration line " + std::to_string(lineno) + ": expected 'cx cy cz sub'");
    if (s.sub < 0 || static_cast<std::size_t>(s.sub) >= X.lattice->sublattice_count())
      throw DomainError("configuration line " + std::to_string(lineno) + ": sublattice index out of range");
    if (!X.sites.insert(s).second) throw DomainError("configuration line " + std::to_string(lineno) + ": duplicate site");
  }
  return X;
}

Configuration load_configuration(const std::string& path, std::shared_ptr<const LatticeSpec> lattice, double epsilon) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open configuration file '" + path + "'");
  return read_configuration(in, std::move(lattice), epsilon);
}

void write_configuration(std::ostream& out, const Configuration& X) {
  for (const SiteId& s : X.sorted_sites()) out << s.cell.a << ' ' << s.cell.b << ' ' << s.cell.c << ' ' << s.sub << '\n';
}

}  // namespace wulffkit
