// Acceptance suite: one PASS/FAIL line per criterion. Run with --only N to
// execute a single criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wulffkit/crystallize.hpp"
#include "wulffkit/discrete.hpp"
#include "wulffkit/parallel.hpp"
#include "wulffkit/surface_density.hpp"
#include "wulffkit/voronoi.hpp"
#include "wulffkit/wulff.hpp"

using namespace wulffkit;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

std::vector<Vec3> random_units(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Vec3> out;
  while (out.size() < n) {
    const Vec3 v{g(rng), g(rng), g(rng)};
    if (norm(v) > 1e-6) out.push_back(v / norm(v));
  }
  return out;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void c1(Outcome& o) {
  const WulffReport f = wulff_report("fcc"), h = wulff_report("hcp");
  o.detail << "fcc |W|=" << fmt(f.volume) << " int=" << fmt(f.surface_integral) << "; hcp |W|=" << fmt(h.volume)
           << " int=" << fmt(h.surface_integral);
  o.require(rel(f.volume, 256.0) < 1e-9, "fcc volume");
  o.require(rel(f.surface_integral, 768.0) < 1e-9, "fcc surface integral");
  o.require(rel(h.volume, 260.0) < 1e-9, "hcp volume");
  o.require(rel(h.surface_integral, 780.0) < 1e-9, "hcp surface integral");
}

void c2(Outcome& o) {
  const LatticeComparison c = compare_lattices();
  const double mf = 3.0 * 4.0 * std::pow(2.0, 2.0 / 3.0);
  const double mh = 3.0 * std::pow(2.0, 2.0 / 3.0) * std::cbrt(65.0);
  o.detail << "m_fcc=" << fmt(c.m_fcc) << " m_hcp=" << fmt(c.m_hcp) << " verdict=" << c.verdict;
  o.require(rel(c.m_fcc, mf) < 1e-9, "m_fcc");
  o.require(rel(c.m_hcp, mh) < 1e-9, "m_hcp");
  o.require(c.m_fcc < c.m_hcp && c.verdict == "fcc", "ordering");
}

void c3(Outcome& o) {
  const auto dirs = random_units(1000, 3003);
  const auto fcc = make_fcc(), hcp = make_hcp();
  const Polytope wf = wulff_report("fcc").body, wh = wulff_report("hcp").body;
  struct Lat {
    const char* name;
    const LatticeSpec* spec;
    double (*closed)(const Vec3&);
    const Polytope* W;
  };
  for (const Lat& l : {Lat{"fcc", &fcc, &phi_fcc, &wf}, Lat{"hcp", &hcp, &phi_hcp, &wh}}) {
    std::vector<double> dc(dirs.size()), ds(dirs.size());
    parallel_for(dirs.size(), [&](std::size_t i) {
      const double v = l.closed(dirs[i]);
      dc[i] = std::abs(v - phi_cell_formula({*l.spec, {}, dirs[i]}));
      ds[i] = std::abs(v - support(*l.W, dirs[i]));
    });
    const double mc = *std::max_element(dc.begin(), dc.end()), ms = *std::max_element(ds.begin(), ds.end());
    o.detail << l.name << " max|closed-cell|=" << fmt(mc) << " max|closed-support|=" << fmt(ms) << "; ";
    o.require(mc < 1e-9, std::string(l.name) + " cell formula");
    o.require(ms < 1e-9, std::string(l.name) + " support function");
  }
}

void c4(Outcome& o) {
  const auto zetas = random_units(1000, 4004);
  const PolarNumeric nf(fcc_density()), nh(hcp_density());
  double ef = 0.0, eh = 0.0;
  for (const auto& z : zetas) {
    const double s = 0.1 + 10.0 * std::abs(z.x);
    ef = std::max(ef, std::abs(polar_fcc(s * z) - nf(s * z)));
    eh = std::max(eh, std::abs(polar_hcp(s * z) - nh(s * z)));
  }
  const double vf = vertex_set_distance(polar(nf.unit_ball()), wulff_report("fcc").body);
  const double vh = vertex_set_distance(polar(nh.unit_ball()), wulff_report("hcp").body);
  o.detail << "max polar error fcc=" << fmt(ef) << " hcp=" << fmt(eh) << "; level-set vertex distance fcc=" << fmt(vf)
           << " hcp=" << fmt(vh);
  o.require(ef < 1e-8 && eh < 1e-8, "polar agreement");
  o.require(vf < 1e-8 && vh < 1e-8, "level set reproduces W");
}

bool corner_sets_match(std::vector<Vec3> a, std::vector<Vec3> b, double tol) {
  if (a.size() != b.size()) return false;
  for (const auto& p : a) {
    const auto it = std::find_if(b.begin(), b.end(), [&](const Vec3& q) { return norm(p - q) < tol; });
    if (it == b.end()) return false;
    b.erase(it);
  }
  return true;
}

bool is_rhombus(const std::vector<Vec3>& c) {
  if (c.size() != 4) return false;
  const double s = norm(c[1] - c[0]);
  for (std::size_t i = 1; i < 4; ++i)
    if (std::abs(norm(c[(i + 1) % 4] - c[i]) - s) > 1e-9) return false;
  return true;
}

void c5(Outcome& o) {
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
  const auto fcc = make_fcc(), hcp = make_hcp();

  const VoronoiCell cf = voronoi_cell(fcc, SiteId{});
  int fcc_rhombi = 0;
  double fcc_area_err = 0.0;
  for (const auto& f : cf.faces) {
    std::vector<Vec3> corners;
    for (auto vi : cf.polytope.facets[f.facet].loop) corners.push_back(cf.polytope.vertices[vi]);
    fcc_rhombi += is_rhombus(corners) ? 1 : 0;
    fcc_area_err = std::max(fcc_area_err, std::abs(f.area - s2 / 4.0));
  }
  o.detail << "fcc |V|=" << fmt(cf.polytope.volume) << " rhombi=" << fcc_rhombi << "/" << cf.faces.size();
  o.require(std::abs(cf.polytope.volume - s2 / 2.0) < 1e-9, "fcc volume");
  o.require(cf.faces.size() == 12 && fcc_rhombi == 12 && fcc_area_err < 1e-9, "fcc rhombic faces of area sqrt2/4");

  const VoronoiCell ch = voronoi_cell(hcp, SiteId{});
  std::vector<double> trap, rhomb;
  for (const auto& f : ch.faces) {
    std::vector<Vec3> corners;
    for (auto vi : ch.polytope.facets[f.facet].loop) corners.push_back(ch.polytope.vertices[vi]);
    (is_rhombus(corners) ? rhomb : trap).push_back(f.area);
  }
  auto max_dev = [](const std::vector<double>& v, double t) {
    double m = 0.0;
    for (double a : v) m = std::max(m, std::abs(a - t));
    return m;
  };
  o.detail << "; hcp |V|=" << fmt(ch.polytope.volume) << " trapezoids=" << trap.size() << " (area "
           << fmt(trap.empty() ? 0.0 : trap[0]) << ") rhombi=" << rhomb.size() << " (area "
           << fmt(rhomb.empty() ? 0.0 : rhomb[0]) << ", expected " << fmt(s6 / 8.0) << ")";
  o.require(std::abs(ch.polytope.volume - s2 / 2.0) < 1e-9, "hcp volume");
  o.require(trap.size() == 6 && max_dev(trap, s2 / 4.0) < 1e-9, "hcp trapezoids of area sqrt2/4");
  o.require(rhomb.size() == 6 && max_dev(rhomb, s6 / 8.0) < 1e-9, "hcp rhombi of area sqrt6/8");

  const std::vector<Vec3> fc = {{s2 / 2, 0, 0}, {0, s2 / 2, 0}, {s2 / 4, s2 / 4, s2 / 4}, {s2 / 4, s2 / 4, -s2 / 4}};
  const std::vector<Vec3> ha = {{0.5, s3 / 6, s6 / 12}, {0.5, s3 / 6, -s6 / 12}, {0.5, -s3 / 6, s6 / 6}, {0.5, -s3 / 6, -s6 / 6}};
  const std::vector<Vec3> hb = {{-0.5, s3 / 6, s6 / 12}, {-0.5, s3 / 6, -s6 / 12}, {-0.5, -s3 / 6, s6 / 6}, {-0.5, -s3 / 6, -s6 / 6}};
  const std::vector<Vec3> hc = {{0.5, s3 / 6, s6 / 12}, {0, 0, s6 / 4}, {0, s3 / 3, s6 / 6}, {0.5, -s3 / 6, s6 / 6}};
  bool corners_ok = corner_sets_match(face_corners(fcc, SiteId{}, vectors::b1()), fc, 1e-9);
  corners_ok = corner_sets_match(face_corners(hcp, SiteId{}, vectors::e1()), ha, 1e-9) && corners_ok;
  corners_ok = corner_sets_match(face_corners(hcp, SiteId{}, -vectors::e1()), hb, 1e-9) && corners_ok;
  corners_ok = corner_sets_match(face_corners(hcp, SiteId{}, vectors::v1()), hc, 1e-9) && corners_ok;
  o.detail << "; corners " << (corners_ok ? "match" : "differ");
  o.require(corners_ok, "corner coordinates");

  bool nn_ok = true;
  for (const auto* spec : {&fcc, &hcp})
    for (std::size_t s = 0; s < spec->sublattice_count(); ++s) {
      const SiteId id{IVec3{}, static_cast<int>(s)};
      auto a = nearest_neighbors_by_face(*spec, id), b = neighbors(*spec, id);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      nn_ok = nn_ok && a == b;
    }
  o.require(nn_ok, "face neighbors equal the stencil");
}

void c6(Outcome& o) {
  std::vector<Vec3> dirs;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c)
        if (a || b || c) dirs.push_back(normalized(Vec3{double(a), double(b), double(c)}));
  const auto fcc = make_fcc(), hcp = make_hcp();
  struct Job {
    const LatticeSpec* spec;
    Vec3 nu;
    double closed, e10 = 0, e40 = 0;
  };
  std::vector<Job> jobs;
  for (const auto& nu : dirs) {
    jobs.push_back({&fcc, nu, phi_fcc(nu)});
    jobs.push_back({&hcp, nu, phi_hcp(nu)});
  }
  parallel_for(jobs.size(), [&](std::size_t i) {
    Job& j = jobs[i];
    j.e10 = std::abs(phi_window_mincut(*j.spec, j.nu, 10) - j.closed) / j.closed;
    j.e40 = std::abs(phi_window_mincut(*j.spec, j.nu, 40) - j.closed) / j.closed;
  });
  double worst40 = 0.0;
  int not_monotone = 0;
  for (const auto& j : jobs) {
    worst40 = std::max(worst40, j.e40);
    if (j.e40 > j.e10) ++not_monotone;
  }
  o.detail << jobs.size() << " runs; max relative error at T=40 " << fmt(worst40) << "; T=40 worse than T=10 in "
           << not_monotone << " runs";
  o.require(worst40 < 0.10, "T=40 within 10%");
  o.require(not_monotone == 0, "error non-increasing from T=10 to T=40");
}

void c7(Outcome& o) {
  const Vec3 e1 = vectors::e1(), e2 = vectors::e2(), e3 = vectors::e3();
  double worst = 0.0;
  for (const auto& nu : random_units(10000, 7007)) {
    const double rhs = std::abs(dot(e3, nu)) +
                       2.0 * std::max({std::abs(dot(e1, nu)), std::abs(dot(e2, nu)), std::abs(dot(e1 - e2, nu)),
                                       std::abs(dot(e3, nu))});
    worst = std::max(worst, std::abs(g_nu_min(nu).value - rhs));
  }
  o.detail << "max deviation " << fmt(worst);
  o.require(worst < 1e-12, "identity to 1e-12");
}

void c8(Outcome& o) {
  auto fcc = std::make_shared<const LatticeSpec>(make_fcc());
  auto hcp = std::make_shared<const LatticeSpec>(make_hcp());

  int mismatches = 0;
  for (const auto& spec : {fcc, hcp}) {
    for (int N = 1; N <= 10; ++N) {
      const double exact = exact_ground_state(spec, N).energy;
      AnnealSchedule s;
      s.moves_per_sweep = 5000;
      const double annealed = anneal_ground_state(spec, N, s).energy;
      if (annealed != exact) {
        ++mismatches;
        o.detail << "(" << spec->name() << " N=" << N << ": exact " << exact << " annealed " << annealed << ") ";
      }
    }
  }
  o.detail << "(a) exact vs annealed mismatches " << mismatches << "; ";
  o.require(mismatches == 0, "(a) exact ground states");

  AnnealSchedule sched;
  sched.initial_temperature = 1.0;
  sched.cooling = std::pow(0.05, 1.0 / 200.0);
  sched.sweeps = 200;
  ScalingOptions opts;
  opts.seeds = 5;
  opts.shape = true;
  opts.moves_per_atom = 40;
  const auto rows = scaling_curve("fcc", {500, 1000, 2000, 4000}, sched, opts);
  const double predicted = 12.0 * std::cbrt(2.0);
  bool within = true, monotone = true;
  o.detail << "(b) median excess:";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    o.detail << " N=" << rows[i].N << " " << fmt(rows[i].median_excess);
    within = within && std::abs(rows[i].median_excess - predicted) / predicted < 0.15;
    if (i > 0 && rows[i].median_excess > rows[i - 1].median_excess) monotone = false;
  }
  o.detail << " (limit " << fmt(predicted) << "); (c) median symdiff N=500 " << fmt(rows.front().median_symdiff)
           << " N=4000 " << fmt(rows.back().median_symdiff);
  o.require(within, "(b) within 15% of the limit");
  o.require(monotone, "(b) non-increasing in N");
  o.require(rows.back().median_symdiff < rows.front().median_symdiff, "(c) symdiff decreases");
}

Configuration random_config(std::shared_ptr<const LatticeSpec> spec, std::mt19937_64& rng, double eps) {
  std::bernoulli_distribution keep(0.5);
  Configuration X{spec, eps, {}};
  for (const auto& s : enumerate_sites(*spec, BallRegion{{0, 0, 0}, 3.0}))
    if (keep(rng)) X.sites.insert(s);
  return X;
}

void c9(Outcome& o) {
  auto fcc = std::make_shared<const LatticeSpec>(make_fcc());
  auto hcp = std::make_shared<const LatticeSpec>(make_hcp());
  std::mt19937_64 rng(9009);
  int handshake_bad = 0, order_bad = 0, additivity_bad = 0;
  for (int i = 0; i < 100; ++i) {
    const Configuration X = random_config(i % 2 ? hcp : fcc, rng, 1.0);
    const double expected = 12.0 * double(X.size()) - 2.0 * double(bond_count(X));
    if (energy(X) != expected) ++handshake_bad;
  }
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const Configuration X = random_config(i % 2 ? hcp : fcc, rng, 0.25);
    const Vec3 n = normalized(Vec3{u(rng), u(rng), u(rng)});
    const double c = 0.3 * u(rng), r = 0.4 + 0.4 * (u(rng) + 1.0);
    RegionPredicate A = [=](const Vec3& p) { return norm(p) < r && dot(p, n) < c; };
    RegionPredicate B = [=](const Vec3& p) { return norm(p) < r && dot(p, n) >= c; };
    RegionPredicate AB = [=](const Vec3& p) { return norm(p) < r; };
    if (f_hat_eps(X, A) > f_eps(X, A) + 1e-12) ++order_bad;
    if (std::abs(f_eps(X, AB) - f_eps(X, A) - f_eps(X, B)) > 1e-12) ++additivity_bad;
  }
  o.detail << "handshake violations " << handshake_bad << "; f_hat > f " << order_bad << "; additivity violations "
           << additivity_bad;
  o.require(handshake_bad == 0, "handshake identity");
  o.require(order_bad == 0, "f_hat <= f");
  o.require(additivity_bad == 0, "disjoint additivity");
}

void c10(Outcome& o) {
  std::vector<PolyhedralDensity> dens = {fcc_density(), hcp_density()};
  std::mt19937_64 rng(10010);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 5; ++k) {
    PolyhedralDensity phi;
    const int na = 3 + k % 3;
    for (int i = 0; i < na; ++i) phi.abs_terms.push_back({u(rng), u(rng), u(rng)});
    if (k % 2 == 0) {
      std::vector<Vec3> g;
      for (int i = 0; i < 4; ++i) g.push_back({u(rng), u(rng), u(rng)});
      phi.max_terms.push_back(g);
    }
    dens.push_back(phi);
  }
  double worst = 0.0;
  for (const auto& phi : dens) {
    const Polytope W = wulff_shape(phi);
    worst = std::max(worst, rel(anisotropic_perimeter(W, phi), 3.0 * W.volume));
  }
  o.detail << dens.size() << " densities; max relative deviation " << fmt(worst);
  o.require(worst < 1e-9, "identity to 1e-9");
}

struct Criterion {
  int id;
  double budget_s;
  void (*fn)(Outcome&);
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--only N]\n";
      return 2;
    }
  }
  const std::vector<Criterion> all = {{1, 1, c1},    {2, 1, c2},   {3, 10, c3},  {4, 30, c4},   {5, 1, c5},
                                      {6, 600, c6},  {7, 1, c7},   {8, 1800, c8}, {9, 10, c9},  {10, 10, c10}};
  bool ok = true;
  for (const auto& c : all) {
    if (only && c.id != only) continue;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      c.fn(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    o.require(secs < c.budget_s, "runtime over " + fmt(c.budget_s) + " s");
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << fmt(secs) << " s) "
              << o.detail.str() << std::endl;
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
