#include "wulffkit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "wulffkit/crystallize.hpp"
#include "wulffkit/discrete.hpp"
#include "wulffkit/errors.hpp"
#include "wulffkit/parallel.hpp"
#include "wulffkit/surface_density.hpp"
#include "wulffkit/voronoi.hpp"
#include "wulffkit/wulff.hpp"

namespace wulffkit::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Floating values are written with at most 15 significant digits so repeated
// runs produce identical bytes.
double round15(double v) {
  if (!std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::strtod(buf, nullptr);
}

void round_json(json& j) {
  if (j.is_number_float()) {
    j = round15(j.get<double>());
  } else if (j.is_structured()) {
    for (auto& v : j) round_json(v);
  }
}

std::string format15(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

std::vector<double> parse_numbers(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end == item.c_str() || *end != '\0' || !std::isfinite(v))
      throw UsageError(flag + ": '" + item + "' is not a number");
    out.push_back(v);
  }
  return out;
}

Vec3 parse_direction(const std::string& text, const std::string& flag) {
  const auto v = parse_numbers(text, flag);
  if (v.size() != 3) throw UsageError(flag + ": expected three comma-separated numbers, got '" + text + "'");
  const Vec3 nu{v[0], v[1], v[2]};
  if (norm(nu) == 0.0) throw UsageError(flag + ": direction must be nonzero");
  return nu / norm(nu);
}

std::vector<int> parse_sizes(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  for (double v : parse_numbers(text, flag)) {
    if (v < 1 || v != std::floor(v) || v > 1e7) throw UsageError(flag + ": sizes must be positive integers");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw UsageError(flag + ": no sizes given");
  return out;
}

/// A "FORMAT PATH" or "PATH" pair as used by --export, --report and --out.
struct Sink {
  std::string format;
  std::string path;
};

Sink parse_sink(const std::vector<std::string>& vals, const std::string& flag, const std::vector<std::string>& formats,
                const std::string& fallback) {
  Sink s;
  if (vals.size() == 2) {
    s.format = vals[0];
    s.path = vals[1];
  } else if (vals.size() == 1 && std::find(formats.begin(), formats.end(), vals[0]) != formats.end()) {
    s.format = vals[0];
    s.path = "-";
  } else if (vals.size() == 1) {
    s.path = vals[0];
    const auto dot = s.path.rfind('.');
    s.format = dot == std::string::npos ? fallback : s.path.substr(dot + 1);
    if (std::find(formats.begin(), formats.end(), s.format) == formats.end()) s.format = fallback;
  } else {
    throw UsageError(flag + ": expected [FORMAT] PATH");
  }
  if (std::find(formats.begin(), formats.end(), s.format) == formats.end())
    throw UsageError(flag + ": unknown format '" + s.format + "'");
  return s;
}

template <class Fn>
void write_to(const std::string& path, std::ostream& out, Fn&& fn) {
  if (path == "-") {
    fn(out);
    return;
  }
  std::ofstream f(path);
  if (!f) throw DomainError("cannot open '" + path + "' for writing");
  fn(f);
  if (!f) throw DomainError("failed writing '" + path + "'");
}

void emit_json(json j, const std::string& path, std::ostream& out) {
  round_json(j);
  write_to(path, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

void write_mesh(const Polytope& p, const Sink& s, std::ostream& out) {
  write_to(s.path, out, [&](std::ostream& os) {
    if (s.format == "obj")
      write_obj(os, p);
    else
      write_off(os, p);
  });
}

std::shared_ptr<const LatticeSpec> load_lattice(const std::string& selector) {
  return std::make_shared<const LatticeSpec>(lattice_from_selector(selector));
}

/// Closed-form density where one exists: the built-in paper lattices, or any
/// single-sublattice lattice.
PolyhedralDensity closed_density(const std::string& selector, const LatticeSpec& spec) {
  if (selector == "fcc") return fcc_density();
  if (selector == "hcp") return hcp_density();
  return single_sublattice_density(spec);
}

double closed_polar(const std::string& selector, const PolarNumeric& numeric, const Vec3& zeta) {
  if (selector == "fcc") return polar_fcc(zeta);
  if (selector == "hcp") return polar_hcp(zeta);
  return numeric(zeta);
}

std::vector<Vec3> icosphere(int level) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                         {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  std::vector<std::array<int, 3>> f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                       {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                       {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                       {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (auto& p : v) p = p / norm(p);
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      if (auto it = mid.find(key); it != mid.end()) return it->second;
      const Vec3 m = v[static_cast<std::size_t>(a)] + v[static_cast<std::size_t>(b)];
      v.push_back(m / norm(m));
      return mid[key] = static_cast<int>(v.size() - 1);
    };
    std::vector<std::array<int, 3>> next;
    for (const auto& [a, b, c] : f) {
      const int ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
      next.push_back({a, ab, ca});
      next.push_back({b, bc, ab});
      next.push_back({c, ca, bc});
      next.push_back({ab, bc, ca});
    }
    f = std::move(next);
  }
  return v;
}

int parse_icosphere(const std::string& grid) {
  const std::string prefix = "icosphere:";
  if (grid.rfind(prefix, 0) != 0) throw UsageError("--grid: expected icosphere:K, got '" + grid + "'");
  const std::string k = grid.substr(prefix.size());
  if (k.empty() || k.size() > 1 || k[0] < '0' || k[0] > '6') throw UsageError("--grid: level must be 0..6");
  return k[0] - '0';
}

std::vector<Vec3> random_directions(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Vec3> out;
  while (out.size() < n) {
    const Vec3 v{g(rng), g(rng), g(rng)};
    if (norm(v) > 1e-6) out.push_back(v / norm(v));
  }
  return out;
}

// -- validate -----------------------------------------------------------------

struct Check {
  std::string lattice;
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool passed() const { return deviation <= tolerance; }
};

struct ValidateOptions {
  double T = 20.0;
  double layer = 3.0;
  double mincut_tolerance = 0.25;
  std::size_t directions = 200;
};

std::vector<Check> validate_lattice(const std::string& selector, const ValidateOptions& o, std::ostream& err) {
  const auto spec = load_lattice(selector);
  std::vector<Check> checks;
  auto record = [&](std::string name, double dev, double tol) {
    checks.push_back({selector, std::move(name), dev, tol});
    const auto& c = checks.back();
    err << (c.passed() ? "PASS " : "FAIL ") << selector << ' ' << c.name << " deviation=" << format15(dev)
        << " tolerance=" << format15(tol) << '\n';
  };

  const auto dirs = random_directions(o.directions, 0x5a17);
  std::optional<PolyhedralDensity> closed;
  if (selector == "fcc" || selector == "hcp" || spec->sublattice_count() == 1) closed = closed_density(selector, *spec);
  auto reference = [&](const Vec3& nu) {
    return closed ? (*closed)(nu) : phi_cell_formula({*spec, {}, nu});
  };

  if (closed) {
    double cell = 0.0, supp = 0.0, pol = 0.0, vert = 0.0;
    std::vector<double> cell_values(dirs.size());
    parallel_for(dirs.size(), [&](std::size_t i) { cell_values[i] = phi_cell_formula({*spec, {}, dirs[i]}); });
    const Polytope W = wulff_shape(*closed);
    const PolarNumeric numeric(*closed);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      const double c = (*closed)(dirs[i]);
      cell = std::max(cell, std::abs(c - cell_values[i]));
      supp = std::max(supp, std::abs(c - support(W, dirs[i])));
      pol = std::max(pol, std::abs(closed_polar(selector, numeric, dirs[i]) - numeric(dirs[i])));
    }
    vert = vertex_set_distance(polar(numeric.unit_ball()), W);
    const double surf = anisotropic_perimeter(W, *closed);
    record("phi closed vs cell formula", cell, 1e-9);
    record("phi closed vs support of W", supp, 1e-9);
    record("polar closed vs numeric", pol, 1e-8);
    record("polar sublevel set vs W vertices", vert, 1e-8);
    record("surface integral vs 3|W| (relative)", std::abs(surf - 3.0 * W.volume) / (3.0 * W.volume), 1e-9);
  }

  {
    double vol = 0.0, nn = 0.0;
    const double expected = 1.0 / density_rho(*spec);
    for (std::size_t sub = 0; sub < spec->sublattice_count(); ++sub) {
      const SiteId id{IVec3{}, static_cast<int>(sub)};
      const VoronoiCell cell = voronoi_cell(*spec, id);
      vol = std::max(vol, std::abs(cell.polytope.volume - expected));
      auto by_face = nearest_neighbors_by_face(*spec, id);
      auto stencil = neighbors(*spec, id);
      std::sort(by_face.begin(), by_face.end());
      std::sort(stencil.begin(), stencil.end());
      if (by_face != stencil) nn = 1.0;
    }
    record("voronoi volume vs 1/rho", vol, 1e-9);
    record("voronoi face neighbors vs stencil", nn, 0.0);
  }

  {
    const std::vector<Vec3> probes = {{0, 0, 1}, {1, 1, 1}, {1, 1, 0}, {1, 0, 0}};
    std::vector<double> rel(probes.size());
    MincutOptions mo;
    mo.layer = o.layer;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const Vec3 nu = probes[i] / norm(probes[i]);
      const double ref = reference(nu);
      rel[i] = std::abs(phi_window_mincut(*spec, nu, o.T, mo) - ref) / ref;
    }
    record("min-cut window at T=" + format15(o.T) + " (relative)", *std::max_element(rel.begin(), rel.end()),
           o.mincut_tolerance);
  }
  return checks;
}

// -- subcommands ----------------------------------------------------------------

struct PhiArgs {
  std::string lattice = "fcc";
  std::string nu;
  std::string method = "closed";
  double T = 40.0;
  double layer = 3.0;
  std::string grid = "icosphere:2";
};

double phi_value(const std::string& selector, const LatticeSpec& spec, const std::string& method, const Vec3& nu,
                 double T, double layer) {
  if (method == "closed") return closed_density(selector, spec)(nu);
  if (method == "cell") return phi_cell_formula({spec, {}, nu});
  MincutOptions mo;
  mo.layer = layer;
  return phi_window_mincut(spec, nu, T, mo);
}

void check_phi_args(const PhiArgs& a) {
  if (a.method != "closed" && a.method != "cell" && a.method != "mincut")
    throw UsageError("--method: expected closed, cell or mincut, got '" + a.method + "'");
  if (!(a.T >= 10.0)) throw UsageError("--T: window side must be at least 10");
  if (!(a.layer >= 1.0) || a.layer >= a.T) throw UsageError("--layer: must lie in [1, T)");
}

int cmd_phi(const PhiArgs& a, std::ostream& out) {
  check_phi_args(a);
  if (a.nu.empty()) throw UsageError("--nu is required (or use 'phi sweep')");
  const Vec3 nu = parse_direction(a.nu, "--nu");
  const auto spec = load_lattice(a.lattice);
  json j{{"lattice", a.lattice}, {"nu", vec_json(nu)}, {"method", a.method}};
  if (a.method == "mincut") j["T"] = a.T, j["layer"] = a.layer;
  j["value"] = phi_value(a.lattice, *spec, a.method, nu, a.T, a.layer);
  emit_json(j, "-", out);
  return 0;
}

int cmd_phi_sweep(const PhiArgs& a, std::ostream& out, std::ostream& err) {
  check_phi_args(a);
  const int level = parse_icosphere(a.grid);
  const auto spec = load_lattice(a.lattice);
  const auto dirs = icosphere(level);
  const PolarNumeric numeric(closed_density(a.lattice, *spec));
  std::vector<double> phi(dirs.size()), pol(dirs.size());
  err << "phi sweep: " << dirs.size() << " directions, method " << a.method << '\n';
  parallel_for(dirs.size(), [&](std::size_t i) {
    phi[i] = phi_value(a.lattice, *spec, a.method, dirs[i], a.T, a.layer);
    pol[i] = closed_polar(a.lattice, numeric, dirs[i]);
  });
  out << "nu_x,nu_y,nu_z,phi,phi_polar\n";
  for (std::size_t i = 0; i < dirs.size(); ++i)
    out << format15(dirs[i].x) << ',' << format15(dirs[i].y) << ',' << format15(dirs[i].z) << ','
        << format15(phi[i]) << ',' << format15(pol[i]) << '\n';
  return 0;
}

int cmd_voronoi(const std::string& lattice, int sub, const std::vector<std::string>& export_vals, std::ostream& out) {
  std::optional<Sink> mesh;
  if (!export_vals.empty()) mesh = parse_sink(export_vals, "--export", {"off", "obj"}, "off");
  const auto spec = load_lattice(lattice);
  if (sub < 0 || static_cast<std::size_t>(sub) >= spec->sublattice_count())
    throw UsageError("--sub: lattice has " + std::to_string(spec->sublattice_count()) + " sublattices");
  const VoronoiCell cell = voronoi_cell(*spec, SiteId{IVec3{}, sub});
  if (mesh) {
    write_mesh(cell.polytope, *mesh, out);
    if (mesh->path == "-") return 0;
  }
  json faces = json::array();
  for (const auto& f : cell.faces) {
    json corners = json::array();
    for (auto vi : cell.polytope.facets[f.facet].loop) corners.push_back(vec_json(cell.polytope.vertices[vi]));
    faces.push_back({{"displacement", vec_json(f.displacement)}, {"area", f.area}, {"corners", corners}});
  }
  emit_json({{"lattice", lattice},
             {"sub", sub},
             {"volume", cell.polytope.volume},
             {"face_count", cell.faces.size()},
             {"faces", faces}},
            "-", out);
  return 0;
}

int cmd_wulff(const std::string& lattice, const std::vector<std::string>& export_vals,
              const std::vector<std::string>& report_vals, std::ostream& out) {
  std::optional<Sink> mesh, report;
  if (!export_vals.empty()) mesh = parse_sink(export_vals, "--export", {"off", "obj"}, "off");
  if (!report_vals.empty()) report = parse_sink(report_vals, "--report", {"json"}, "json");
  if (mesh && report && mesh->path == "-" && report->path == "-")
    throw UsageError("--export and --report cannot both write to stdout");
  const WulffReport r = wulff_report(lattice);
  if (mesh) write_mesh(r.body, *mesh, out);
  if (report || !mesh) emit_json(to_json(r), report ? report->path : "-", out);
  return 0;
}

int cmd_compare(std::ostream& out) {
  const LatticeComparison c = compare_lattices();
  emit_json({{"m_FCC", c.m_fcc},
             {"m_HCP", c.m_hcp},
             {"difference", c.difference},
             {"limit_FCC", c.limit_fcc},
             {"limit_HCP", c.limit_hcp},
             {"verdict", c.verdict}},
            "-", out);
  return 0;
}

int cmd_energy(const std::string& lattice, const std::string& config, std::ostream& out) {
  if (config.empty()) throw UsageError("--config is required");
  const auto spec = load_lattice(lattice);
  const Configuration X = load_configuration(config, spec);
  emit_json({{"N", X.size()}, {"energy", energy(X)}, {"excess", excess_energy(X)}}, "-", out);
  return 0;
}

struct AnnealArgs {
  std::string lattice = "fcc";
  int N = 100;
  std::string Ns = "500,1000,2000,4000";
  int seeds = 1;
  AnnealSchedule sched;
  std::int64_t moves_per_atom = 20;
  bool shape = false;
  std::vector<std::string> out = {"json", "-"};
  std::string config_out;
};

AnnealSchedule effective_schedule(const AnnealArgs& a, int N, int k) {
  AnnealSchedule s = a.sched;
  s.seed = a.sched.seed + static_cast<std::uint64_t>(k);
  if (a.moves_per_atom > 0) s.moves_per_sweep = std::max(s.moves_per_sweep, a.moves_per_atom * N);
  return s;
}

void check_anneal_args(const AnnealArgs& a) {
  if (a.seeds < 1) throw UsageError("--seeds: must be positive");
  if (a.moves_per_atom < 0) throw UsageError("--moves-per-atom: must be nonnegative");
  try {
    a.sched.validate();
  } catch (const DomainError& e) {
    throw UsageError(std::string("--t0/--cooling/--sweeps/--moves/--seed: ") + e.what());
  }
}

int cmd_anneal(const AnnealArgs& a, std::ostream& out, std::ostream& err) {
  check_anneal_args(a);
  if (a.N < 1) throw UsageError("--N: must be positive");
  const Sink sink = parse_sink(a.out, "--out", {"json", "csv"}, "json");
  const auto spec = load_lattice(a.lattice);
  std::optional<Polytope> body;
  if (a.shape) body = wulff_report(a.lattice).body;

  std::vector<AnnealResult> results(static_cast<std::size_t>(a.seeds));
  std::vector<double> symdiff(results.size(), 0.0);
  parallel_for(results.size(), [&](std::size_t k) {
    results[k] = anneal_ground_state(spec, a.N, effective_schedule(a, a.N, static_cast<int>(k)));
    if (body) symdiff[k] = shape_deviation(results[k].config, *body).symdiff;
  });

  std::size_t best = 0;
  for (std::size_t k = 0; k < results.size(); ++k) {
    err << "anneal: N=" << a.N << " seed=" << a.sched.seed + k << " energy=" << results[k].energy << '\n';
    if (results[k].energy < results[best].energy) best = k;
  }
  if (!a.config_out.empty())
    write_to(a.config_out, out, [&](std::ostream& os) { write_configuration(os, results[best].config); });

  if (sink.format == "csv") {
    write_to(sink.path, out, [&](std::ostream& os) {
      os << "N,seed,energy,excess,initial_energy,accepted" << (a.shape ? ",symdiff" : "") << '\n';
      for (std::size_t k = 0; k < results.size(); ++k) {
        os << a.N << ',' << a.sched.seed + k << ',' << format15(results[k].energy) << ','
           << format15(excess_energy(results[k].config)) << ',' << format15(results[k].initial_energy) << ','
           << results[k].accepted;
        if (a.shape) os << ',' << format15(symdiff[k]);
        os << '\n';
      }
    });
    return 0;
  }
  json runs = json::array();
  std::vector<double> excess;
  for (std::size_t k = 0; k < results.size(); ++k) {
    excess.push_back(excess_energy(results[k].config));
    json run{{"seed", a.sched.seed + k},
             {"energy", results[k].energy},
             {"excess", excess.back()},
             {"initial_energy", results[k].initial_energy},
             {"accepted", results[k].accepted}};
    if (a.shape) run["symdiff"] = symdiff[k];
    runs.push_back(run);
  }
  json j{{"lattice", a.lattice},
         {"N", a.N},
         {"schedule",
          {{"t0", a.sched.initial_temperature},
           {"cooling", a.sched.cooling},
           {"sweeps", a.sched.sweeps},
           {"moves_per_sweep", effective_schedule(a, a.N, 0).moves_per_sweep}}},
         {"runs", runs},
         {"median_excess", median(excess)},
         {"best_energy", results[best].energy}};
  if (a.shape) j["median_symdiff"] = median(symdiff);
  emit_json(j, sink.path, out);
  return 0;
}

int cmd_scaling(const AnnealArgs& a, std::ostream& out) {
  check_anneal_args(a);
  const auto Ns = parse_sizes(a.Ns, "--Ns");
  const Sink sink = parse_sink(a.out, "--out", {"json", "csv"}, "json");
  ScalingOptions so;
  so.seeds = a.seeds;
  so.shape = a.shape;
  so.moves_per_atom = a.moves_per_atom;
  const auto rows = scaling_curve(a.lattice, Ns, a.sched, so);
  if (sink.format == "csv") {
    write_to(sink.path, out, [&](std::ostream& os) {
      os << "N,seed,excess,symdiff,median_excess,predicted,ratio\n";
      for (const auto& r : rows)
        for (std::size_t k = 0; k < r.excess.size(); ++k)
          os << r.N << ',' << a.sched.seed + k << ',' << format15(r.excess[k]) << ','
             << (r.symdiff.empty() ? std::string() : format15(r.symdiff[k])) << ',' << format15(r.median_excess)
             << ',' << format15(r.predicted) << ',' << format15(r.ratio) << '\n';
    });
    return 0;
  }
  json j{{"lattice", a.lattice}, {"seeds", a.seeds}, {"rows", json::array()}};
  for (const auto& r : rows) j["rows"].push_back(to_json(r));
  emit_json(j, sink.path, out);
  return 0;
}

int cmd_validate(const std::string& lattice, const ValidateOptions& o, std::ostream& out, std::ostream& err) {
  if (!(o.T >= 10.0)) throw UsageError("--T: window side must be at least 10");
  if (!(o.layer >= 1.0) || o.layer >= o.T) throw UsageError("--layer: must lie in [1, T)");
  std::vector<std::string> lattices = lattice == "all" ? std::vector<std::string>{"fcc", "hcp"}
                                                       : std::vector<std::string>{lattice};
  std::vector<Check> checks;
  for (const auto& l : lattices) {
    auto c = validate_lattice(l, o, err);
    checks.insert(checks.end(), c.begin(), c.end());
  }
  json arr = json::array();
  bool ok = true;
  for (const auto& c : checks) {
    ok = ok && c.passed();
    arr.push_back({{"lattice", c.lattice},
                   {"name", c.name},
                   {"deviation", c.deviation},
                   {"tolerance", c.tolerance},
                   {"passed", c.passed()}});
  }
  emit_json({{"checks", arr}, {"passed", ok}}, "-", out);
  return ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Surface energies, Wulff crystals and ground states of FCC and HCP sticky-disk lattices", "wulffkit"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  const std::string lattice_help = "fcc, hcp, cubic or file:PATH";

  PhiArgs phi;
  auto* phi_cmd = app.add_subcommand("phi", "Surface energy density in one direction");
  phi_cmd->add_option("--lattice", phi.lattice, lattice_help);
  phi_cmd->add_option("--nu", phi.nu, "Direction x,y,z (normalized internally)");
  phi_cmd->add_option("--method", phi.method, "closed, cell or mincut");
  phi_cmd->add_option("--T", phi.T, "Window side for mincut");
  phi_cmd->add_option("--layer", phi.layer, "Fixed boundary layer width for mincut");
  phi_cmd->require_subcommand(0, 1);
  auto* sweep_cmd = phi_cmd->add_subcommand("sweep", "CSV of nu, phi and the polar function over a sphere grid");
  sweep_cmd->add_option("--grid", phi.grid, "icosphere:K with K in 0..6");
  sweep_cmd->add_option("--lattice", phi.lattice, lattice_help);
  sweep_cmd->add_option("--method", phi.method, "closed, cell or mincut");
  sweep_cmd->add_option("--T", phi.T, "Window side for mincut");
  sweep_cmd->add_option("--layer", phi.layer, "Fixed boundary layer width for mincut");

  std::string vor_lattice = "fcc";
  int vor_sub = 0;
  std::vector<std::string> vor_export;
  auto* vor_cmd = app.add_subcommand("voronoi", "Voronoi cell of a lattice site");
  vor_cmd->add_option("--lattice", vor_lattice, lattice_help);
  vor_cmd->add_option("--sub", vor_sub, "Sublattice index");
  vor_cmd->add_option("--export", vor_export, "[off|obj] PATH; PATH - writes the mesh to stdout")->expected(1, 2);

  std::string wulff_lattice = "fcc";
  std::vector<std::string> wulff_export, wulff_report_vals;
  auto* wulff_cmd = app.add_subcommand("wulff", "Wulff crystal, facet census and constants");
  wulff_cmd->add_option("--lattice", wulff_lattice, lattice_help);
  wulff_cmd->add_option("--export", wulff_export, "[off|obj] PATH")->expected(1, 2);
  wulff_cmd->add_option("--report", wulff_report_vals, "[json] PATH; - for stdout (default when no --export)")
      ->expected(1, 2);

  auto* compare_cmd = app.add_subcommand("compare", "Isoperimetric quotients of FCC and HCP");

  std::string energy_lattice = "fcc", energy_config;
  auto* energy_cmd = app.add_subcommand("energy", "Energy of a configuration file");
  energy_cmd->add_option("--lattice", energy_lattice, lattice_help);
  energy_cmd->add_option("--config", energy_config, "Lines of 'cell_x cell_y cell_z sub'");

  AnnealArgs anneal;
  auto add_anneal_flags = [&](CLI::App* cmd) {
    cmd->add_option("--lattice", anneal.lattice, lattice_help);
    cmd->add_option("--seeds", anneal.seeds, "Independent runs, seeds seed, seed+1, ...");
    cmd->add_option("--seed", anneal.sched.seed, "First seed");
    cmd->add_option("--sweeps", anneal.sched.sweeps, "Temperature steps");
    cmd->add_option("--t0", anneal.sched.initial_temperature, "Initial temperature");
    cmd->add_option("--cooling", anneal.sched.cooling, "Temperature factor per sweep");
    cmd->add_option("--moves", anneal.sched.moves_per_sweep, "Minimum moves per sweep");
    cmd->add_option("--moves-per-atom", anneal.moves_per_atom, "Moves per sweep per atom (0 disables)");
    cmd->add_flag("--shape", anneal.shape, "Also measure the distance to the Wulff shape");
    cmd->add_option("--out", anneal.out, "{json|csv} [PATH]")->expected(1, 2);
  };
  auto* anneal_cmd = app.add_subcommand("anneal", "Simulated annealing for one cluster size");
  add_anneal_flags(anneal_cmd);
  anneal_cmd->add_option("--N", anneal.N, "Number of atoms");
  anneal_cmd->add_option("--config-out", anneal.config_out, "Write the best configuration here");
  auto* scaling_cmd = app.add_subcommand("scaling", "Excess energy against cluster size");
  add_anneal_flags(scaling_cmd);
  scaling_cmd->add_option("--Ns", anneal.Ns, "Comma-separated cluster sizes");

  std::string val_lattice = "all";
  ValidateOptions vopt;
  auto* val_cmd = app.add_subcommand("validate", "Cross-check the independent routes");
  val_cmd->add_option("--lattice", val_lattice, "all, " + lattice_help);
  val_cmd->add_option("--T", vopt.T, "Window side of the min-cut check");
  val_cmd->add_option("--layer", vopt.layer, "Boundary layer of the min-cut check");
  val_cmd->add_option("--mincut-tolerance", vopt.mincut_tolerance, "Allowed relative min-cut error");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (*phi_cmd) return *sweep_cmd ? cmd_phi_sweep(phi, out, err) : cmd_phi(phi, out);
    if (*vor_cmd) return cmd_voronoi(vor_lattice, vor_sub, vor_export, out);
    if (*wulff_cmd) return cmd_wulff(wulff_lattice, wulff_export, wulff_report_vals, out);
    if (*compare_cmd) return cmd_compare(out);
    if (*energy_cmd) return cmd_energy(energy_lattice, energy_config, out);
    if (*anneal_cmd) return cmd_anneal(anneal, out, err);
    if (*scaling_cmd) return cmd_scaling(anneal, out);
    if (*val_cmd) return cmd_validate(val_lattice, vopt, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

}  // namespace wulffkit::cli
