#include "wulffkit/crystallize.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <random>
#include <unordered_map>

#include "wulffkit/errors.hpp"
#include "wulffkit/parallel.hpp"
#include "wulffkit/voronoi.hpp"
#include "wulffkit/wulff.hpp"

namespace wulffkit {

void AnnealSchedule::validate() const {
  if (!(initial_temperature > 0.0)) throw DomainError("anneal schedule: initial temperature must be positive");
  if (!(cooling > 0.0 && cooling < 1.0)) throw DomainError("anneal schedule: cooling factor must lie in (0, 1)");
  if (sweeps <= 0) throw DomainError("anneal schedule: sweeps must be positive");
  if (moves_per_sweep <= 0) throw DomainError("anneal schedule: moves per sweep must be positive");
  if (seed == 0) throw DomainError("anneal schedule: seed must be positive");
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

namespace {

std::vector<SiteId> canonical(std::vector<SiteId> sites) {
  std::sort(sites.begin(), sites.end());
  const IVec3 shift = sites.front().cell;
  for (auto& s : sites) s.cell = s.cell - shift;
  return sites;
}

Configuration make_config(std::shared_ptr<const LatticeSpec> spec, const std::vector<SiteId>& sites, double eps = 1.0) {
  Configuration X{std::move(spec), eps, {}};
  X.sites.insert(sites.begin(), sites.end());
  return X;
}

// -- exact search -------------------------------------------------------------

class AnimalSearch {
 public:
  AnimalSearch(const LatticeSpec& spec, int n, std::vector<int> best_small)
      : spec_(spec), n_(n), best_small_(std::move(best_small)) {}

  /// Maximal bond count over connected n-sets, with one optimal set.
  std::pair<int, std::vector<SiteId>> solve() {
    const auto greedy = greedy_set();
    best_ = count_bonds(greedy);
    best_set_ = greedy;
    for (std::size_t sub = 0; sub < spec_.sublattice_count(); ++sub) {
      anchor_ = SiteId{IVec3{}, static_cast<int>(sub)};
      seen_.clear();
      cnt_.clear();
      seen_.insert(anchor_);
      std::vector<SiteId> untried{anchor_};
      recurse(untried);
    }
    return {best_, best_set_};
  }

 private:
  std::vector<SiteId> greedy_set() const {
    std::vector<SiteId> set{SiteId{}};
    SiteSet in{SiteId{}};
    while (static_cast<int>(set.size()) < n_) {
      SiteId pick{};
      int pick_cnt = -1;
      for (const auto& s : set)
        for (const auto& e : spec_.stencil(s.sub)) {
          const SiteId c = step(s, e);
          if (in.count(c)) continue;
          int k = 0;
          for (const auto& f : spec_.stencil(c.sub)) k += static_cast<int>(in.count(step(c, f)));
          if (k > pick_cnt || (k == pick_cnt && c < pick)) pick = c, pick_cnt = k;
        }
      set.push_back(pick);
      in.insert(pick);
    }
    return set;
  }

  int count_bonds(const std::vector<SiteId>& set) const {
    SiteSet in(set.begin(), set.end());
    int twice = 0;
    for (const auto& s : set)
      for (const auto& e : spec_.stencil(s.sub)) twice += static_cast<int>(in.count(step(s, e)));
    return twice / 2;
  }

  void add(const SiteId& v) {
    bonds_ += cnt_[v];
    chosen_.push_back(v);
    for (const auto& e : spec_.stencil(v.sub)) ++cnt_[step(v, e)];
  }

  void remove(const SiteId& v) {
    for (const auto& e : spec_.stencil(v.sub)) --cnt_[step(v, e)];
    chosen_.pop_back();
    bonds_ -= cnt_[v];
  }

  int top_k_sum(const std::vector<SiteId>& sites, int k) {
    scratch_.clear();
    for (const auto& s : sites) {
      const auto it = cnt_.find(s);
      scratch_.push_back(it == cnt_.end() ? 0 : it->second);
    }
    const auto kk = std::min<std::size_t>(static_cast<std::size_t>(k), scratch_.size());
    std::partial_sort(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(kk), scratch_.end(), std::greater<>());
    int s = 0;
    for (std::size_t i = 0; i < kk; ++i) s += scratch_[i];
    return s;
  }

  void recurse(std::vector<SiteId> untried) {
    while (!untried.empty()) {
      const SiteId v = untried.back();
      untried.pop_back();
      add(v);
      if (static_cast<int>(chosen_.size()) == n_) {
        if (bonds_ > best_) {
          best_ = bonds_;
          best_set_ = chosen_;
        }
      } else {
        std::vector<SiteId> next = untried;
        const std::size_t old = next.size();
        for (const auto& e : spec_.stencil(v.sub)) {
          const SiteId w = step(v, e);
          if (w < anchor_ || seen_.count(w)) continue;
          seen_.insert(w);
          next.push_back(w);
        }
        const int k = n_ - static_cast<int>(chosen_.size());
        const int bound = bonds_ + best_small_[static_cast<std::size_t>(k)] + top_k_sum(next, k);
        if (bound > best_) recurse(next);
        for (std::size_t i = old; i < next.size(); ++i) seen_.erase(next[i]);
      }
      remove(v);
    }
  }

  const LatticeSpec& spec_;
  int n_;
  std::vector<int> best_small_;
  SiteId anchor_{};
  int best_ = -1;
  std::vector<SiteId> best_set_;
  std::vector<SiteId> chosen_;
  std::unordered_map<SiteId, int, SiteIdHash> cnt_;
  SiteSet seen_;
  int bonds_ = 0;
  std::vector<int> scratch_;
};

// -- annealing ----------------------------------------------------------------

/// Occupancy bookkeeping with atoms that have a vacant neighbor and vacant
/// sites that touch the cluster bucketed by occupied-neighbor count.
class Annealer {
 public:
  explicit Annealer(const LatticeSpec& spec) : spec_(spec) {
    std::size_t z = 0;
    for (std::size_t s = 0; s < spec.sublattice_count(); ++s) z = std::max(z, spec.stencil(static_cast<int>(s)).size());
    boundary_.resize(z + 1);
    frontier_.resize(z + 1);
  }

  void place(const SiteId& s) { place(slot(s)); }

  void place(int s) {
    occ_[idx(s)] = 1;
    apos_[idx(s)] = static_cast<int>(atoms_.size());
    atoms_.push_back(s);
    bonds_ += cnt_[idx(s)];
    for (int n : nbs(s)) {
      ++cnt_[idx(n)];
      refresh(n);
    }
    refresh(s);
  }

  void remove(int s) {
    occ_[idx(s)] = 0;
    const int p = apos_[idx(s)];
    atoms_[static_cast<std::size_t>(p)] = atoms_.back();
    apos_[idx(atoms_.back())] = p;
    atoms_.pop_back();
    for (int n : nbs(s)) {
      --cnt_[idx(n)];
      refresh(n);
    }
    bonds_ -= cnt_[idx(s)];
    refresh(s);
  }

  std::int64_t bonds() const { return bonds_; }
  /// boundary()[c]: atoms with c occupied neighbors and at least one vacancy.
  const std::vector<std::vector<int>>& boundary() const { return boundary_; }
  /// frontier()[c]: vacant sites with c > 0 occupied neighbors.
  const std::vector<std::vector<int>>& frontier() const { return frontier_; }
  int count(int s) const { return cnt_[idx(s)]; }
  bool adjacent(int a, int b) {
    const auto& n = nbs(a);
    return std::find(n.begin(), n.end(), b) != n.end();
  }
  std::vector<SiteId> occupied() const {
    std::vector<SiteId> out;
    for (int s : atoms_) out.push_back(site_[idx(s)]);
    return out;
  }

 private:
  static std::size_t idx(int s) { return static_cast<std::size_t>(s); }

  int slot(const SiteId& s) {
    const auto [it, inserted] = slot_of_.emplace(s, static_cast<int>(site_.size()));
    if (inserted) {
      site_.push_back(s);
      occ_.push_back(0);
      cnt_.push_back(0);
      bk_.push_back(-1);
      bpos_.push_back(-1);
      fk_.push_back(-1);
      fpos_.push_back(-1);
      apos_.push_back(-1);
      nbs_.emplace_back();
    }
    return it->second;
  }

  const std::vector<int>& nbs(int s) {
    if (nbs_[idx(s)].empty()) {
      std::vector<int> v;
      const SiteId id = site_[idx(s)];
      for (const auto& e : spec_.stencil(id.sub)) v.push_back(slot(step(id, e)));
      nbs_[idx(s)] = std::move(v);
    }
    return nbs_[idx(s)];
  }

  static void rebucket(std::vector<std::vector<int>>& buckets, std::vector<int>& key, std::vector<int>& pos, int s, int want) {
    const int have = key[idx(s)];
    if (want == have) return;
    if (have >= 0) {
      auto& list = buckets[static_cast<std::size_t>(have)];
      const int p = pos[idx(s)];
      list[static_cast<std::size_t>(p)] = list.back();
      pos[idx(list.back())] = p;
      list.pop_back();
    }
    key[idx(s)] = want;
    pos[idx(s)] = -1;
    if (want >= 0) {
      auto& list = buckets[static_cast<std::size_t>(want)];
      pos[idx(s)] = static_cast<int>(list.size());
      list.push_back(s);
    }
  }

  void refresh(int s) {
    const int z = static_cast<int>(spec_.stencil(site_[idx(s)].sub).size());
    const int c = cnt_[idx(s)];
    rebucket(boundary_, bk_, bpos_, s, occ_[idx(s)] && c < z ? c : -1);
    rebucket(frontier_, fk_, fpos_, s, !occ_[idx(s)] && c > 0 ? c : -1);
  }

  const LatticeSpec& spec_;
  std::unordered_map<SiteId, int, SiteIdHash> slot_of_;
  std::vector<SiteId> site_;
  std::vector<char> occ_;
  std::vector<int> cnt_, bk_, bpos_, fk_, fpos_, apos_;
  std::vector<std::vector<int>> nbs_;
  std::vector<std::vector<int>> boundary_, frontier_;
  std::vector<int> atoms_;
  std::int64_t bonds_ = 0;
};

std::int64_t site_energy_total(const LatticeSpec& spec, const std::vector<SiteId>& sites, std::int64_t bonds) {
  std::int64_t z = 0;
  for (const auto& s : sites) z += static_cast<std::int64_t>(spec.stencil(s.sub).size());
  return z - 2 * bonds;
}

}  // namespace

GroundState exact_ground_state(std::shared_ptr<const LatticeSpec> spec, int N) {
  if (N < 1 || N > 10) throw DomainError("exact_ground_state: N must lie in [1, 10]");
  std::vector<int> best_small{0};
  std::vector<SiteId> set;
  for (int n = 1; n <= N; ++n) {
    auto [b, s] = AnimalSearch(*spec, n, best_small).solve();
    best_small.push_back(b);
    set = std::move(s);
  }
  Configuration X = make_config(spec, canonical(set));
  const double e = energy(X);
  return {std::move(X), e};
}

Configuration ball_configuration(std::shared_ptr<const LatticeSpec> spec, int N, double epsilon) {
  if (N < 1) throw DomainError("cluster size N must be positive");
  const double radius = std::cbrt(3.0 * N / (4.0 * M_PI * density_rho(*spec))) + 3.0;
  auto sites = enumerate_sites(*spec, BallRegion{Vec3{}, radius});
  std::vector<std::pair<double, SiteId>> keyed;
  for (const auto& s : sites) keyed.emplace_back(norm2(site_position(*spec, s)), s);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (std::abs(a.first - b.first) > 1e-9) return a.first < b.first;
    return a.second < b.second;
  });
  std::vector<SiteId> chosen;
  for (int i = 0; i < N; ++i) chosen.push_back(keyed[static_cast<std::size_t>(i)].second);
  return make_config(std::move(spec), chosen, epsilon);
}

AnnealResult anneal_ground_state(std::shared_ptr<const LatticeSpec> spec, int N, const AnnealSchedule& sched) {
  sched.validate();
  const Configuration start = ball_configuration(spec, N);
  Annealer a(*spec);
  for (const auto& s : start.sorted_sites()) a.place(s);

  AnnealResult res;
  std::int64_t e = site_energy_total(*spec, start.sorted_sites(), a.bonds());
  res.initial_energy = static_cast<double>(e);
  std::int64_t best = e;
  std::vector<SiteId> best_sites = a.occupied();

  // Moves are drawn per (atom count, target count) class with probability
  // proportional to class size times the Metropolis factor of the class
  // energy change; the exact change differs only when the target touches the
  // moving atom, which is corrected by a second acceptance test.
  std::mt19937_64 rng(sched.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const auto& bd = a.boundary();
  const auto& fr = a.frontier();
  const std::size_t classes = bd.size();
  std::vector<double> rate(4 * classes + 1), weight(classes * classes);
  double temp = sched.initial_temperature;
  for (int sweep = 0; sweep < sched.sweeps; ++sweep, temp *= sched.cooling) {
    for (std::size_t d = 0; d < rate.size(); ++d) {
      const double de = static_cast<double>(d) - 2.0 * static_cast<double>(classes);
      rate[d] = de <= 0.0 ? 1.0 : std::exp(-de / temp);
    }
    auto metropolis = [&](std::int64_t de) { return rate[static_cast<std::size_t>(de + 2 * static_cast<std::int64_t>(classes))]; };
    for (std::int64_t m = 0; m < sched.moves_per_sweep; ++m) {
      double total = 0.0;
      for (std::size_t ca = 0; ca < classes; ++ca)
        for (std::size_t ct = 1; ct < classes; ++ct) {
          const double w = bd[ca].empty() || fr[ct].empty()
                               ? 0.0
                               : static_cast<double>(bd[ca].size()) * static_cast<double>(fr[ct].size()) *
                                     metropolis(2 * (static_cast<std::int64_t>(ca) - static_cast<std::int64_t>(ct)));
          weight[ca * classes + ct] = w;
          total += w;
        }
      if (!(total > 0.0)) break;
      double u = uni(rng) * total;
      std::size_t pick = 0;
      for (std::size_t k = 0; k < weight.size(); ++k) {
        if (weight[k] == 0.0) continue;
        pick = k;
        if ((u -= weight[k]) < 0.0) break;
      }
      const std::size_t ca = pick / classes, ct = pick % classes;
      const int atom = bd[ca][static_cast<std::size_t>(rng() % bd[ca].size())];
      const int target = fr[ct][static_cast<std::size_t>(rng() % fr[ct].size())];
      const bool touch = a.adjacent(target, atom);
      const int n_target = static_cast<int>(ct) - (touch ? 1 : 0);
      if (n_target == 0) continue;
      const std::int64_t de = 2 * (static_cast<std::int64_t>(ca) - n_target);
      if (touch && uni(rng) >= metropolis(de) / metropolis(de - 2)) continue;
      a.remove(atom);
      a.place(target);
      e += de;
      ++res.accepted;
      if (e < best) {
        best = e;
        best_sites = a.occupied();
      }
    }
    res.best_per_sweep.push_back(static_cast<double>(best));
  }
  res.config = make_config(spec, canonical(best_sites));
  res.energy = energy(res.config);
  return res;
}

Vec3 nucleation_center(const Configuration& X, double radius) {
  if (X.sites.empty()) throw DomainError("nucleation_center: empty configuration");
  const auto sites = X.sorted_sites();
  std::vector<Vec3> pos;
  for (const auto& s : sites) pos.push_back(X.position(s));
  const double r2 = radius * radius * (1.0 + 1e-12);
  const Mat3& B = X.lattice->basis_matrix();
  std::vector<IVec3> cells;
  for (const auto& s : sites) cells.push_back(s.cell);
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  std::size_t best = 0;
  Vec3 best_tau;
  bool have = false;
  for (const auto& c : cells) {
    const Vec3 tau = X.epsilon * (B * Vec3{static_cast<double>(c.a), static_cast<double>(c.b), static_cast<double>(c.c)});
    std::size_t k = 0;
    for (const auto& p : pos) k += norm2(p - tau) <= r2 ? 1u : 0u;
    if (!have || k > best) best = k, best_tau = tau, have = true;
  }
  return best_tau;
}

ShapeDeviation shape_deviation(const Configuration& Xin, const Polytope& wulff, const ShapeOptions& opts) {
  if (Xin.sites.empty()) throw DomainError("shape_deviation: empty configuration");
  const LatticeSpec& spec = *Xin.lattice;
  const std::size_t N = Xin.size();
  const double eps = std::cbrt(1.0 / static_cast<double>(N));

  auto sorted = Xin.sorted_sites();
  const IVec3 shift = sorted.front().cell;
  Configuration X{Xin.lattice, eps, {}};
  for (auto s : sorted) {
    s.cell = s.cell - shift;
    X.sites.insert(s);
  }
  const Vec3 shift_pos =
      eps * (spec.basis_matrix() * Vec3{static_cast<double>(shift.a), static_cast<double>(shift.b), static_cast<double>(shift.c)});

  const double rho = density_rho(spec);
  const double vol = static_cast<double>(N) * eps * eps * eps / rho;
  const Polytope body = scaled(wulff, std::cbrt(vol / wulff.volume));
  const auto hs = facet_halfspaces(body);

  double cell_radius = 0.0;
  for (std::size_t s = 0; s < spec.sublattice_count(); ++s) {
    const auto cell = voronoi_cell(spec, SiteId{IVec3{}, static_cast<int>(s)});
    cell_radius = std::max(cell_radius, translated(cell.polytope, -spec.offsets()[s]).circumradius());
  }
  Vec3 lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
  for (const auto& s : X.sites) {
    const Vec3 p = X.position(s);
    for (std::size_t i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], p[i] - eps * cell_radius);
      hi[i] = std::max(hi[i], p[i] + eps * cell_radius);
    }
  }
  const double box = (hi.x - lo.x) * (hi.y - lo.y) * (hi.z - lo.z);

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<Vec3> inside;
  for (std::size_t i = 0; i < opts.samples; ++i) {
    const Vec3 p{lo.x + uni(rng) * (hi.x - lo.x), lo.y + uni(rng) * (hi.y - lo.y), lo.z + uni(rng) * (hi.z - lo.z)};
    if (X.occupied(spec.nearest_site(p / eps))) inside.push_back(p);
  }
  auto symdiff_at = [&](const Vec3& tau) {
    std::size_t hit = 0;
    for (const auto& p : inside) {
      bool in = true;
      for (const auto& h : hs)
        if (dot(h.normal, p - tau) > h.offset) {
          in = false;
          break;
        }
      hit += in ? 1u : 0u;
    }
    const double overlap = box * static_cast<double>(hit) / static_cast<double>(opts.samples);
    return std::clamp(2.0 - 2.0 * overlap / vol, 0.0, 2.0);
  };

  std::vector<Vec3> moves;
  for (const auto& b : spec.basis()) {
    moves.push_back(eps * b);
    moves.push_back(-eps * b);
  }
  for (const auto& e : spec.stencil(0))
    if (e.target_sub == 0) moves.push_back(eps * e.displacement);

  double inradius = std::numeric_limits<double>::infinity();
  for (const auto& h : hs) inradius = std::min(inradius, h.offset);
  Vec3 tau = nucleation_center(X, 0.5 * inradius);
  double cur = symdiff_at(tau);
  for (int iter = 0; iter < 1000; ++iter) {
    Vec3 best_tau = tau;
    double best = cur;
    for (const auto& m : moves) {
      const double v = symdiff_at(tau + m);
      if (v < best - 1e-15) best = v, best_tau = tau + m;
    }
    if (best_tau.x == tau.x && best_tau.y == tau.y && best_tau.z == tau.z) break;
    tau = best_tau;
    cur = best;
  }
  return {N, tau + shift_pos, cur};
}

ShapeDeviation shape_deviation(const Configuration& X, const std::string& lattice, const ShapeOptions& opts) {
  return shape_deviation(X, wulff_report(lattice).body, opts);
}

std::vector<ScalingRow> scaling_curve(const std::string& lattice, const std::vector<int>& Ns, const AnnealSchedule& sched,
                                      const ScalingOptions& opts) {
  if (Ns.empty()) throw DomainError("scaling_curve: no cluster sizes given");
  if (opts.seeds < 1) throw DomainError("scaling_curve: seed count must be positive");
  sched.validate();
  auto spec = std::make_shared<const LatticeSpec>(lattice_from_selector(lattice));
  const WulffReport report = wulff_report(lattice);

  std::vector<ScalingRow> rows(Ns.size());
  const std::size_t seeds = static_cast<std::size_t>(opts.seeds);
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    rows[i].N = Ns[i];
    rows[i].excess.assign(seeds, 0.0);
    if (opts.shape) rows[i].symdiff.assign(seeds, 0.0);
  }
  parallel_for(Ns.size() * seeds, [&](std::size_t task) {
    const std::size_t i = task / seeds, k = task % seeds;
    AnnealSchedule s = sched;
    s.seed = sched.seed + k;
    if (opts.moves_per_atom > 0) s.moves_per_sweep = std::max(s.moves_per_sweep, opts.moves_per_atom * Ns[i]);
    const AnnealResult r = anneal_ground_state(spec, Ns[i], s);
    rows[i].excess[k] = excess_energy(r.config);
    if (opts.shape) rows[i].symdiff[k] = shape_deviation(r.config, report.body).symdiff;
    std::cerr << "scaling: " << lattice << " N=" << Ns[i] << " seed=" << s.seed << " excess=" << rows[i].excess[k] << '\n';
  });
  for (auto& r : rows) {
    r.median_excess = median(r.excess);
    if (opts.shape) r.median_symdiff = median(r.symdiff);
    r.predicted = report.limit_constant;
    r.ratio = r.median_excess / r.predicted;
  }
  return rows;
}

nlohmann::json to_json(const ScalingRow& r) {
  nlohmann::json j{{"N", r.N},
                   {"excess", r.excess},
                   {"median_excess", r.median_excess},
                   {"predicted", r.predicted},
                   {"ratio", r.ratio}};
  if (!r.symdiff.empty()) {
    j["symdiff"] = r.symdiff;
    j["median_symdiff"] = r.median_symdiff;
  }
  return j;
}

}  // namespace wulffkit
