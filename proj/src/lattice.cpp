#include "spinsim/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace spinsim::lattice {

namespace {

constexpr double kFccNN = 1.4142135623730951;       // a*sqrt(2)
constexpr double kZbNN = 0.8660254037844386;        // a*sqrt(3)/2

bool lex_less(const Eigen::Vector3d& p, const Eigen::Vector3d& q) {
  if (p.x() != q.x()) return p.x() < q.x();
  if (p.y() != q.y()) return p.y() < q.y();
  return p.z() < q.z();
}

// integer shell key: 4*|r|^2 is an exact integer for both lattices
// (fcc sites have integer coordinates, zincblende offsets half-integers)
long shell_key(const Eigen::Vector3d& r) {
  return std::lround(4.0 * r.squaredNorm());
}

std::vector<Shell> group_shells(std::vector<Eigen::Vector3d> pts) {
  std::map<long, std::vector<Eigen::Vector3d>> by_r2;
  for (const auto& p : pts) by_r2[shell_key(p)].push_back(p);
  std::vector<Shell> shells;
  shells.reserve(by_r2.size());
  int idx = 0;
  for (auto& [key, sites] : by_r2) {
    std::sort(sites.begin(), sites.end(), lex_less);
    shells.push_back({idx++, std::sqrt(key / 4.0), std::move(sites)});
  }
  return shells;
}

}  // namespace

void LatticeSpec::validate() const {
  if (std::abs(field_dir.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("field_dir must be normalized to 1 within 1e-12");
  const double nn = structure == Structure::FccSingleSpecies ? kFccNN : kZbNN;
  if (!(r_max > nn))
    throw std::invalid_argument("r_max must exceed the nearest-neighbor distance");
}

std::vector<Shell> build_sites(const LatticeSpec& spec, PairKind kind) {
  spec.validate();
  if (kind == PairKind::IS && spec.structure != Structure::ZincblendeTwoSpecies)
    throw std::invalid_argument("heteronuclear pairs require the zincblende structure");

  const double r2max = spec.r_max * spec.r_max + 1e-9;
  const int n = static_cast<int>(std::ceil(spec.r_max)) + 1;
  std::vector<Eigen::Vector3d> pts;
  // both sublattices are fcc with conventional cube edge 2a: integer points
  // with even coordinate sum; the S sublattice is offset by (1/2,1/2,1/2)
  for (int x = -n; x <= n; ++x)
    for (int y = -n; y <= n; ++y)
      for (int z = -n; z <= n; ++z) {
        if ((x + y + z) % 2 != 0) continue;
        Eigen::Vector3d p(x, y, z);
        if (kind == PairKind::IS) p += Eigen::Vector3d(0.5, 0.5, 0.5);
        const double r2 = p.squaredNorm();
        if (r2 < 1e-12 || r2 > r2max) continue;
        pts.push_back(p);
      }
  if (pts.empty())
    throw std::invalid_argument("r_max too small: no complete shell inside the cutoff");

  auto shells = group_shells(std::move(pts));

  const double nn = kind == PairKind::IS ? kZbNN : kFccNN;
  if (shells.front().radius > nn + 1e-9)
    throw std::logic_error("site generation missed the nearest-neighbor shell");
  return shells;
}

double geometric_factor(const Eigen::Vector3d& r, const Eigen::Vector3d& field_dir) {
  const double rn = r.norm();
  if (rn <= 0.0) throw std::invalid_argument("geometric_factor: zero offset vector");
  const double c = r.dot(field_dir) / rn;
  return (1.0 - 3.0 * c * c) / (rn * rn * rn);
}

CouplingTable coupling_table(const LatticeSpec& spec, PairKind kind) {
  CouplingTable table;
  table.spec = spec;
  table.kind = kind;
  table.shells = build_sites(spec, kind);
  for (const auto& shell : table.shells)
    for (const auto& site : shell.sites)
      table.pairs.push_back({site, geometric_factor(site, spec.field_dir), kind, shell.index});
  return table;
}

namespace {

SumResult finalize(SumResult r, double floor_scale) {
  if (!r.shells.empty()) {
    r.value = r.shells.back().partial_sum;
    r.last_increment = r.shells.back().shell_sum;
  }
  r.converged =
      std::abs(r.last_increment) <= r.tolerance * std::max(std::abs(r.value), floor_scale);
  return r;
}

SumResult shell_power_sum(const LatticeSpec& spec, PairKind kind, int n,
                          const std::string& units) {
  const auto shells = build_sites(spec, kind);
  SumResult res;
  res.r_max = spec.r_max;
  res.units = units;
  double acc = 0.0;
  for (const auto& shell : shells) {
    double s = 0.0;
    for (const auto& site : shell.sites) {
      const double g = geometric_factor(site, spec.field_dir);
      double gn = 1.0;
      for (int i = 0; i < n; ++i) gn *= g;
      s += gn;
    }
    acc += s;
    res.shells.push_back({shell.index, shell.radius, static_cast<int>(shell.sites.size()), s, acc});
  }
  return finalize(std::move(res), 1e-3);
}

}  // namespace

SumResult lattice_sum_In(const LatticeSpec& spec, int n) {
  if (n != 2 && n != 3) throw std::invalid_argument("lattice_sum_In: n must be 2 or 3");
  if (spec.structure != Structure::FccSingleSpecies)
    throw std::invalid_argument("lattice_sum_In: homonuclear fcc geometry required");
  return shell_power_sum(spec, PairKind::II, n,
                         n == 2 ? "eps_II^2 (a^-6 geometric)" : "eps_II^3 (a^-9 geometric)");
}

SumResult sum_A_squared(const LatticeSpec& spec) {
  if (spec.structure != Structure::ZincblendeTwoSpecies)
    throw std::invalid_argument("sum_A_squared: zincblende structure required");
  return shell_power_sum(spec, PairKind::IS, 2, "a^-6");
}

std::vector<ShellPartial> plain_sum_by_shell(const LatticeSpec& spec) {
  return shell_power_sum(spec, PairKind::II, 1, "eps_II (a^-3 geometric)").shells;
}

SumResult lattice_sum_K3(const LatticeSpec& spec) {
  if (spec.structure != Structure::FccSingleSpecies)
    throw std::invalid_argument("lattice_sum_K3: homonuclear fcc geometry required");
  const auto shells = build_sites(spec, PairKind::II);

  // flat arrays, shell boundaries remembered
  std::vector<Eigen::Vector3d> sites;
  std::vector<double> u1;       // u(origin -> site)
  std::vector<std::size_t> cut;  // end index of each shell
  for (const auto& shell : shells) {
    for (const auto& s : shell.sites) {
      sites.push_back(s);
      u1.push_back(geometric_factor(s, spec.field_dir));
    }
    cut.push_back(sites.size());
  }

  SumResult res;
  res.r_max = spec.r_max;
  res.units = "eps_II^3 (a^-9 geometric)";
  res.tolerance = 1e-4;

  // grow both loop indices shell by shell; the summand is i<->j symmetric,
  // so each unordered pair is counted once when its larger index enters
  double acc = 0.0;
  std::size_t lo = 0;
  for (std::size_t si = 0; si < cut.size(); ++si) {
    const std::size_t hi = cut[si];
    double pairs = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      double inner = 0.0;
      for (std::size_t k = 0; k < i; ++k)
        inner += geometric_factor(sites[i] - sites[k], spec.field_dir) * u1[k];
      pairs += u1[i] * inner;
    }
    const double delta = 2.0 * pairs;
    acc += delta;
    res.shells.push_back({shells[si].index, shells[si].radius,
                          static_cast<int>(hi - lo), delta, acc});
    lo = hi;
  }
  return finalize(std::move(res), 1e-3);
}

double local_field_BL(double I2, Spin j) {
  return std::sqrt(j.jj() / 4.0 * I2);
}

}  // namespace spinsim::lattice
