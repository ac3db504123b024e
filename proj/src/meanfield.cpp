#include "spinsim/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spinsim/semiinv.hpp"
#include "spinsim/util.hpp"

namespace spinsim::meanfield {

namespace {
constexpr double kPi = 3.141592653589793238462643;
}

OffsetTable heteronuclear_offsets(const lattice::LatticeSpec& spec) {
  const auto shells = lattice::build_sites(spec, lattice::PairKind::IS);
  OffsetTable t;
  t.r_max = spec.r_max;
  for (const auto& shell : shells) {
    t.shell_start.push_back(static_cast<int>(t.delta.size()));
    for (const auto& d : shell.sites) {
      t.delta.push_back(d);
      t.A.push_back(lattice::geometric_factor(d, spec.field_dir));
    }
  }
  return t;
}

FourierValue fourier_A(const OffsetTable& table, const Eigen::Vector3d& k, double tol) {
  FourierValue out;
  std::complex<double> acc{0.0, 0.0};
  double prev_abs = 0.0;
  const std::size_t n_shells = table.shell_start.size();
  for (std::size_t s = 0; s < n_shells; ++s) {
    const std::size_t lo = table.shell_start[s];
    const std::size_t hi = s + 1 < n_shells ? table.shell_start[s + 1] : table.delta.size();
    for (std::size_t i = lo; i < hi; ++i) {
      const double ph = k.dot(table.delta[i]);
      acc += table.A[i] * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    out.last_increment = std::abs(acc) - prev_abs;
    prev_abs = std::abs(acc);
  }
  out.A = acc;
  out.abs = std::abs(acc);
  out.converged = std::abs(out.last_increment) <= tol * std::max(out.abs, 1e-6);
  return out;
}

Eigen::Vector3d reduce_to_bz(const Eigen::Vector3d& k) {
  // reciprocal lattice of the fcc sublattice: bcc with cube edge 2pi/a
  Eigen::Vector3d best = k;
  double bestn = k.squaredNorm();
  for (int h = -2; h <= 2; ++h)
    for (int l = -2; l <= 2; ++l)
      for (int m = -2; m <= 2; ++m) {
        // G = pi/a * (h+l+m odd excluded): bcc sites are all-integer (2pi/a)
        // multiples plus the body center pi/a(1,1,1)-type: equivalently
        // pi/a*(h,l,m) with h,l,m all even or all odd
        const bool all_even = (h % 2 == 0) && (l % 2 == 0) && (m % 2 == 0);
        const bool all_odd = (h % 2 != 0) && (l % 2 != 0) && (m % 2 != 0);
        if (!all_even && !all_odd) continue;
        const Eigen::Vector3d cand = k - kPi * Eigen::Vector3d(h, l, m);
        if (cand.squaredNorm() < bestn - 1e-12) {
          bestn = cand.squaredNorm();
          best = cand;
        }
      }
  return best;
}

namespace {

// golden-section line maximization of |A| along one axis
double line_max(const OffsetTable& table, Eigen::Vector3d& k, int axis, double halfwidth) {
  const double gr = 0.6180339887498949;
  double a = k(axis) - halfwidth, b = k(axis) + halfwidth;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  auto eval = [&](double x) {
    Eigen::Vector3d q = k;
    q(axis) = x;
    return fourier_A(table, q).abs;
  };
  double f1 = eval(x1), f2 = eval(x2);
  for (int it = 0; it < 60 && (b - a) > 1e-10; ++it) {
    if (f1 < f2) {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + gr * (b - a); f2 = eval(x2);
    } else {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - gr * (b - a); f1 = eval(x1);
    }
  }
  k(axis) = 0.5 * (a + b);
  return eval(k(axis));
}

struct Refined {
  Eigen::Vector3d k;
  double absA;
};

Refined refine(const OffsetTable& table, Eigen::Vector3d k, double halfwidth) {
  double best = fourier_A(table, k).abs;
  for (int sweep = 0; sweep < 8; ++sweep) {
    for (int axis = 0; axis < 3; ++axis) best = line_max(table, k, axis, halfwidth);
    halfwidth *= 0.5;
  }
  return {k, best};
}

}  // namespace

FourierScan scan_bz(const OffsetTable& table, int grid_density, bool keep_grid) {
  if (grid_density < 2) throw std::invalid_argument("scan_bz: grid density must be >= 2");
  FourierScan scan;
  scan.grid_n = grid_density;
  const int n = grid_density;
  const double step = 2.0 * kPi / n;

  std::vector<double> abs_grid(static_cast<std::size_t>(n) * n * n);
  util::parallel_for(abs_grid.size(), [&](std::size_t idx) {
    const int iz = static_cast<int>(idx % n);
    const int iy = static_cast<int>((idx / n) % n);
    const int ix = static_cast<int>(idx / (static_cast<std::size_t>(n) * n));
    const Eigen::Vector3d k(-kPi + (ix + 0.5) * step, -kPi + (iy + 0.5) * step,
                            -kPi + (iz + 0.5) * step);
    abs_grid[idx] = fourier_A(table, k).abs;
  });

  auto k_of = [&](std::size_t idx) {
    const int iz = static_cast<int>(idx % n);
    const int iy = static_cast<int>((idx / n) % n);
    const int ix = static_cast<int>(idx / (static_cast<std::size_t>(n) * n));
    return Eigen::Vector3d(-kPi + (ix + 0.5) * step, -kPi + (iy + 0.5) * step,
                           -kPi + (iz + 0.5) * step);
  };

  if (keep_grid) {
    scan.grid.reserve(abs_grid.size());
    for (std::size_t i = 0; i < abs_grid.size(); ++i)
      scan.grid.push_back({k_of(i), abs_grid[i]});
  }

  const double gmax = *std::max_element(abs_grid.begin(), abs_grid.end());

  // refine every grid cell within 2% of the grid max, then dedupe
  std::vector<Refined> candidates;
  for (std::size_t i = 0; i < abs_grid.size(); ++i)
    if (abs_grid[i] >= 0.98 * gmax) candidates.push_back(refine(table, k_of(i), step));

  double best = 0.0;
  for (const auto& c : candidates) best = std::max(best, c.absA);

  auto canonical = [&](Eigen::Vector3d k) {
    k = reduce_to_bz(k);
    // |A(k)| = |A(-k)|: canonicalize the sign lexicographically
    const Eigen::Vector3d neg = -k;
    for (int a = 0; a < 3; ++a) {
      if (std::abs(k(a) - neg(a)) > 1e-7) return k(a) > neg(a) ? k : neg;
    }
    return k;
  };

  for (const auto& c : candidates) {
    if (c.absA < best * (1.0 - 1e-6)) continue;
    const Eigen::Vector3d k = canonical(c.k);
    bool dup = false;
    for (const auto& s : scan.star) {
      if ((s - k).norm() < 1e-5) { dup = true; break; }
      // members of the star can also coincide modulo a reciprocal vector
      if ((reduce_to_bz(s - k)).norm() < 1e-5) { dup = true; break; }
    }
    if (!dup) scan.star.push_back(k);
    if (c.absA >= best * (1.0 - 1e-12)) {
      scan.k0 = k;
      scan.A0 = c.absA;
    }
  }
  scan.small_k_max = scan.k0.norm() < step;
  return scan;
}

double transition_temperature(Spin I, Spin S, double gamma_I, double gamma_S, double A0) {
  if (A0 < 0.0) throw std::invalid_argument("transition_temperature: A0 must be >= 0");
  return std::sqrt(I.jj() * S.jj()) / 3.0 * (gamma_I * gamma_S / 3.0) * A0;
}

CriticalPolarization critical_polarization(Spin I, Spin S, double gamma_I, double gamma_S,
                                           double sumA2, double A0, Pumping pumping) {
  if (!(A0 > 0.0)) throw std::invalid_argument("critical_polarization: A0 must be > 0");
  CriticalPolarization out;

  // entropy deficit of the Heisenberg phase at beta_c; the spins and gammas
  // cancel against beta_c^2, leaving pure geometry
  out.entropy_deficit = 1.5 * sumA2 / (A0 * A0);
  const double ln_top = std::log(I.multiplicity()) + std::log(S.multiplicity());
  out.critical_entropy_pair = ln_top - out.entropy_deficit;
  if (out.critical_entropy_pair <= 0.0)
    throw std::runtime_error("critical entropy exceeds the infinite-temperature value: "
                             "already ordered at infinite temperature");

  // pre-sweep Zeeman deficit: 1/2 kappa_I^2 I(I+1)/3 + 1/2 kappa_S^2 S(S+1)/3
  // with kappa_I = rho * kappa_S
  const double rho = pumping == Pumping::Optical ? 1.0 : gamma_I / gamma_S;
  const double quad = 0.5 * (rho * rho * I.jj() + S.jj()) / 3.0;
  const double kappa_S = std::sqrt(out.entropy_deficit / quad);
  out.kappa_S = kappa_S;
  out.kappa_I = rho * kappa_S;
  out.p_I = semiinv::t_n(out.kappa_I, I, 1) / I.value();
  out.p_S = semiinv::t_n(out.kappa_S, S, 1) / S.value();
  return out;
}

double equilibration_ratio(double beta_I, double beta_S, double gamma_I, double gamma_S,
                           double omega_I, double omega_S, double B0,
                           bool* warn, double match_tol) {
  const double eff_I = B0 - omega_I / gamma_I;
  const double eff_S = B0 - omega_S / gamma_S;
  if (eff_I == 0.0 || eff_S == 0.0)
    throw std::invalid_argument("equilibration_ratio: zero effective field");
  const double match = std::abs(gamma_I * eff_I - gamma_S * eff_S) /
                       std::max(std::abs(gamma_I * eff_I), std::abs(gamma_S * eff_S));
  if (warn) *warn = match > match_tol;
  // beta'_s (B0 - omega_s/gamma_s) sqrt(2) = beta_s B0
  const double bpI = beta_I * B0 / (eff_I * std::sqrt(2.0));
  const double bpS = beta_S * B0 / (eff_S * std::sqrt(2.0));
  return bpI / bpS;
}

MeanFieldResult analyze(const lattice::LatticeSpec& spec, Spin I, Spin S,
                        double gamma_I, double gamma_S, Pumping pumping,
                        int grid_density) {
  MeanFieldResult res;
  const auto table = heteronuclear_offsets(spec);
  const auto scan = scan_bz(table, grid_density);
  const auto a2 = lattice::sum_A_squared(spec);

  res.k0 = scan.k0;
  res.A0 = scan.A0;
  res.small_k_max = scan.small_k_max;
  res.sumA2 = a2.value;
  res.sums_converged = a2.converged && fourier_A(table, scan.k0).converged;
  res.kBTc = transition_temperature(I, S, gamma_I, gamma_S, scan.A0);
  const double beta_c = 1.0 / res.kBTc;
  res.lambda_I = 3.0 / (beta_c * I.jj());
  res.lambda_S = 3.0 / (beta_c * S.jj());
  res.critical = critical_polarization(I, S, gamma_I, gamma_S, a2.value, scan.A0, pumping);
  res.note = "mean-field transition temperature valid for classical spins only";
  return res;
}

}  // namespace spinsim::meanfield
