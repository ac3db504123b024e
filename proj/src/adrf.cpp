#include "spinsim/adrf.hpp"

#include <cmath>
#include <stdexcept>

#include "spinsim/lattice.hpp"
#include "spinsim/semiinv.hpp"

namespace spinsim::adrf {

double initial_entropy(double p, Spin j) {
  const double eta = semiinv::eta_for_polarization(p, j);
  return -eta * semiinv::t_n(eta, j, 1) + semiinv::log_f_j(eta, j);
}

double initial_entropy_high_t(double p, Spin j) {
  const double eta = semiinv::eta_for_polarization(p, j);
  return std::log(j.multiplicity()) - eta * eta * j.jj() / 6.0;
}

SolveResult solve_beta(double S_target, double delta, Spin j,
                       const hte::LatticeInputs& sums, hte::Order order,
                       double beta_hint) {
  const double S0 = std::log(j.multiplicity());
  if (!(S_target > 0.0) || S_target > S0 + 1e-12)
    throw std::invalid_argument("solve_beta: S_target must lie in (0, ln(2j+1)]");

  SolveResult out;
  if (S_target >= S0 - 1e-15) {
    out.beta = 0.0;
    out.converged = true;
    return out;
  }

  auto S = [&](double b) { return hte::entropy(b, delta, j, sums, order); };

  // march beta upward geometrically; stop at the bracket or at loss of
  // monotonicity (the truncated series turning around before the target)
  double b_lo = 0.0, s_lo = S0;
  double b = beta_hint > 0.0 ? beta_hint * 0.25 : 1e-8;
  constexpr double kGrow = 1.04;
  bool bracketed = false;
  for (int it = 0; it < 4000; ++it) {
    const double s = S(b);
    if (s > s_lo + 1e-13) {
      out.converged = false;
      out.beta = b_lo;
      out.note = "entropy non-monotone at beta=" + std::to_string(b) +
                 " before reaching target (series breakdown)";
      return out;
    }
    if (s <= S_target) {
      bracketed = true;
      break;
    }
    b_lo = b;
    s_lo = s;
    b *= kGrow;
  }
  if (!bracketed) {
    out.converged = false;
    out.note = "no bracket found below beta=" + std::to_string(b);
    return out;
  }

  double lo = b_lo, hi = b;
  for (int it = 0; it < 200 && (hi - lo) > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (S(mid) > S_target ? lo : hi) = mid;
  }
  out.beta = 0.5 * (lo + hi);
  out.converged = true;
  out.entropy_error = std::abs(S(out.beta) - S_target);
  return out;
}

std::vector<double> default_grid(double BL, int n) {
  if (n < 2) throw std::invalid_argument("default_grid: need at least 2 points");
  std::vector<double> g;
  g.reserve(n);
  const double top = 10.0 * BL, bottom = 0.01 * BL;
  const double ratio = std::pow(bottom / top, 1.0 / (n - 2));
  double d = top;
  for (int i = 0; i < n - 1; ++i, d *= ratio) g.push_back(d);
  g.push_back(0.0);
  return g;
}

Curve sweep(double p, Spin j, const hte::LatticeInputs& sums,
            const std::vector<double>& delta_grid, hte::Order order) {
  Curve curve;
  curve.p = p;
  curve.spin = j.value();
  curve.order = order;
  curve.S_target = initial_entropy(p, j);
  curve.BL = lattice::local_field_BL(sums.I2, j);
  curve.kTc = hte::tc_susceptibility(j, curve.BL);

  double hint = 0.0;
  for (double delta : delta_grid) {
    const auto r = solve_beta(curve.S_target, delta, j, sums, order, hint);
    Point pt;
    pt.delta_over_BL = delta / curve.BL;
    pt.converged = r.converged;
    pt.beta = r.converged ? r.beta : 0.0;
    pt.T_over_Tc = r.converged ? 1.0 / (r.beta * curve.kTc) : 0.0;
    if (r.converged) hint = r.beta;
    else curve.all_converged = false;
    curve.points.push_back(pt);
  }
  return curve;
}

}  // namespace spinsim::adrf
