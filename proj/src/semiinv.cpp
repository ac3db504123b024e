#include "spinsim/semiinv.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace spinsim::semiinv {

namespace {

// populations p_m = exp(eta*m)/f_j, m = -j..j, normalized via the max exponent
std::vector<double> populations(double eta, Spin j) {
  const int d = j.multiplicity();
  std::vector<double> p(d);
  double wmax = -1e300;
  for (int k = 0; k < d; ++k) {
    const double m = -j.value() + k;
    p[k] = eta * m;
    wmax = std::max(wmax, p[k]);
  }
  double sum = 0.0;
  for (int k = 0; k < d; ++k) {
    p[k] = std::exp(p[k] - wmax);
    sum += p[k];
  }
  for (double& v : p) v /= sum;
  return p;
}

}  // namespace

double log_f_j(double eta, Spin j) {
  const int d = j.multiplicity();
  double wmax = -1e300;
  for (int k = 0; k < d; ++k) wmax = std::max(wmax, eta * (-j.value() + k));
  double sum = 0.0;
  for (int k = 0; k < d; ++k) sum += std::exp(eta * (-j.value() + k) - wmax);
  return wmax + std::log(sum);
}

double f_j(double eta, Spin j) { return std::exp(log_f_j(eta, j)); }

double t_n(double eta, Spin j, int n) {
  if (n < 0) throw std::invalid_argument("t_n: n must be >= 0");
  if (!std::isfinite(eta)) throw std::invalid_argument("t_n: eta not finite");
  if (n == 0) return 1.0;
  const auto p = populations(eta, j);
  double acc = 0.0;
  for (int k = 0; k < j.multiplicity(); ++k) {
    const double m = -j.value() + k;
    double mn = 1.0;
    for (int i = 0; i < n; ++i) mn *= m;
    acc += p[k] * mn;
  }
  return acc;
}

double eta_for_polarization(double p, Spin j) {
  if (p < 0.0 || p >= 1.0)
    throw std::invalid_argument("polarization must lie in [0, 1)");
  if (p == 0.0) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (t_n(hi, j, 1) / j.value() < p) hi *= 2.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (t_n(mid, j, 1) / j.value() < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

SemiInvariantSet semi_invariants(double eta, Spin j) {
  SemiInvariantSet s;
  s.eta = eta;
  const auto p = populations(eta, j);
  double m1 = 0, m2 = 0, m3 = 0, m4 = 0;
  for (int k = 0; k < j.multiplicity(); ++k) {
    const double m = -j.value() + k;
    const double w = p[k];
    m1 += w * m;
    m2 += w * m * m;
    m3 += w * m * m * m;
    m4 += w * m * m * m * m;
  }
  const double t1 = m1, t2 = m2, t3 = m3, t4 = m4;
  s.t1 = t1; s.t2 = t2; s.t3 = t3; s.t4 = t4;
  const double jj = j.jj();

  s.M1 = t1;
  s.M2 = t2 - t1 * t1;
  s.M3 = t3 - 3.0 * t2 * t1 + 2.0 * t1 * t1 * t1;

  s.M2pm = jj + t1 - t2;
  s.M2mp = jj - t1 - t2;
  s.M3zpm = -t1 * t1 + t2 * (1.0 + t1) - t3;
  s.M3zmp = t1 * t1 - t2 * (1.0 - t1) - t3;
  s.ord_pzm = -jj + (jj - 1.0) * t1 + 2.0 * t2 - t3;
  s.ord_mzp = jj + (jj - 1.0) * t1 - 2.0 * t2 - t3;
  s.M3pzm = s.ord_pzm - t1 * s.M2pm;
  s.M3mzp = s.ord_mzp - t1 * s.M2mp;

  // chain rule through dt_n = t_{n+1} - t1 t_n
  const double dt1 = t2 - t1 * t1;
  const double dt2 = t3 - t1 * t2;
  const double dt3 = t4 - t1 * t3;

  s.dM2 = s.M3;  // classic cumulant chain
  s.dM3 = t4 - 4.0 * t1 * t3 - 3.0 * t2 * t2 + 12.0 * t1 * t1 * t2 -
          6.0 * t1 * t1 * t1 * t1;

  s.dM2pm = dt1 - dt2;
  s.dM2mp = -dt1 - dt2;
  s.dM3zpm = -2.0 * t1 * dt1 + dt2 * (1.0 + t1) + t2 * dt1 - dt3;
  s.dM3zmp = 2.0 * t1 * dt1 - dt2 * (1.0 - t1) + t2 * dt1 - dt3;
  const double dord_pzm = (jj - 1.0) * dt1 + 2.0 * dt2 - dt3;
  const double dord_mzp = (jj - 1.0) * dt1 - 2.0 * dt2 - dt3;
  s.dM3pzm = dord_pzm - dt1 * s.M2pm - t1 * s.dM2pm;
  s.dM3mzp = dord_mzp - dt1 * s.M2mp - t1 * s.dM2mp;
  return s;
}

// ---------------------------------------------------------------------------
// trace oracle
// ---------------------------------------------------------------------------

namespace {

Eigen::MatrixXd op_matrix(char which, Spin j) {
  const int d = j.multiplicity();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d, d);
  // basis ordered m = -j..j
  for (int k = 0; k < d; ++k) {
    const double m = -j.value() + k;
    switch (which) {
      case 'z':
        M(k, k) = m;
        break;
      case '+':  // |m> -> sqrt(j(j+1)-m(m+1)) |m+1>
        if (k + 1 < d) M(k + 1, k) = std::sqrt(j.jj() - m * (m + 1.0));
        break;
      case '-':
        if (k - 1 >= 0) M(k - 1, k) = std::sqrt(j.jj() - m * (m - 1.0));
        break;
      default:
        throw std::invalid_argument("oracle word may only contain z, +, -");
    }
  }
  return M;
}

}  // namespace

double oracle_moment(double eta, Spin j, const std::string& word) {
  const int d = j.multiplicity();
  Eigen::MatrixXd prod = Eigen::MatrixXd::Identity(d, d);
  for (char c : word) prod = prod * op_matrix(c, j);
  const auto p = populations(eta, j);
  double acc = 0.0;
  for (int k = 0; k < d; ++k) acc += p[k] * prod(k, k);
  return acc;
}

OracleSet oracle_semi_invariants(double eta, Spin j) {
  OracleSet o;
  const double z1 = oracle_moment(eta, j, "z");
  const double z2 = oracle_moment(eta, j, "zz");
  const double z3 = oracle_moment(eta, j, "zzz");
  o.M1 = z1;
  o.M2 = z2 - z1 * z1;
  o.M3 = z3 - 3.0 * o.M2 * z1 - z1 * z1 * z1;

  // words with unbalanced ladder content have vanishing single-operator
  // blocks, so the ordered partition inversion only subtracts z-blocks
  o.M2pm = oracle_moment(eta, j, "+-");
  o.M2mp = oracle_moment(eta, j, "-+");
  o.M3zpm = oracle_moment(eta, j, "z+-") - z1 * o.M2pm;
  o.M3zmp = oracle_moment(eta, j, "z-+") - z1 * o.M2mp;
  o.ord_pzm = oracle_moment(eta, j, "+z-");
  o.ord_mzp = oracle_moment(eta, j, "-z+");
  return o;
}

}  // namespace spinsim::semiinv
