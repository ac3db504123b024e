#include "spinsim/hte.hpp"

#include <cmath>
#include <stdexcept>

#include "spinsim/semiinv.hpp"

namespace spinsim::hte {

using semiinv::SemiInvariantSet;

const char* order_name(Order o) {
  switch (o) {
    case Order::HighT: return "highT";
    case Order::G1: return "G1";
    case Order::G1G2: return "G1+G2";
  }
  return "?";
}

Order order_from_name(const std::string& s) {
  if (s == "highT" || s == "hight") return Order::HighT;
  if (s == "G1" || s == "g1") return Order::G1;
  if (s == "G1+G2" || s == "g1+g2" || s == "G1G2") return Order::G1G2;
  throw std::invalid_argument("unknown order '" + s + "' (highT|G1|G1+G2)");
}

namespace {

double g1_from(const SemiInvariantSet& s, double I2) {
  return -0.5 * (s.M2 * s.M2 + 0.125 * s.M2pm * s.M2mp) * I2;
}

double g2_from(const SemiInvariantSet& s, double I3, double K3) {
  return 0.5 * (0.5 * s.M3 * s.M3 * I3
                + (1.0 / 16.0) * s.M3zpm * s.M3zmp * I3
                + s.M2 * s.M2 * s.M2 * K3
                + (1.0 / 16.0) * (s.M3pzm * s.M3mzp + s.M3zpm * s.M3zmp) * I3
                - (1.0 / 64.0) * s.M2pm * s.M2mp * (s.M2pm + s.M2mp) * K3);
}

double dg1_from(const SemiInvariantSet& s, double I2) {
  return -0.5 * (2.0 * s.M2 * s.dM2
                 + 0.125 * (s.dM2pm * s.M2mp + s.M2pm * s.dM2mp)) * I2;
}

double dg2_from(const SemiInvariantSet& s, double I3, double K3) {
  const double d_M3sq = 2.0 * s.M3 * s.dM3;
  const double d_zz = s.dM3zpm * s.M3zmp + s.M3zpm * s.dM3zmp;
  const double d_M2cu = 3.0 * s.M2 * s.M2 * s.dM2;
  const double d_mid = s.dM3pzm * s.M3mzp + s.M3pzm * s.dM3mzp + d_zz;
  const double d_tail = s.dM2pm * s.M2mp * (s.M2pm + s.M2mp)
                        + s.M2pm * s.dM2mp * (s.M2pm + s.M2mp)
                        + s.M2pm * s.M2mp * (s.dM2pm + s.dM2mp);
  return 0.5 * (0.5 * d_M3sq * I3
                + (1.0 / 16.0) * d_zz * I3
                + d_M2cu * K3
                + (1.0 / 16.0) * d_mid * I3
                - (1.0 / 64.0) * d_tail * K3);
}

}  // namespace

double G1(double eta, Spin j, double I2) {
  return g1_from(semiinv::semi_invariants(eta, j), I2);
}

double G2(double eta, Spin j, double I3, double K3) {
  return g2_from(semiinv::semi_invariants(eta, j), I3, K3);
}

double dG1_deta(double eta, Spin j, double I2) {
  return dg1_from(semiinv::semi_invariants(eta, j), I2);
}

double dG2_deta(double eta, Spin j, double I3, double K3) {
  return dg2_from(semiinv::semi_invariants(eta, j), I3, K3);
}

ThermoState evaluate(double beta, double beta0, double delta, Spin j,
                     const LatticeInputs& sums, Order order) {
  ThermoState st;
  st.beta = beta;
  st.beta0 = beta0;
  st.delta = delta;
  st.eta = -beta0 * delta;
  st.order = order;
  const double jj = j.jj();

  if (order == Order::HighT) {
    // quadratic expansions of every quantity; consistent with the entropy
    // assembly identity S = -eta*pol + beta*E + lnZ
    const double dl2 = jj / 4.0 * sums.I2;  // (gamma hbar B_L)^2
    st.polarization = st.eta * jj / 3.0;
    st.energy = -beta * jj * jj / 12.0 * sums.I2;
    st.log_partition = std::log(j.multiplicity())
                       + st.eta * st.eta * jj / 6.0
                       + beta * beta * jj * jj / 24.0 * sums.I2;
    st.entropy = std::log(j.multiplicity())
                 - beta0 * beta0 * delta * delta * jj / 6.0
                 - beta * beta * jj / 6.0 * dl2;
    return st;
  }

  const auto s = semiinv::semi_invariants(st.eta, j);
  const double g1 = g1_from(s, sums.I2);
  const double dg1 = dg1_from(s, sums.I2);
  double g2 = 0.0, dg2 = 0.0;
  if (order == Order::G1G2) {
    g2 = g2_from(s, sums.I3, sums.K3);
    dg2 = dg2_from(s, sums.I3, sums.K3);
  }
  const double b2 = beta * beta, b3 = b2 * beta;

  st.energy = beta * g1 + b2 * g2;
  st.log_partition = semiinv::log_f_j(st.eta, j) - b2 / 2.0 * g1 - b3 / 3.0 * g2;
  st.polarization = s.t1 - b2 / 2.0 * dg1 - b3 / 3.0 * dg2;
  st.entropy = -st.eta * s.t1 + semiinv::log_f_j(st.eta, j)
               + b2 / 2.0 * (g1 + st.eta * dg1)
               + b3 / 3.0 * (2.0 * g2 + st.eta * dg2);
  return st;
}

double entropy(double beta, double delta, Spin j, const LatticeInputs& sums, Order order) {
  return evaluate(beta, beta, delta, j, sums, order).entropy;
}

double tc_susceptibility(Spin j, double BL_energy) {
  if (!(BL_energy > 0.0)) throw std::invalid_argument("tc_susceptibility: B_L must be > 0");
  const double jv = j.value();
  return BL_energy * std::sqrt((33.0 + 56.0 * jv + 56.0 * jv * jv) / 180.0);
}

}  // namespace spinsim::hte
