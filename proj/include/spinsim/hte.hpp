#pragma once

#include <string>

#include "spinsim/spin.hpp"

namespace spinsim::hte {

// Truncation order of the dipolar expansion. Explicit everywhere; outputs
// carry it.
enum class Order { HighT, G1, G1G2 };

const char* order_name(Order o);
Order order_from_name(const std::string& s);

// Lattice sums in reduced units (couplings in eps_II = (mu0/4pi) hbar^2
// gamma_I^2 / a^3, lengths in a).
struct LatticeInputs {
  double I2 = 0.0;
  double I3 = 0.0;
  double K3 = 0.0;
};

// Coefficients of the dipolar energy series <H'_D>/N = beta*G1 + beta^2*G2.
// Sign convention fixed against exact cluster traces: G1 = d<H'>/dbeta|0,
// 2*G2 = d^2<H'>/dbeta^2|0 (both at fixed eta).
double G1(double eta, Spin j, double I2);
double G2(double eta, Spin j, double I3, double K3);
double dG1_deta(double eta, Spin j, double I2);
double dG2_deta(double eta, Spin j, double I3, double K3);

struct ThermoState {
  double beta = 0.0;   // dipolar inverse temperature, 1/eps_II
  double beta0 = 0.0;  // Zeeman inverse temperature
  double delta = 0.0;  // detuning hbar(gamma B0 - omega1), eps_II
  double eta = 0.0;    // -beta0 * delta
  Order order = Order::G1G2;
  double energy = 0.0;         // <H'_D>/N
  double log_partition = 0.0;  // ln Z / N
  double entropy = 0.0;        // S/(N kB)
  double polarization = 0.0;   // <I^z>/N
};

// Evaluates all thermodynamic quantities at the given truncation order.
// Order::HighT uses the quadratic forms (entropy per the local-field formula
// with (gamma hbar B_L)^2 = j(j+1)/4 * I2); G-orders use the semi-invariant
// series with eta = -beta0*delta.
ThermoState evaluate(double beta, double beta0, double delta, Spin j,
                     const LatticeInputs& sums, Order order);

// Entropy with beta0 = beta enforced (the ADRF constraint).
double entropy(double beta, double delta, Spin j, const LatticeInputs& sums, Order order);

// Susceptibility-zero estimate of the ordering temperature: the root of
// 180 - (33 + 56 j + 56 j^2) beta^2 (gamma hbar B_L)^2 = 0, i.e.
// kB Tc = gamma hbar B_L sqrt((33 + 56 j + 56 j^2)/180). BL_energy is
// gamma*hbar*B_L in reduced energy units; returns kB*Tc in the same units.
double tc_susceptibility(Spin j, double BL_energy);

}  // namespace spinsim::hte
