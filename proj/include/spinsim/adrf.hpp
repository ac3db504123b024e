#pragma once

#include <string>
#include <vector>

#include "spinsim/hte.hpp"
#include "spinsim/spin.hpp"

namespace spinsim::adrf {

// Entropy per spin of the initial high-field Zeeman state at polarization p,
// from the exact single-spin inversion t^(1)(eta)/j = p. Throws for p >= 1.
double initial_entropy(double p, Spin j);

// High-temperature variant: the quadratic form ln(2j+1) - eta^2 j(j+1)/6
// with the same exact eta(p) map (the mixed convention used by the mean-field
// critical-polarization bookkeeping).
double initial_entropy_high_t(double p, Spin j);

struct SolveResult {
  double beta = 0.0;
  bool converged = false;
  double entropy_error = 0.0;  // |S(beta) - S_target| at the returned root
  std::string note;
};

// Root of S(beta; beta0=beta, delta) = S_target with beta > 0, restricted to
// the maximal interval [0, beta_turn) on which the truncated series entropy
// is decreasing. Returns converged=false when the entropy turns non-monotone
// before reaching S_target (series breakdown near resonance).
SolveResult solve_beta(double S_target, double delta, Spin j,
                       const hte::LatticeInputs& sums, hte::Order order,
                       double beta_hint = 0.0);

struct Point {
  double delta_over_BL = 0.0;
  double T_over_Tc = 0.0;
  double beta = 0.0;
  bool converged = false;
};

struct Curve {
  double p = 0.0;
  double spin = 0.0;
  hte::Order order = hte::Order::G1G2;
  double S_target = 0.0;
  double BL = 0.0;   // gamma hbar B_L, reduced energy
  double kTc = 0.0;  // susceptibility-zero scale used for T/Tc
  std::vector<Point> points;
  bool all_converged = true;
};

// Default grid: n points, geometric from 10 B_L down to 0.01 B_L plus a final
// exact zero (log spacing cannot reach 0).
std::vector<double> default_grid(double BL, int n = 200);

// Constant-entropy sweep over a descending detuning grid, warm-starting each
// solve from the previous point.
Curve sweep(double p, Spin j, const hte::LatticeInputs& sums,
            const std::vector<double>& delta_grid, hte::Order order);

}  // namespace spinsim::adrf
