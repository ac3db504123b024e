#pragma once

#include <string>

#include "spinsim/spin.hpp"

namespace spinsim::semiinv {

// Single-spin Zeeman partition function tr exp(eta*Iz) = sinh(eta(j+1/2))/sinh(eta/2).
// Evaluated as the explicit sum over magnetic levels, which has no removable
// singularity at eta = 0 and no overflow for large |eta|*j (log-sum-exp).
double f_j(double eta, Spin j);
double log_f_j(double eta, Spin j);

// t_j^(n) = f_j^-1 d^n f_j / d eta^n, i.e. the n-th moment <m^n> of the level
// populations exp(eta*m)/f_j. t^(1) is the single-spin magnetization.
double t_n(double eta, Spin j, int n);

// Inverse of p = t^(1)(eta)/j on eta >= 0. Throws for p outside [0, 1).
double eta_for_polarization(double p, Spin j);

// Longitudinal and transverse (time-ordered) semi-invariants at (eta, j),
// together with their eta-derivatives. The derivatives are propagated through
// the recurrence d t^(n)/d eta = t^(n+1) - t^(1) t^(n), which the ADRF solver
// relies on for analytic dG/d eta.
struct SemiInvariantSet {
  double eta = 0.0;
  double t1 = 0, t2 = 0, t3 = 0, t4 = 0;

  // longitudinal M0_1..M0_3
  double M1 = 0, M2 = 0, M3 = 0;
  // second-order transverse: M0_2(+-), M0_2(-+)
  double M2pm = 0, M2mp = 0;
  // third-order transverse: M0_3(z+-) = M0_3(+-z) and M0_3(z-+) = M0_3(-+z)
  double M3zpm = 0, M3zmp = 0;
  // ordered moments <I+ Iz I->, <I- Iz I+> (the combinations
  // M0_3(+z-) + M0_1 M0_2(+-) and M0_3(-z+) + M0_1 M0_2(-+))
  double ord_pzm = 0, ord_mzp = 0;
  // bare M0_3(+z-), M0_3(-z+)
  double M3pzm = 0, M3mzp = 0;

  // eta-derivatives
  double dM2 = 0, dM3 = 0;
  double dM2pm = 0, dM2mp = 0;
  double dM3zpm = 0, dM3zmp = 0;
  double dM3pzm = 0, dM3mzp = 0;
};

SemiInvariantSet semi_invariants(double eta, Spin j);

// Exact thermal average of an ordered operator word over {z,+,-} with weight
// exp(eta*Iz)/f_j, computed by dense (2j+1)-dim matrix products. Test oracle
// for the closed forms above; words up to length 3, e.g. "z+-".
double oracle_moment(double eta, Spin j, const std::string& word);

// Semi-invariants reconstructed from oracle moments by inverting the
// partition decomposition (blocks keep the word order; single +/- blocks
// vanish). Fields mirror SemiInvariantSet values.
struct OracleSet {
  double M1, M2, M3;
  double M2pm, M2mp;
  double M3zpm, M3zmp;
  double ord_pzm, ord_mzp;
};
OracleSet oracle_semi_invariants(double eta, Spin j);

}  // namespace spinsim::semiinv
