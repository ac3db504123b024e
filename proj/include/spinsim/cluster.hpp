#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "spinsim/aht.hpp"
#include "spinsim/spin.hpp"

namespace spinsim::cluster {

// Explicit small spin cluster used as the exact-trace / exact-propagation
// oracle. The coupling table may be synthetic (not derived from positions):
// same-species entries are secular u couplings, cross-species entries are
// Ising w couplings.
struct ClusterSpec {
  std::vector<int> species;       // 0 = I, 1 = S, one per site
  Spin spin_I{0.5}, spin_S{0.5};
  Eigen::MatrixXd couplings;      // symmetric, zero diagonal
  double delta_I = 0.0, delta_S = 0.0;
  long dim_cap = 4096;

  long hilbert_dim() const;
  void validate() const;  // throws on cap excess / asymmetric couplings
  Spin spin_of(int site) const { return species[site] == 0 ? spin_I : spin_S; }
};

using Matrix = Eigen::MatrixXcd;

// Site operator embedded in the full product space; which in {'x','y','z','+','-'}.
Matrix site_operator(const ClusterSpec& spec, int site, char which);

// H' (couplings only): sum over unordered same-species pairs of
// u (IzIz - 1/2 IxIx - 1/2 IyIy)-form secular terms plus cross-species w IzSz.
Matrix coupling_hamiltonian(const ClusterSpec& spec);
// H_Z = delta_I sum Iz + delta_S sum Sz.
Matrix zeeman_hamiltonian(const ClusterSpec& spec);
// H = H_Z + H'.
Matrix build_hamiltonian(const ClusterSpec& spec);

struct Thermal {
  double energy = 0.0;         // <H'>/n_sites
  double log_partition = 0.0;  // ln Z / n_sites
  double entropy = 0.0;        // S/(n_sites kB)
  double polarization = 0.0;   // <sum Iz>/n_sites (all sites)
};

// Exact dense trace with the two-temperature weight exp(-beta0 H_Z - beta H').
Thermal exact_thermal(const ClusterSpec& spec, double beta, double beta0);

// Entropy recomputed as -tr(rho ln rho) from the eigen-decomposition
// (independent route for the thermal-oracle consistency check).
double entropy_from_rho(const ClusterSpec& spec, double beta, double beta0);

// Stroboscopic propagator for n_cycles of the pulse sequence: exact
// exponentials per delay, exact rotations per pulse.
Matrix propagate(const ClusterSpec& spec, const aht::PulseSequence& seq, int n_cycles);

// First-order average Hamiltonian of the full H under the cycle (toggled
// detunings + cycle-averaged couplings), for comparison with propagate.
Matrix average_hamiltonian(const ClusterSpec& spec, const aht::PulseSequence& seq);

struct LadderRow {
  double t_c = 0.0;
  int n_cycles = 0;
  double error = 0.0;  // Frobenius norm of U_strobo - exp(-i Hbar T)
};

struct LadderResult {
  std::vector<LadderRow> rows;
  double fitted_order = 0.0;  // least-squares slope of log error vs log t_c
  bool exact = false;         // all errors below the numerical floor (1e-12)
  double total_time = 0.0;
};

// Halve t_c n_halvings times at fixed total evolution time (n_cycles doubles);
// fits the convergence order of the stroboscopic propagator toward the
// average-Hamiltonian propagator.
LadderResult compare_propagators(const ClusterSpec& spec, const aht::PulseSequence& seq,
                                 int n_halvings);

// 4-spin single-species cluster with fcc(111)-derived geometric couplings
// arranged in the centrosymmetric zero-row-sum pattern u12=u34, u13=u24,
// u14=u23=-(u12+u13) (the pattern the unrestricted-sum series assumes).
ClusterSpec fcc_four_site(Spin j, double delta);

// n_I spins I and n_S spins S on a small zincblende fragment with geometric
// couplings under the given field direction.
ClusterSpec zincblende_fragment(int n_I, int n_S, Spin spin_I, Spin spin_S,
                                const Eigen::Vector3d& field_dir,
                                double delta_I = 0.0, double delta_S = 0.0);

}  // namespace spinsim::cluster
