#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "spinsim/lattice.hpp"
#include "spinsim/spin.hpp"

namespace spinsim::meanfield {

// Heteronuclear offset table (complete shells) used by the lattice Fourier
// transform. Gauge/phase origin is an I site; only |A(k)| feeds physics.
struct OffsetTable {
  std::vector<Eigen::Vector3d> delta;  // units of a
  std::vector<double> A;               // geometric factors, a^-3
  std::vector<int> shell_start;        // index of first offset of each shell
  double r_max = 0.0;
};

OffsetTable heteronuclear_offsets(const lattice::LatticeSpec& spec);

struct FourierValue {
  std::complex<double> A{0.0, 0.0};
  double abs = 0.0;
  double last_increment = 0.0;  // |A| change from the last complete shell
  bool converged = false;
};

// A(k) = sum_delta A(delta) exp(+i k . delta), shell-truncated. The sum is
// only conditionally convergent, so the last-shell increment is always
// reported; tol is relative to |A|.
FourierValue fourier_A(const OffsetTable& table, const Eigen::Vector3d& k,
                       double tol = 1e-2);

struct ScanPoint {
  Eigen::Vector3d k;
  double absA = 0.0;
};

struct FourierScan {
  int grid_n = 0;
  Eigen::Vector3d k0 = Eigen::Vector3d::Zero();  // argmax, reduced to the first BZ
  double A0 = 0.0;                               // |A(k0)|
  std::vector<Eigen::Vector3d> star;             // tied maxima (deduped mod G, +-k)
  bool small_k_max = false;  // max at |k| below the grid spacing: ferromagnet-with-domains caveat
  std::vector<ScanPoint> grid;  // retained when requested (CSV dump)
};

// Uniform Monkhorst-style grid over the covering cube [-pi/a, pi/a]^3 followed
// by coordinate-descent golden-section refinement around the best cells.
FourierScan scan_bz(const OffsetTable& table, int grid_density, bool keep_grid = false);

// Reduce k modulo the reciprocal lattice of the fcc sublattice into the first
// Brillouin zone (Wigner-Seitz cell, bcc reciprocal lattice of cube 2pi/a).
Eigen::Vector3d reduce_to_bz(const Eigen::Vector3d& k);

// kB Tc = sqrt(I(I+1) S(S+1))/3 * c gI gS |A(k0)|, reduced units where
// c gI gS = (1/3) gI gS * (mu0/4pi) hbar^2 / a^3.
double transition_temperature(Spin I, Spin S, double gamma_I, double gamma_S, double A0);

enum class Pumping { CommonBeta, Optical };

struct CriticalPolarization {
  double p_I = 0.0, p_S = 0.0;
  double kappa_I = 0.0, kappa_S = 0.0;  // beta_s gamma_s hbar B0 at criticality
  double critical_entropy_pair = 0.0;   // per I-S site pair, units kB
  double entropy_deficit = 0.0;         // ln(2I+1)(2S+1) - critical entropy
};

// Matches the pre-sweep Zeeman entropy (high-temperature quadratic form) to
// the critical entropy of the Heisenberg phase under the pumping constraint
// (common-beta: beta_I = beta_S, i.e. kappa_I/kappa_S = gamma_I/gamma_S;
// optical: beta_I gamma_I = beta_S gamma_S, i.e. kappa_I = kappa_S), then maps
// kappa to polarization through the exact single-spin t^(1).
CriticalPolarization critical_polarization(Spin I, Spin S, double gamma_I, double gamma_S,
                                           double sumA2, double A0, Pumping pumping);

// beta'_I/beta'_S from the sqrt(2) entropy-invariance relation at the
// equilibration point; 1 under optical-pumping inputs. Sets *warn when the
// frequency-matching condition gI(B0-wI/gI) = gS(B0-wS/gS) is violated.
double equilibration_ratio(double beta_I, double beta_S, double gamma_I, double gamma_S,
                           double omega_I, double omega_S, double B0,
                           bool* warn = nullptr, double match_tol = 1e-6);

struct MeanFieldResult {
  Eigen::Vector3d k0;
  double A0 = 0.0;
  double sumA2 = 0.0;
  double kBTc = 0.0;       // reduced energy (mu0/4pi) hbar^2 gI gS / a^3
  double lambda_I = 0.0;   // (beta_c I(I+1)/3)^-1
  double lambda_S = 0.0;
  CriticalPolarization critical;
  bool sums_converged = true;
  bool small_k_max = false;
  std::string note;  // classical-spin mean-field caveat
};

MeanFieldResult analyze(const lattice::LatticeSpec& spec, Spin I, Spin S,
                        double gamma_I, double gamma_S, Pumping pumping,
                        int grid_density = 24);

}  // namespace spinsim::meanfield
