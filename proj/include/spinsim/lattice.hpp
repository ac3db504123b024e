#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "spinsim/spin.hpp"

namespace spinsim::lattice {

// Reduced units throughout: lengths in a (conventional cubic cell edge = 2a),
// couplings in eps = (mu0/4pi) hbar^2 gamma_A gamma_B / a^3 for the species
// pair, so the stored pair factors are the bare geometric values
// g = (1 - 3 cos^2 theta)/|r|^3 in a^-3.

enum class Structure { FccSingleSpecies, ZincblendeTwoSpecies };

struct SpeciesSpec {
  std::string name;
  Spin j;
  double gamma = 1.0;  // gyromagnetic ratio, reduced-unit value allowed
  int sublattice = 0;  // {0,1}
};

struct LatticeSpec {
  Structure structure = Structure::FccSingleSpecies;
  Eigen::Vector3d field_dir = Eigen::Vector3d(1, 1, 1).normalized();
  double r_max = 12.0;  // truncation radius, units of a

  void validate() const;  // throws std::invalid_argument
};

// which species pair a site set / coupling refers to
enum class PairKind { II, IS };

struct Shell {
  int index = 0;
  double radius = 0.0;
  std::vector<Eigen::Vector3d> sites;  // lexicographically ordered
};

// All sites with 0 < |r| <= r_max grouped into complete radial shells,
// deterministic ordering. For PairKind::IS the sites are the S-sublattice
// offsets seen from an I site (zincblende only). Throws if r_max does not
// contain one full shell.
std::vector<Shell> build_sites(const LatticeSpec& spec, PairKind kind);

// (1 - 3 cos^2 theta)/|r|^3 with cos theta = r_hat . field_dir. Throws on r = 0.
double geometric_factor(const Eigen::Vector3d& r, const Eigen::Vector3d& field_dir);

struct CouplingEntry {
  Eigen::Vector3d offset;  // units of a
  double g = 0.0;          // geometric factor, a^-3
  PairKind kind = PairKind::II;
  int shell = 0;
};

struct CouplingTable {
  LatticeSpec spec;
  PairKind kind = PairKind::II;
  std::vector<CouplingEntry> pairs;
  std::vector<Shell> shells;
};

CouplingTable coupling_table(const LatticeSpec& spec, PairKind kind);

struct ShellPartial {
  int shell_index;
  double radius;
  int count;
  double shell_sum;
  double partial_sum;
};

struct SumResult {
  double value = 0.0;
  double r_max = 0.0;
  double last_increment = 0.0;  // last complete-shell contribution
  bool converged = false;       // |last_increment| <= tol * max(|value|, floor)
  double tolerance = 1e-4;
  std::string units;
  std::vector<ShellPartial> shells;
};

// I_n = sum_i (u_1i)^n over the homonuclear fcc set (n = 2 or 3), reduced units.
SumResult lattice_sum_In(const LatticeSpec& spec, int n);

// K_3 = sum_{i,j} u_1i u_ij u_j1, both indices within r_max of the reference
// site; accumulated shell by shell (outer and inner sets grown together).
SumResult lattice_sum_K3(const LatticeSpec& spec);

// sum_k (A_ik)^2 over heteronuclear zincblende pairs, a^-6.
SumResult sum_A_squared(const LatticeSpec& spec);

// Local field of Eq-(7) form in reduced energy units: the detuning-equivalent
// scale gamma*hbar*B_L = sqrt(j(j+1)/4 * I2) * eps_II.
double local_field_BL(double I2, Spin j);

// Conditionally convergent plain sum sum_i u_1i: reported shell by shell only,
// never collapsed to a converged scalar (the 1/r^3 tail makes it direction-
// dependent in the infinite-volume limit).
std::vector<ShellPartial> plain_sum_by_shell(const LatticeSpec& spec);

}  // namespace spinsim::lattice
