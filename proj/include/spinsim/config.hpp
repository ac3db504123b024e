#pragma once

#include <Eigen/Dense>
#include <string>

#include "spinsim/hte.hpp"
#include "spinsim/lattice.hpp"
#include "spinsim/meanfield.hpp"
#include "spinsim/spin.hpp"

namespace spinsim::config {

// Fully validated run configuration. Defaults reproduce the InP(111) scenario:
// zincblende, field along (1,1,1), I = 9/2 (In), S = 1/2 (P), reduced gammas.
struct RunConfig {
  lattice::Structure structure = lattice::Structure::ZincblendeTwoSpecies;
  Eigen::Vector3d field_dir = Eigen::Vector3d(1, 1, 1).normalized();
  double r_max = 12.0;

  lattice::SpeciesSpec species_I{"In", Spin(4.5), 1.0, 0};
  lattice::SpeciesSpec species_S{"P", Spin(0.5), 1.0, 1};

  hte::Order order = hte::Order::G1G2;
  double hte_eta = 0.0;
  double hte_beta = 0.0;

  double adrf_polarization = 0.5;
  int adrf_points = 200;
  char adrf_species = 'I';

  std::string aht_sequence = "wahuha";  // wahuha|mrev8|modified:t1,t2|theta:angle
  double aht_tau = 1.0;
  std::string aht_coupling = "ising";   // ising|secular

  meanfield::Pumping pumping = meanfield::Pumping::Optical;
  int bz_grid = 24;
  bool dump_bz = false;

  std::string validate_cluster = "2x2";
  int validate_halvings = 4;

  std::string out_dir = ".";
  std::string format = "csv";  // csv|json
  double shell_tolerance = 1e-4;
  unsigned seed = 0;  // reserved; no stochastic components

  lattice::LatticeSpec lattice_spec() const;
  lattice::LatticeSpec fcc_spec() const;  // the homonuclear sublattice view
  void validate() const;
};

// Parses the flat sectioned key-value format; unknown keys are rejected with
// line context, physically invalid values rejected with messages.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");

}  // namespace spinsim::config
