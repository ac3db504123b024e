#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace spinsim::aht {

enum class Axis { X, Y, NegX, NegY };
enum class Mask { I, S, Both };

Eigen::Vector3d axis_vector(Axis a);  // signed unit vector

struct Event {
  enum class Kind { Delay, Pulse } kind = Kind::Delay;
  double tau = 0.0;     // delay duration
  Axis axis = Axis::X;  // pulse fields
  double angle = 0.0;   // radians
  Mask mask = Mask::Both;

  static Event delay(double tau);
  static Event pulse(Axis axis, double angle, Mask mask = Mask::Both);
};

// Timed pulse cycle; pulses are ideal delta rotations, t_c = sum of delays.
struct PulseSequence {
  std::string name;
  std::vector<Event> events;

  double cycle_time() const;
  PulseSequence scaled(double factor) const;  // delays scaled, pulses kept

  // tau - Px - tau - P-y - 2tau - Py - tau - P-x - tau
  static PulseSequence wahuha(double tau);
  // tau1 - Px - tau2 - P-y - 2tau2 - Py - tau2 - P-x - tau1, t_c = 2tau1+4tau2
  static PulseSequence modified_wahuha(double tau1, double tau2);
  // two WAHUHA half-cycles with inverted x-pulse phases, 10 intervals
  static PulseSequence mrev8(double tau);
  // WAHUHA timing, all pulse angles theta (finite-width interpolation knob)
  static PulseSequence wahuha_theta(double tau, double theta);
};

// Toggling-frame rotation during one interval. T is the operator-expansion
// matrix: the frame spin vector is T * (Ix,Iy,Iz)^T. Conventions: active
// rotations, right handed; a pulse exp(-i theta n.I) contributes R(+theta n),
// later pulses multiply on the left (fixed by requiring exact stroboscopic
// propagation to reproduce the Heisenberg average, see the cluster module).
struct Frame {
  Eigen::Matrix3d T_I = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d T_S = Eigen::Matrix3d::Identity();
  double tau = 0.0;
};

struct ToggleResult {
  std::vector<Frame> frames;
  bool cyclic = true;           // net cycle rotation is the identity
  double closure_error = 0.0;   // max-norm deviation from identity
};

ToggleResult toggling_frames(const PulseSequence& seq);

enum class CouplingTag { HomonuclearSecular, HeteronuclearIsing, General };

// 3x3 bilinear coupling: two-spin term sum_ab C_ab I_a S_b (heteronuclear) or
// the symmetric homonuclear analogue per unordered pair.
struct CouplingMatrix3 {
  Eigen::Matrix3d C = Eigen::Matrix3d::Zero();
  CouplingTag tag = CouplingTag::General;

  static CouplingMatrix3 homonuclear_secular(double u);  // u*diag(-1/2,-1/2,1)
  static CouplingMatrix3 heteronuclear_ising(double w);  // w*diag(0,0,1)
};

// Zeroth-order cycle average (1/t_c) sum_k tau_k T_I^T C T_S. A homonuclear
// tag uses the I frame on both sides.
Eigen::Matrix3d average_coupling(const CouplingMatrix3& c, const PulseSequence& seq);

// Average of a linear I^z term: the vector n with Iz -> n . (Ix,Iy,Iz).
Eigen::Vector3d average_axis(const PulseSequence& seq, Mask species);

struct PathPoint {
  double tau1 = 0.0, tau2 = 0.0;
  Eigen::Matrix3d het = Eigen::Matrix3d::Zero();  // average of diag(0,0,1)
  double homo_scale = 0.0;  // average of diag(-1/2,-1/2,1) = homo_scale * same
};

// Fixed-t_c path tau2: 0 -> t_c/6 (tau1 = (t_c - 4 tau2)/2); endpoints are the
// bare secular Hamiltonian and the WAHUHA average.
std::vector<PathPoint> interpolation_path(double t_c, int steps);

// Cycle average with WAHUHA timing (tau1 = tau2 = tau) and pulse angle theta.
Eigen::Matrix3d theta_pulse_average(const CouplingMatrix3& c, double tau, double theta);

}  // namespace spinsim::aht
