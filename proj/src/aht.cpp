#include "spinsim/aht.hpp"

#include <cmath>
#include <stdexcept>

namespace spinsim::aht {

Eigen::Vector3d axis_vector(Axis a) {
  switch (a) {
    case Axis::X: return {1, 0, 0};
    case Axis::Y: return {0, 1, 0};
    case Axis::NegX: return {-1, 0, 0};
    case Axis::NegY: return {0, -1, 0};
  }
  return {0, 0, 0};
}

Event Event::delay(double tau) {
  if (tau < 0.0) throw std::invalid_argument("delay duration must be >= 0");
  Event e;
  e.kind = Kind::Delay;
  e.tau = tau;
  return e;
}

Event Event::pulse(Axis axis, double angle, Mask mask) {
  Event e;
  e.kind = Kind::Pulse;
  e.axis = axis;
  e.angle = angle;
  e.mask = mask;
  return e;
}

double PulseSequence::cycle_time() const {
  double t = 0.0;
  for (const auto& e : events)
    if (e.kind == Event::Kind::Delay) t += e.tau;
  return t;
}

PulseSequence PulseSequence::scaled(double factor) const {
  PulseSequence s = *this;
  for (auto& e : s.events)
    if (e.kind == Event::Kind::Delay) e.tau *= factor;
  return s;
}

PulseSequence PulseSequence::wahuha(double tau) {
  return modified_wahuha(tau, tau);
}

PulseSequence PulseSequence::modified_wahuha(double tau1, double tau2) {
  if (tau1 < 0 || tau2 < 0) throw std::invalid_argument("delays must be >= 0");
  constexpr double kHalfPi = 1.5707963267948966;
  PulseSequence s;
  s.name = "wahuha";
  s.events = {Event::delay(tau1),
              Event::pulse(Axis::X, kHalfPi),
              Event::delay(tau2),
              Event::pulse(Axis::NegY, kHalfPi),
              Event::delay(2.0 * tau2),
              Event::pulse(Axis::Y, kHalfPi),
              Event::delay(tau2),
              Event::pulse(Axis::NegX, kHalfPi),
              Event::delay(tau1)};
  if (tau1 != tau2) s.name = "modified-wahuha";
  return s;
}

PulseSequence PulseSequence::mrev8(double tau) {
  constexpr double kHalfPi = 1.5707963267948966;
  PulseSequence s = wahuha(tau);
  s.name = "mrev8";
  // second half-cycle with the x-pulse phases inverted
  std::vector<Event> tail = {Event::delay(tau),
                             Event::pulse(Axis::NegX, kHalfPi),
                             Event::delay(tau),
                             Event::pulse(Axis::NegY, kHalfPi),
                             Event::delay(2.0 * tau),
                             Event::pulse(Axis::Y, kHalfPi),
                             Event::delay(tau),
                             Event::pulse(Axis::X, kHalfPi),
                             Event::delay(tau)};
  s.events.insert(s.events.end(), tail.begin(), tail.end());
  return s;
}

PulseSequence PulseSequence::wahuha_theta(double tau, double theta) {
  PulseSequence s = wahuha(tau);
  s.name = "wahuha-theta";
  for (auto& e : s.events)
    if (e.kind == Event::Kind::Pulse) e.angle = theta;
  return s;
}

namespace {

// R(theta, n): exact integer entries for quarter-turn angles so that cycle
// averages of pi/2 sequences are exact
Eigen::Matrix3d rotation(const Eigen::Vector3d& n, double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  const double q = theta / 1.5707963267948966;
  const double qr = std::round(q);
  if (std::abs(q - qr) < 1e-12) {
    const int k = static_cast<int>(qr) & 3;
    const double cs[4] = {1, 0, -1, 0};
    c = cs[k & 3];
    s = cs[(k + 3) & 3];
  }
  Eigen::Matrix3d K;
  K << 0, -n.z(), n.y(),
       n.z(), 0, -n.x(),
       -n.y(), n.x(), 0;
  return Eigen::Matrix3d::Identity() + s * K + (1.0 - c) * (K * K);
}

}  // namespace

ToggleResult toggling_frames(const PulseSequence& seq) {
  ToggleResult out;
  Eigen::Matrix3d TI = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d TS = Eigen::Matrix3d::Identity();
  for (const auto& e : seq.events) {
    if (e.kind == Event::Kind::Delay) {
      out.frames.push_back({TI, TS, e.tau});
    } else {
      const Eigen::Matrix3d R = rotation(axis_vector(e.axis), e.angle);
      if (e.mask != Mask::S) TI = R * TI;
      if (e.mask != Mask::I) TS = R * TS;
    }
  }
  if (out.frames.empty()) out.frames.push_back({TI, TS, 0.0});
  const double errI = (TI - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  const double errS = (TS - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  out.closure_error = std::max(errI, errS);
  out.cyclic = out.closure_error < 1e-12;
  return out;
}

CouplingMatrix3 CouplingMatrix3::homonuclear_secular(double u) {
  CouplingMatrix3 m;
  m.C = u * Eigen::Vector3d(-0.5, -0.5, 1.0).asDiagonal();
  m.tag = CouplingTag::HomonuclearSecular;
  return m;
}

CouplingMatrix3 CouplingMatrix3::heteronuclear_ising(double w) {
  CouplingMatrix3 m;
  m.C = w * Eigen::Vector3d(0.0, 0.0, 1.0).asDiagonal();
  m.tag = CouplingTag::HeteronuclearIsing;
  return m;
}

Eigen::Matrix3d average_coupling(const CouplingMatrix3& c, const PulseSequence& seq) {
  const auto tog = toggling_frames(seq);
  const bool homo = c.tag == CouplingTag::HomonuclearSecular;
  Eigen::Matrix3d acc = Eigen::Matrix3d::Zero();
  double t_c = 0.0;
  for (const auto& f : tog.frames) {
    const Eigen::Matrix3d& right = homo ? f.T_I : f.T_S;
    acc += f.tau * (f.T_I.transpose() * c.C * right);
    t_c += f.tau;
  }
  if (t_c <= 0.0) throw std::invalid_argument("average_coupling: zero cycle time");
  return acc / t_c;
}

Eigen::Vector3d average_axis(const PulseSequence& seq, Mask species) {
  const auto tog = toggling_frames(seq);
  Eigen::Vector3d acc = Eigen::Vector3d::Zero();
  double t_c = 0.0;
  for (const auto& f : tog.frames) {
    const Eigen::Matrix3d& T = species == Mask::S ? f.T_S : f.T_I;
    acc += f.tau * (T.row(2).transpose());
    t_c += f.tau;
  }
  return acc / t_c;
}

std::vector<PathPoint> interpolation_path(double t_c, int steps) {
  if (steps < 2) throw std::invalid_argument("interpolation_path: steps must be >= 2");
  std::vector<PathPoint> path;
  path.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    PathPoint p;
    p.tau2 = (t_c / 6.0) * i / (steps - 1);
    p.tau1 = (t_c - 4.0 * p.tau2) / 2.0;
    const auto seq = PulseSequence::modified_wahuha(p.tau1, p.tau2);
    p.het = average_coupling(CouplingMatrix3::heteronuclear_ising(1.0), seq);
    p.homo_scale = average_coupling(CouplingMatrix3::homonuclear_secular(1.0), seq)(2, 2);
    path.push_back(p);
  }
  return path;
}

Eigen::Matrix3d theta_pulse_average(const CouplingMatrix3& c, double tau, double theta) {
  return average_coupling(c, PulseSequence::wahuha_theta(tau, theta));
}

}  // namespace spinsim::aht
