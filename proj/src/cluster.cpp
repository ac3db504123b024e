#include "spinsim/cluster.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spinsim/lattice.hpp"

namespace spinsim::cluster {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
constexpr std::complex<double> kI{0.0, 1.0};

MatrixXcd single_spin_op(Spin j, char which) {
  const int d = j.multiplicity();
  MatrixXcd M = MatrixXcd::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const double m = -j.value() + k;
    switch (which) {
      case 'z': M(k, k) = m; break;
      case '+':
        if (k + 1 < d) M(k + 1, k) = std::sqrt(j.jj() - m * (m + 1.0));
        break;
      case '-':
        if (k > 0) M(k - 1, k) = std::sqrt(j.jj() - m * (m - 1.0));
        break;
      case 'x':
        return 0.5 * (single_spin_op(j, '+') + single_spin_op(j, '-'));
      case 'y':
        return -0.5 * kI * (single_spin_op(j, '+') - single_spin_op(j, '-'));
      default:
        throw std::invalid_argument("unknown spin operator");
    }
  }
  return M;
}

MatrixXcd kron(const MatrixXcd& A, const MatrixXcd& B) {
  MatrixXcd K(A.rows() * B.rows(), A.cols() * B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int k = 0; k < A.cols(); ++k)
      K.block(i * B.rows(), k * B.cols(), B.rows(), B.cols()) = A(i, k) * B;
  return K;
}

}  // namespace

long ClusterSpec::hilbert_dim() const {
  long d = 1;
  for (int s : species) d *= (s == 0 ? spin_I : spin_S).multiplicity();
  return d;
}

void ClusterSpec::validate() const {
  const long n = static_cast<long>(species.size());
  if (n == 0) throw std::invalid_argument("cluster: no sites");
  if (couplings.rows() != n || couplings.cols() != n)
    throw std::invalid_argument("cluster: coupling table dimension mismatch");
  if (!couplings.isApprox(couplings.transpose(), 1e-12))
    throw std::invalid_argument("cluster: coupling table must be symmetric");
  if (hilbert_dim() > dim_cap)
    throw std::invalid_argument("cluster: Hilbert dimension exceeds the cap of " +
                                std::to_string(dim_cap));
}

Matrix site_operator(const ClusterSpec& spec, int site, char which) {
  spec.validate();
  MatrixXcd out = MatrixXcd::Identity(1, 1);
  for (std::size_t i = 0; i < spec.species.size(); ++i) {
    const Spin j = spec.spin_of(static_cast<int>(i));
    if (static_cast<int>(i) == site)
      out = kron(out, single_spin_op(j, which));
    else
      out = kron(out, MatrixXcd::Identity(j.multiplicity(), j.multiplicity()));
  }
  return out;
}

Matrix coupling_hamiltonian(const ClusterSpec& spec) {
  spec.validate();
  const int n = static_cast<int>(spec.species.size());
  const long d = spec.hilbert_dim();
  MatrixXcd H = MatrixXcd::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      const double c = spec.couplings(i, k);
      if (c == 0.0) continue;
      if (spec.species[i] == spec.species[k]) {
        // u (Iz Iz - 1/4 (I+ I- + I- I+)) per unordered pair
        H += c * (site_operator(spec, i, 'z') * site_operator(spec, k, 'z')
                  - 0.25 * (site_operator(spec, i, '+') * site_operator(spec, k, '-')
                            + site_operator(spec, i, '-') * site_operator(spec, k, '+')));
      } else {
        H += c * site_operator(spec, i, 'z') * site_operator(spec, k, 'z');
      }
    }
  }
  return H;
}

Matrix zeeman_hamiltonian(const ClusterSpec& spec) {
  spec.validate();
  const long d = spec.hilbert_dim();
  MatrixXcd H = MatrixXcd::Zero(d, d);
  for (std::size_t i = 0; i < spec.species.size(); ++i) {
    const double delta = spec.species[i] == 0 ? spec.delta_I : spec.delta_S;
    if (delta != 0.0) H += delta * site_operator(spec, static_cast<int>(i), 'z');
  }
  return H;
}

Matrix build_hamiltonian(const ClusterSpec& spec) {
  return zeeman_hamiltonian(spec) + coupling_hamiltonian(spec);
}

namespace {

struct ThermalDecomp {
  Eigen::VectorXd w;      // Boltzmann weights, normalized
  double log_partition;   // of the full cluster
  Eigen::MatrixXcd V;
};

ThermalDecomp thermal_decomp(const ClusterSpec& spec, double beta, double beta0) {
  const MatrixXcd X = beta0 * zeeman_hamiltonian(spec) + beta * coupling_hamiltonian(spec);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(X);
  const Eigen::VectorXd lam = es.eigenvalues();
  const double lmin = lam.minCoeff();
  Eigen::VectorXd w = (-(lam.array() - lmin)).exp().matrix();
  const double Z = w.sum();
  return {Eigen::VectorXd(w / Z), std::log(Z) - lmin, es.eigenvectors()};
}

}  // namespace

Thermal exact_thermal(const ClusterSpec& spec, double beta, double beta0) {
  const auto td = thermal_decomp(spec, beta, beta0);
  const int n = static_cast<int>(spec.species.size());
  const MatrixXcd Hp = coupling_hamiltonian(spec);
  const MatrixXcd Hz = zeeman_hamiltonian(spec);
  MatrixXcd Iz = MatrixXcd::Zero(Hp.rows(), Hp.cols());
  for (int i = 0; i < n; ++i) Iz += site_operator(spec, i, 'z');

  auto expect = [&](const MatrixXcd& O) {
    const MatrixXcd Ot = td.V.adjoint() * O * td.V;
    double acc = 0.0;
    for (int k = 0; k < Ot.rows(); ++k) acc += td.w(k) * Ot(k, k).real();
    return acc;
  };

  Thermal t;
  t.energy = expect(Hp) / n;
  t.log_partition = td.log_partition / n;
  t.polarization = expect(Iz) / n;
  t.entropy = (beta0 * expect(Hz) + beta * expect(Hp) + td.log_partition) / n;
  return t;
}

double entropy_from_rho(const ClusterSpec& spec, double beta, double beta0) {
  const auto td = thermal_decomp(spec, beta, beta0);
  double s = 0.0;
  for (int k = 0; k < td.w.size(); ++k)
    if (td.w(k) > 0.0) s -= td.w(k) * std::log(td.w(k));
  return s / static_cast<double>(spec.species.size());
}

namespace {

MatrixXcd matrix_exp_hermitian(const MatrixXcd& H, std::complex<double> prefactor) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H);
  const Eigen::VectorXd lam = es.eigenvalues();
  Eigen::VectorXcd ph(lam.size());
  for (int k = 0; k < lam.size(); ++k) ph(k) = std::exp(prefactor * lam(k));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

MatrixXcd pulse_unitary(const ClusterSpec& spec, const aht::Event& e) {
  const Eigen::Vector3d n = aht::axis_vector(e.axis);
  const long d = spec.hilbert_dim();
  MatrixXcd G = MatrixXcd::Zero(d, d);
  for (std::size_t i = 0; i < spec.species.size(); ++i) {
    const bool on_I = spec.species[i] == 0;
    if ((on_I && e.mask == aht::Mask::S) || (!on_I && e.mask == aht::Mask::I)) continue;
    const int site = static_cast<int>(i);
    G += n.x() * site_operator(spec, site, 'x')
       + n.y() * site_operator(spec, site, 'y')
       + n.z() * site_operator(spec, site, 'z');
  }
  return matrix_exp_hermitian(G, -kI * e.angle);
}

}  // namespace

Matrix propagate(const ClusterSpec& spec, const aht::PulseSequence& seq, int n_cycles) {
  spec.validate();
  const MatrixXcd H = build_hamiltonian(spec);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H);

  const long d = spec.hilbert_dim();
  MatrixXcd U = MatrixXcd::Identity(d, d);
  for (const auto& e : seq.events) {
    if (e.kind == aht::Event::Kind::Delay) {
      if (e.tau == 0.0) continue;
      Eigen::VectorXcd ph(d);
      for (int k = 0; k < d; ++k) ph(k) = std::exp(-kI * e.tau * es.eigenvalues()(k));
      U = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint() * U;
    } else {
      U = pulse_unitary(spec, e) * U;
    }
  }
  MatrixXcd Un = MatrixXcd::Identity(d, d);
  MatrixXcd base = U;
  int n = n_cycles;
  while (n > 0) {  // binary power, keeps 1e4-cycle products cheap and stable
    if (n & 1) Un = base * Un;
    base = base * base;
    n >>= 1;
  }
  return Un;
}

Matrix average_hamiltonian(const ClusterSpec& spec, const aht::PulseSequence& seq) {
  spec.validate();
  const int n = static_cast<int>(spec.species.size());
  const long d = spec.hilbert_dim();

  // cache site vector operators
  std::vector<std::array<MatrixXcd, 3>> ops(n);
  for (int i = 0; i < n; ++i)
    ops[i] = {site_operator(spec, i, 'x'), site_operator(spec, i, 'y'),
              site_operator(spec, i, 'z')};

  const auto tog = aht::toggling_frames(seq);
  double t_c = 0.0;
  for (const auto& f : tog.frames) t_c += f.tau;

  MatrixXcd Hbar = MatrixXcd::Zero(d, d);
  // averaged detunings
  const Eigen::Vector3d nI = aht::average_axis(seq, aht::Mask::I);
  const Eigen::Vector3d nS = aht::average_axis(seq, aht::Mask::S);
  for (int i = 0; i < n; ++i) {
    const bool on_I = spec.species[i] == 0;
    const double delta = on_I ? spec.delta_I : spec.delta_S;
    if (delta == 0.0) continue;
    const Eigen::Vector3d& nv = on_I ? nI : nS;
    for (int a = 0; a < 3; ++a) Hbar += delta * nv(a) * ops[i][a];
  }
  // averaged pair couplings
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      const double c = spec.couplings(i, k);
      if (c == 0.0) continue;
      const bool homo = spec.species[i] == spec.species[k];
      Eigen::Matrix3d Cbar = Eigen::Matrix3d::Zero();
      for (const auto& f : tog.frames) {
        const Eigen::Matrix3d& TL = spec.species[i] == 0 ? f.T_I : f.T_S;
        const Eigen::Matrix3d& TR = spec.species[k] == 0 ? f.T_I : f.T_S;
        const Eigen::Matrix3d C0 =
            homo ? Eigen::Matrix3d(c * Eigen::Vector3d(-0.5, -0.5, 1.0).asDiagonal())
                 : Eigen::Matrix3d(c * Eigen::Vector3d(0.0, 0.0, 1.0).asDiagonal());
        Cbar += f.tau * (TL.transpose() * C0 * TR);
      }
      Cbar /= t_c;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          if (Cbar(a, b) != 0.0) Hbar += Cbar(a, b) * ops[i][a] * ops[k][b];
    }
  }
  return Hbar;
}

LadderResult compare_propagators(const ClusterSpec& spec, const aht::PulseSequence& seq,
                                 int n_halvings) {
  if (n_halvings < 1) throw std::invalid_argument("compare_propagators: need >= 1 halving");
  LadderResult res;
  res.total_time = seq.cycle_time();
  const MatrixXcd Hbar = average_hamiltonian(spec, seq);

  for (int k = 0; k <= n_halvings; ++k) {
    const double scale = std::ldexp(1.0, -k);  // 2^-k
    const int n_cycles = 1 << k;
    const MatrixXcd Us = propagate(spec, seq.scaled(scale), n_cycles);
    const MatrixXcd Ua = matrix_exp_hermitian(Hbar, -kI * res.total_time);
    res.rows.push_back({seq.cycle_time() * scale, n_cycles, (Us - Ua).norm()});
  }

  double emax = 0.0;
  for (const auto& r : res.rows) emax = std::max(emax, r.error);
  if (emax < 1e-12) {
    res.exact = true;
    res.fitted_order = std::numeric_limits<double>::quiet_NaN();
    return res;
  }
  // least-squares slope of log error vs log t_c
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int m = static_cast<int>(res.rows.size());
  for (const auto& r : res.rows) {
    const double x = std::log(r.t_c), y = std::log(std::max(r.error, 1e-300));
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  res.fitted_order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return res;
}

ClusterSpec fcc_four_site(Spin j, double delta) {
  const Eigen::Vector3d field = Eigen::Vector3d(1, 1, 1).normalized();
  const double a = lattice::geometric_factor({1, 1, 0}, field);
  const double b = lattice::geometric_factor({2, 1, 1}, field);
  ClusterSpec spec;
  spec.species = {0, 0, 0, 0};
  spec.spin_I = j;
  spec.delta_I = delta;
  spec.couplings = Eigen::MatrixXd::Zero(4, 4);
  auto set = [&](int i, int k, double v) {
    spec.couplings(i, k) = spec.couplings(k, i) = v;
  };
  set(0, 1, a); set(2, 3, a);
  set(0, 2, b); set(1, 3, b);
  set(0, 3, -a - b); set(1, 2, -a - b);
  return spec;
}

ClusterSpec zincblende_fragment(int n_I, int n_S, Spin spin_I, Spin spin_S,
                                const Eigen::Vector3d& field_dir,
                                double delta_I, double delta_S) {
  if (n_I < 1 || n_S < 0) throw std::invalid_argument("fragment: need at least one I site");
  // deterministic small site sets: I on the fcc sublattice, S offset by (1/2,1/2,1/2)
  const std::vector<Eigen::Vector3d> i_pool = {
      {0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  const std::vector<Eigen::Vector3d> s_pool = {
      {0.5, 0.5, 0.5}, {-0.5, -0.5, 0.5}, {-0.5, 0.5, -0.5}, {0.5, -0.5, -0.5}};
  if (n_I > static_cast<int>(i_pool.size()) || n_S > static_cast<int>(s_pool.size()))
    throw std::invalid_argument("fragment: at most 4 sites per species");

  std::vector<Eigen::Vector3d> pos;
  ClusterSpec spec;
  spec.spin_I = spin_I;
  spec.spin_S = spin_S;
  spec.delta_I = delta_I;
  spec.delta_S = delta_S;
  for (int i = 0; i < n_I; ++i) { pos.push_back(i_pool[i]); spec.species.push_back(0); }
  for (int k = 0; k < n_S; ++k) { pos.push_back(s_pool[k]); spec.species.push_back(1); }
  const int n = n_I + n_S;
  spec.couplings = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) {
      const double g = lattice::geometric_factor(pos[i] - pos[k], field_dir);
      spec.couplings(i, k) = spec.couplings(k, i) = g;
    }
  return spec;
}

}  // namespace spinsim::cluster
