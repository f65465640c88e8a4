#include "zzsim/channels.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/LevenbergMarquardt>

#include "zzsim/parallel.hpp"

namespace zzsim {

namespace {

using C = std::complex<double>;

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return k;
}

// Elementwise form of the relaxation map on the qubit selected by `bit`:
// coherences across the qubit's 0/1 blocks decay by e^{-t/T2}; the 1-1 block
// shrinks by e^{-t/T1} and the lost weight moves to the 0-0 block.
template <int N>
Eigen::Matrix<C, N, N> decohere(const Eigen::Matrix<C, N, N>& m, int bit,
                                const NoiseParams& noise) {
  const double e1 = std::exp(-noise.gate_time / noise.t1);
  const double e2 = std::exp(-noise.gate_time / noise.t2);
  Eigen::Matrix<C, N, N> out;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const bool bi = i & bit, bj = j & bit;
      if (bi != bj)
        out(i, j) = e2 * m(i, j);
      else if (bi)
        out(i, j) = e1 * m(i, j);
      else
        out(i, j) = m(i, j) + (1.0 - e1) * m(i | bit, j | bit);
    }
  }
  return out;
}

int qubit_bit(int qubit) {
  if (qubit != 1 && qubit != 2) throw DomainError("qubit must be 1 or 2");
  return qubit == 1 ? 2 : 1;
}

double unitarity_defect(const Eigen::MatrixXcd& u) {
  return (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).norm();
}

Eigen::Matrix2cd rotation(const Eigen::Matrix2cd& pauli, double theta) {
  return std::cos(theta / 2) * Eigen::Matrix2cd::Identity() -
         C(0, std::sin(theta / 2)) * pauli;
}

void require_two_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw DomainError("expected a two-qubit density matrix");
}

DensityMatrix checked_output(Eigen::MatrixXcd m, const char* what) {
  if (auto defect = density_matrix_defect(m); !defect.empty())
    throw InternalError(std::string(what) + " produced an unphysical state: " + defect);
  return DensityMatrix(std::move(m));
}

}  // namespace

std::string density_matrix_defect(const Eigen::MatrixXcd& m) {
  char buf[120];
  if (m.rows() != m.cols() || m.rows() == 0) return "matrix is not square";
  if (const double h = (m - m.adjoint()).norm(); h >= DensityMatrix::kHermitianTol) {
    std::snprintf(buf, sizeof buf, "not Hermitian (defect %.3g)", h);
    return buf;
  }
  if (const double tr = m.trace().real(); std::abs(tr - 1.0) > DensityMatrix::kTraceTol) {
    std::snprintf(buf, sizeof buf, "trace %.15g differs from 1", tr);
    return buf;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  if (const double lo = es.eigenvalues().minCoeff(); lo < -DensityMatrix::kEigenTol) {
    std::snprintf(buf, sizeof buf, "negative eigenvalue %.3g", lo);
    return buf;
  }
  return {};
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  if (auto defect = density_matrix_defect(matrix_); !defect.empty())
    throw DomainError("invalid density matrix: " + defect);
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& ket) {
  return DensityMatrix(ket * ket.adjoint());
}

DensityMatrix DensityMatrix::basis(Eigen::Index dim, Eigen::Index k) {
  if (k < 0 || k >= dim) throw DomainError("basis index out of range");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  m(k, k) = 1.0;
  return DensityMatrix(std::move(m));
}

std::string to_string(GateLabel g) {
  switch (g) {
    case GateLabel::I: return "I";
    case GateLabel::XPlus90: return "X+90";
    case GateLabel::XMinus90: return "X-90";
    case GateLabel::YPlus90: return "Y+90";
    case GateLabel::YMinus90: return "Y-90";
    case GateLabel::X180: return "X180";
    case GateLabel::Y180: return "Y180";
  }
  throw DomainError("unknown gate label");
}

const Eigen::Matrix2cd& gate_unitary(GateLabel g) {
  static const std::array<Eigen::Matrix2cd, 7> table = [] {
    Eigen::Matrix2cd x, y;
    x << 0, 1, 1, 0;
    y << 0, C(0, -1), C(0, 1), 0;
    const double h = std::numbers::pi / 2;
    return std::array<Eigen::Matrix2cd, 7>{
        Eigen::Matrix2cd::Identity(), rotation(x, h), rotation(x, -h), rotation(y, h),
        rotation(y, -h),              rotation(x, 2 * h), rotation(y, 2 * h)};
  }();
  return table.at(static_cast<std::size_t>(g));
}

const std::array<std::vector<GateLabel>, 24>& clifford_words() {
  using G = GateLabel;
  static const std::array<std::vector<GateLabel>, 24> words = {{
      {G::I},
      {G::X180},
      {G::Y180},
      {G::Y180, G::X180},
      {G::XPlus90, G::YPlus90},
      {G::XPlus90, G::YMinus90},
      {G::XMinus90, G::YPlus90},
      {G::XMinus90, G::YMinus90},
      {G::YPlus90, G::XPlus90},
      {G::YPlus90, G::XMinus90},
      {G::YMinus90, G::XPlus90},
      {G::YMinus90, G::XMinus90},
      {G::XPlus90},
      {G::XMinus90},
      {G::YPlus90},
      {G::YMinus90},
      {G::XMinus90, G::YPlus90, G::XPlus90},
      {G::XMinus90, G::YMinus90, G::XPlus90},
      {G::X180, G::YPlus90},
      {G::X180, G::YMinus90},
      {G::Y180, G::XPlus90},
      {G::Y180, G::XMinus90},
      {G::XPlus90, G::YPlus90, G::XPlus90},
      {G::XMinus90, G::YPlus90, G::XMinus90},
  }};
  return words;
}

const Eigen::Matrix2cd& clifford_unitary(int index) {
  static const std::array<Eigen::Matrix2cd, 24> table = [] {
    std::array<Eigen::Matrix2cd, 24> t;
    for (std::size_t k = 0; k < t.size(); ++k) {
      Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
      for (GateLabel g : clifford_words()[k]) u = gate_unitary(g) * u;
      t[k] = u;
    }
    return t;
  }();
  if (index < 0 || index >= 24) throw DomainError("Clifford index must be 0..23");
  return table[static_cast<std::size_t>(index)];
}

int find_clifford(const Eigen::Matrix2cd& u) {
  for (int k = 0; k < 24; ++k)
    if (std::abs(std::abs((clifford_unitary(k).adjoint() * u).trace()) - 2.0) < 1e-9) return k;
  throw DomainError("unitary is not a single-qubit Clifford");
}

double mean_clifford_length() {
  std::size_t total = 0;
  for (const auto& w : clifford_words()) total += w.size();
  return static_cast<double>(total) / 24.0;
}

void NoiseParams::validate() const {
  if (!(t1 > 0.0)) throw DomainError("t1 must be positive");
  if (!(t2 > 0.0)) throw DomainError("t2 must be positive");
  if (!(gate_time > 0.0)) throw DomainError("gate_time must be positive");
  if (std::isfinite(t2) && t2 > 2.0 * t1) throw DomainError("t2 must not exceed 2 t1");
}

NoiseParams noise_for(const DeviceParams& params, int qubit, double gate_time) {
  const auto k = static_cast<std::size_t>(qubit_bit(qubit) == 2 ? 0 : 1);
  NoiseParams n{params.t1[k], params.t2[k], gate_time};
  n.validate();
  return n;
}

namespace linear {

Eigen::Matrix2cd decoherence(const Eigen::Matrix2cd& m, const NoiseParams& noise) {
  return decohere<2>(m, 1, noise);
}

Eigen::Matrix4cd decoherence(const Eigen::Matrix4cd& m, int qubit, const NoiseParams& noise) {
  return decohere<4>(m, qubit_bit(qubit), noise);
}

Eigen::Matrix4cd zz(const Eigen::Matrix4cd& m, double zeta, double t) {
  const C phase = std::polar(1.0, -zeta * t);
  Eigen::Matrix4cd out = m;
  out.row(3) *= phase;
  out.col(3) *= std::conj(phase);
  return out;
}

Eigen::Matrix4cd rb_step(const Eigen::Matrix4cd& m, const Eigen::Matrix4cd& gates, double zeta,
                         const NoiseParams& noise1, const NoiseParams& noise2) {
  const Eigen::Matrix4cd g = gates * m * gates.adjoint();
  return decohere<4>(decohere<4>(zz(g, zeta, noise1.gate_time), 1, noise2), 2, noise1);
}

}  // namespace linear

DensityMatrix apply_gate(const DensityMatrix& rho, const Eigen::MatrixXcd& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim())
    throw DomainError("gate dimension does not match the state");
  if (unitarity_defect(u) >= 1e-10) throw DomainError("gate is not unitary to 1e-10");
  return DensityMatrix(u * rho.matrix() * u.adjoint());
}

DensityMatrix apply_zz(const DensityMatrix& rho, double zeta, double t) {
  require_two_qubit(rho);
  return DensityMatrix(linear::zz(rho.matrix(), zeta, t));
}

DensityMatrix apply_decoherence(const DensityMatrix& rho, const NoiseParams& noise) {
  if (rho.dim() != 2) throw DomainError("expected a single-qubit density matrix");
  noise.validate();
  return checked_output(linear::decoherence(Eigen::Matrix2cd(rho.matrix()), noise),
                        "decoherence");
}

DensityMatrix apply_decoherence(const DensityMatrix& rho, int qubit, const NoiseParams& noise) {
  require_two_qubit(rho);
  noise.validate();
  return checked_output(linear::decoherence(Eigen::Matrix4cd(rho.matrix()), qubit, noise),
                        "decoherence");
}

DensityMatrix rb_step(const DensityMatrix& rho, std::pair<GateLabel, GateLabel> gates,
                      double zeta, const NoiseParams& noise1, const NoiseParams& noise2) {
  require_two_qubit(rho);
  noise1.validate();
  noise2.validate();
  const Eigen::Matrix4cd g = kron(gate_unitary(gates.first), gate_unitary(gates.second));
  return checked_output(linear::rb_step(rho.matrix(), g, zeta, noise1, noise2), "rb_step");
}

std::string to_string(RbMode mode) {
  switch (mode) {
    case RbMode::IndividualQ1: return "individual_q1";
    case RbMode::IndividualQ2: return "individual_q2";
    case RbMode::Simultaneous: return "simultaneous";
  }
  throw DomainError("unknown RB mode");
}

std::string to_string(RbProtocol protocol) {
  return protocol == RbProtocol::Clifford ? "clifford" : "primary";
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

struct DecayResidual : Eigen::DenseFunctor<double> {
  DecayResidual(const std::vector<int>& m, const std::vector<double>& y)
      : Eigen::DenseFunctor<double>(3, static_cast<int>(m.size())), m_(m), y_(y) {}

  int operator()(const InputType& x, ValueType& f) const {
    for (std::size_t k = 0; k < m_.size(); ++k)
      f[static_cast<Eigen::Index>(k)] = x[0] * std::pow(x[2], m_[k]) + x[1] - y_[k];
    return 0;
  }

  int df(const InputType& x, JacobianType& j) const {
    for (std::size_t k = 0; k < m_.size(); ++k) {
      const auto r = static_cast<Eigen::Index>(k);
      j(r, 0) = std::pow(x[2], m_[k]);
      j(r, 1) = 1.0;
      j(r, 2) = m_[k] == 0 ? 0.0 : x[0] * m_[k] * std::pow(x[2], m_[k] - 1);
    }
    return 0;
  }

  const std::vector<int>& m_;
  const std::vector<double>& y_;
};

// One sequence: per-slot single-qubit unitaries for both qubits.
using Slots = std::vector<std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd>>;

Slots draw_sequence(int m, std::array<bool, 2> active, RbProtocol protocol,
                    std::mt19937_64& rng) {
  std::array<std::vector<int>, 2> cliffords;
  std::array<std::vector<GateLabel>, 2> primaries;
  std::array<int, 2> recovery{};
  for (int q = 0; q < 2; ++q) {
    if (!active[q]) continue;
    Eigen::Matrix2cd total = Eigen::Matrix2cd::Identity();
    if (protocol == RbProtocol::Clifford) {
      std::uniform_int_distribution<int> pick(0, 23);
      for (int k = 0; k < m; ++k) {
        cliffords[q].push_back(pick(rng));
        total = clifford_unitary(cliffords[q].back()) * total;
      }
    } else {
      std::uniform_int_distribution<int> pick(0, static_cast<int>(kPrimaryGates.size()) - 1);
      for (int k = 0; k < m; ++k) {
        primaries[q].push_back(kPrimaryGates[static_cast<std::size_t>(pick(rng))]);
        total = gate_unitary(primaries[q].back()) * total;
      }
    }
    recovery[q] = find_clifford(total.adjoint());
  }

  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Slots slots;
  if (protocol == RbProtocol::PrimaryGates) {
    for (int k = 0; k < m; ++k)
      slots.emplace_back(active[0] ? gate_unitary(primaries[0][k]) : id,
                         active[1] ? gate_unitary(primaries[1][k]) : id);
    slots.emplace_back(active[0] ? clifford_unitary(recovery[0]) : id,
                       active[1] ? clifford_unitary(recovery[1]) : id);
    return slots;
  }
  // Each Clifford occupies the length of the longer of the two words; the
  // shorter word is padded with identities so both qubits stay in step.
  static const std::vector<GateLabel> kEmpty;
  for (int k = 0; k <= m; ++k) {
    std::array<const std::vector<GateLabel>*, 2> w{&kEmpty, &kEmpty};
    for (int q = 0; q < 2; ++q)
      if (active[q]) w[q] = &clifford_words()[k < m ? cliffords[q][k] : recovery[q]];
    const std::size_t len = std::max(w[0]->size(), w[1]->size());
    for (std::size_t s = 0; s < len; ++s)
      slots.emplace_back(s < w[0]->size() ? gate_unitary((*w[0])[s]) : id,
                         s < w[1]->size() ? gate_unitary((*w[1])[s]) : id);
  }
  return slots;
}

}  // namespace

DecayFit fit_decay(const std::vector<int>& m, const std::vector<double>& p0) {
  if (m.size() != p0.size() || m.size() < 3)
    throw DomainError("decay fit needs at least three (m, P) points");
  const auto [lo, hi] = std::minmax_element(p0.begin(), p0.end());
  if (*hi - *lo < 1e-12) {
    if (std::abs(*hi - 1.0) < 1e-9) return {0.0, *hi, 1.0, 0.0};
    throw FitError("flat decay curve below 1 cannot determine p", m, p0);
  }

  DecayResidual functor(m, p0);
  Eigen::LevenbergMarquardt<DecayResidual> lm(functor);
  lm.setMaxfev(2000);
  lm.setXtol(1e-14);
  lm.setFtol(1e-14);
  Eigen::VectorXd x(3);
  x << 0.5, 0.5, 0.99;
  lm.minimize(x);

  Eigen::VectorXd r(m.size());
  functor(x, r);
  DecayFit fit{x[0], x[1], x[2], std::sqrt(r.squaredNorm() / static_cast<double>(r.size()))};
  if (!std::isfinite(fit.p) || !(fit.p > 0.0) || fit.p > 1.0 + 1e-9 || !std::isfinite(fit.a)) {
    char buf[120];
    std::snprintf(buf, sizeof buf, "non-decaying benchmark curve (fitted p = %.6g)", fit.p);
    throw FitError(buf, m, p0);
  }
  return fit;
}

RbResult run_rb(RbMode mode, const RbConfig& config) {
  if (config.lengths.empty()) throw DomainError("RB needs at least one sequence length");
  if (config.trials < 1) throw DomainError("RB needs at least one trial");
  for (int m : config.lengths)
    if (m < 1) throw DomainError("RB sequence lengths must be >= 1");
  config.noise1.validate();
  config.noise2.validate();

  RbResult result;
  result.mode = mode;
  result.active = {mode != RbMode::IndividualQ2, mode != RbMode::IndividualQ1};

  const std::size_t n_len = config.lengths.size();
  const auto trials = static_cast<std::size_t>(config.trials);
  std::vector<std::array<double, 2>> samples(n_len * trials);

  parallel_for(samples.size(), config.threads, [&](std::size_t idx) {
    std::mt19937_64 rng(derive_seed(config.seed, idx));
    const int m = config.lengths[idx / trials];
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho(0, 0) = 1.0;
    for (const auto& [u1, u2] : draw_sequence(m, result.active, config.protocol, rng))
      rho = linear::rb_step(rho, kron(u1, u2), config.zeta, config.noise1, config.noise2);
    if (auto defect = density_matrix_defect(rho); !defect.empty())
      throw InternalError("RB sequence left the physical state space: " + defect);
    samples[idx] = {rho(0, 0).real() + rho(1, 1).real(), rho(0, 0).real() + rho(2, 2).real()};
  });

  for (std::size_t l = 0; l < n_len; ++l) {
    RbPoint pt;
    pt.m = config.lengths[l];
    for (int q = 0; q < 2; ++q) {
      double sum = 0.0;
      for (std::size_t t = 0; t < trials; ++t) sum += samples[l * trials + t][q];
      const double mean = sum / static_cast<double>(trials);
      double ss = 0.0;
      for (std::size_t t = 0; t < trials; ++t) ss += std::pow(samples[l * trials + t][q] - mean, 2);
      pt.mean_p0[q] = mean;
      pt.sem[q] = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1) /
                                         static_cast<double>(trials))
                             : 0.0;
    }
    result.curve.push_back(pt);
  }

  const double gates_per_step =
      config.protocol == RbProtocol::Clifford ? mean_clifford_length() : 1.0;
  for (int q = 0; q < 2; ++q) {
    if (!result.active[q]) {
      result.fidelity[q] = std::nan("");
      continue;
    }
    std::vector<double> y;
    for (const auto& pt : result.curve) y.push_back(pt.mean_p0[q]);
    result.fit[q] = fit_decay(config.lengths, y);
    result.fidelity[q] = 1.0 - (1.0 - result.fit[q].p) / (2.0 * gates_per_step);
  }
  return result;
}

}  // namespace zzsim
