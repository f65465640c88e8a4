#include "zzsim/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "zzsim/units.hpp"

namespace zzsim {

namespace {

using C = std::complex<double>;

Eigen::Matrix4d kron(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b) {
  Eigen::Matrix4d k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return k;
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return k;
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

template <typename M>
void check_stochastic(const M& c, const char* name) {
  if ((c.array() < -1e-12).any() || (c.array() > 1.0 + 1e-12).any())
    throw DomainError(std::string(name) + " has entries outside [0, 1]");
  if (((c.colwise().sum().array() - 1.0).abs() > 1e-12).any())
    throw DomainError(std::string(name) + " columns must sum to 1");
}

void check_ptm_pair(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, int n_qubits) {
  if (n_qubits < 1) throw DomainError("n_qubits must be >= 1");
  const Eigen::Index d = Eigen::Index{1} << (2 * n_qubits);
  if (a.rows() != d || a.cols() != d || b.rows() != d || b.cols() != d)
    throw DomainError("transfer matrices must be 4^n x 4^n");
}

}  // namespace

Eigen::Matrix2d single_qubit_readout(double err0, double err1) {
  Eigen::Matrix2d c;
  c << 1.0 - err0, err1, err0, 1.0 - err1;
  return c;
}

Eigen::Matrix4d ReadoutCalibration::total() const { return cct * kron(c1, c2); }

double ReadoutCalibration::condition_number() const {
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(total());
  const auto& s = svd.singularValues();
  return s[3] == 0.0 ? std::numeric_limits<double>::infinity() : s[0] / s[3];
}

void ReadoutCalibration::validate() const {
  check_stochastic(c1, "c1");
  check_stochastic(c2, "c2");
  check_stochastic(cct, "cct");
}

Eigen::Vector4d correct_readout(const Eigen::Vector4d& measured, const ReadoutCalibration& cal,
                                bool clip) {
  cal.validate();
  if (std::abs(measured.sum() - 1.0) > 1e-6)
    throw DomainError("measured outcome frequencies must sum to 1");
  if (const double cond = cal.condition_number(); !(cond <= kMaxReadoutCondition))
    throw DomainError("readout correction matrix is ill-conditioned (cond = " +
                      std::to_string(cond) + ")");
  Eigen::Vector4d v = cal.total().partialPivLu().solve(measured);
  if (clip) {
    v = v.cwiseMax(0.0);
    v /= v.sum();
  }
  return v;
}

Projection project_physical(const Eigen::MatrixXcd& measured) {
  if (measured.rows() != measured.cols() || measured.rows() == 0)
    throw DomainError("measured density matrix must be square");
  const Eigen::MatrixXcd h = 0.5 * (measured + measured.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);

  // Simplex projection of the spectrum: subtract the common shift theta that
  // restores unit trace among the eigenvalues kept positive.
  std::vector<double> mu(es.eigenvalues().data(),
                         es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(mu.begin(), mu.end(), std::greater<>());
  double sum = 0.0, theta = 0.0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    sum += mu[k];
    const double t = (sum - 1.0) / static_cast<double>(k + 1);
    if (mu[k] - t > 0.0) theta = t;
  }
  const Eigen::VectorXd lambda = (es.eigenvalues().array() - theta).cwiseMax(0.0);
  Eigen::MatrixXcd rho = es.eigenvectors() * lambda.asDiagonal() * es.eigenvectors().adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const double distance = (rho - h).squaredNorm();
  return {DensityMatrix(std::move(rho)), distance};
}

double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw DomainError("concurrence needs a two-qubit state");
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = yy(3, 0) = -1.0;
  yy(1, 2) = yy(2, 1) = 1.0;
  const Eigen::Matrix4cd m = rho.matrix();
  const Eigen::Matrix4cd tilde = yy * m.conjugate() * yy;
  // sqrt(rho) tilde sqrt(rho) shares its spectrum with rho tilde and is Hermitian.
  const Eigen::MatrixXcd s = psd_sqrt(m);
  const Eigen::MatrixXcd r = s * tilde * s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (r + r.adjoint()),
                                                     Eigen::EigenvaluesOnly);
  std::array<double, 4> l{};
  for (int k = 0; k < 4; ++k) l[static_cast<std::size_t>(k)] = std::sqrt(std::max(0.0, es.eigenvalues()[k]));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DomainError("state dimensions differ");
  const auto& a = rho.matrix();
  const auto& b = sigma.matrix();
  if (std::abs((a * a).trace().real() - 1.0) < 1e-12) return (a * b).trace().real();
  if (std::abs((b * b).trace().real() - 1.0) < 1e-12) return (a * b).trace().real();
  const Eigen::MatrixXcd s = psd_sqrt(a);
  const Eigen::MatrixXcd inner = s * b * s;
  const double tr = psd_sqrt(0.5 * (inner + inner.adjoint())).trace().real();
  return tr * tr;
}

const std::array<Eigen::Matrix4cd, 16>& pauli_basis() {
  static const std::array<Eigen::Matrix4cd, 16> basis = [] {
    std::array<Eigen::Matrix2cd, 4> p;
    p[0] = Eigen::Matrix2cd::Identity();
    p[1] << 0, 1, 1, 0;
    p[2] << 0, C(0, -1), C(0, 1), 0;
    p[3] << 1, 0, 0, -1;
    std::array<Eigen::Matrix4cd, 16> b;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) b[4 * i + j] = kron(p[i], p[j]);
    return b;
  }();
  return basis;
}

std::string pauli_label(int index) {
  if (index < 0 || index >= 16) throw DomainError("Pauli index must be 0..15");
  static constexpr char kNames[] = "IXYZ";
  return {kNames[index / 4], kNames[index % 4]};
}

Ptm ptm_of_unitary(const Eigen::Matrix4cd& u) {
  return ptm_from_channel([&](const Eigen::Matrix4cd& m) -> Eigen::Matrix4cd {
    return u * m * u.adjoint();
  });
}

double gate_fidelity(const Eigen::MatrixXd& r_exp, const Eigen::MatrixXd& r_ideal, int n_qubits) {
  check_ptm_pair(r_exp, r_ideal, n_qubits);
  const double n = n_qubits;
  return ((r_ideal.transpose() * r_exp).trace() + 2.0 * n) / (4.0 * n * n + 2.0 * n);
}

double nonphysical_error(const Eigen::MatrixXd& r_raw, const Eigen::MatrixXd& r_fit,
                         int n_qubits) {
  check_ptm_pair(r_raw, r_fit, n_qubits);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r_raw - r_fit);
  return 0.5 * svd.singularValues()[0] / (2.0 * n_qubits);
}

std::vector<DensityMatrix> process_tomography_inputs() {
  const double s = 1.0 / std::numbers::sqrt2;
  const std::array<Eigen::Vector2cd, 4> kets = {
      Eigen::Vector2cd(1, 0), Eigen::Vector2cd(0, 1), Eigen::Vector2cd(s, s),
      Eigen::Vector2cd(s, C(0, s))};
  std::vector<DensityMatrix> out;
  for (const auto& a : kets)
    for (const auto& b : kets) {
      Eigen::Vector4cd psi;
      psi << a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1];
      out.push_back(DensityMatrix::pure(psi));
    }
  return out;
}

Ptm ptm_from_io(const std::vector<DensityMatrix>& inputs,
                const std::vector<Eigen::Matrix4cd>& outputs) {
  if (inputs.size() != 16 || outputs.size() != 16)
    throw DomainError("linear inversion needs 16 input/output pairs");
  Eigen::Matrix<C, 16, 16> a;
  for (int k = 0; k < 16; ++k) {
    const auto& m = inputs[static_cast<std::size_t>(k)].matrix();
    if (m.rows() != 4) throw DomainError("tomography inputs must be two-qubit states");
    a.col(k) = Eigen::Map<const Eigen::Matrix<C, 16, 1>>(m.data());
  }
  const Eigen::FullPivLU<Eigen::Matrix<C, 16, 16>> lu(a);
  if (!lu.isInvertible()) throw DomainError("tomography inputs do not span operator space");
  return ptm_from_channel([&](const Eigen::Matrix4cd& pauli) -> Eigen::Matrix4cd {
    const Eigen::Matrix<C, 16, 1> c =
        lu.solve(Eigen::Map<const Eigen::Matrix<C, 16, 1>>(pauli.data()));
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    for (int k = 0; k < 16; ++k) out += c[k] * outputs[static_cast<std::size_t>(k)];
    return out;
  });
}

Eigen::Matrix4cd sqrt_iswap(bool z_correction) {
  const double s = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u(0, 0) = u(3, 3) = 1.0;
  u(1, 1) = u(2, 2) = s;
  u(1, 2) = u(2, 1) = C(0, s);
  if (!z_correction) return u;
  const double theta = std::numbers::pi / 12.0;
  Eigen::Matrix2cd rz = Eigen::Matrix2cd::Zero();
  rz(0, 0) = std::polar(1.0, -theta / 2);
  rz(1, 1) = std::polar(1.0, theta / 2);
  return kron(Eigen::Matrix2cd::Identity().eval(), rz) * u;
}

Eigen::Matrix4cd unitary_power(const Eigen::Matrix4cd& u, double exponent) {
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(u);
  if (es.info() != Eigen::Success) throw InternalError("eigendecomposition failed");
  Eigen::Vector4cd d;
  for (int k = 0; k < 4; ++k) d[k] = std::pow(es.eigenvalues()[k], exponent);
  const Eigen::Matrix4cd& v = es.eigenvectors();
  return v * d.asDiagonal() * v.inverse();
}

void ThermalGateModel::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("coupler population p must lie in [0, 1]");
  if (!(alpha_exponent > 0.0)) throw DomainError("alpha_exponent must be positive");
  if (!(gate_time > 0.0)) throw DomainError("gate_time must be positive");
}

Eigen::Matrix4cd flux_modulation_channel(const Eigen::Matrix4cd& m, const ThermalGateModel& model,
                                         const NoiseParams& noise1, const NoiseParams& noise2) {
  static const Eigen::Matrix4cd u = sqrt_iswap();
  const Eigen::Matrix4cd u1 = unitary_power(u, 1.0 / model.alpha_exponent);
  const Eigen::Matrix4cd fm =
      (1.0 - model.p) * u * m * u.adjoint() + model.p * u1 * m * u1.adjoint();
  return linear::decoherence(linear::decoherence(fm, 2, noise2), 1, noise1);
}

ThermalFidelity thermal_iswap_fidelity(const DeviceParams& params, const ThermalGateModel& model) {
  model.validate();
  const NoiseParams n1 = noise_for(params, 1, model.gate_time);
  const NoiseParams n2 = noise_for(params, 2, model.gate_time);
  const Eigen::Matrix4cd u = sqrt_iswap();

  const auto mean_fidelity = [&](double p) {
    ThermalGateModel at = model;
    at.p = p;
    double sum = 0.0;
    const auto inputs = process_tomography_inputs();
    for (const auto& rho : inputs) {
      const DensityMatrix ideal(u * rho.matrix() * u.adjoint());
      const Eigen::Matrix4cd out = flux_modulation_channel(rho.matrix(), at, n1, n2);
      sum += state_fidelity(ideal, DensityMatrix(0.5 * (out + out.adjoint())));
    }
    return sum / static_cast<double>(inputs.size());
  };

  ThermalFidelity f;
  f.fidelity = mean_fidelity(model.p);
  f.fidelity_ground = mean_fidelity(0.0);
  f.fidelity_excited = mean_fidelity(1.0);
  f.thermal_loss = model.p * (f.fidelity_ground - f.fidelity_excited);
  return f;
}

double thermal_population(double omega, double temperature) {
  if (!(temperature >= 0.0)) throw DomainError("temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  const double x = units::hbar * omega / (units::k_boltzmann * temperature);
  return 1.0 / (1.0 + std::exp(x));
}

}  // namespace zzsim
