#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "zzsim/channels.hpp"
#include "zzsim/hilbert.hpp"

namespace zzsim {

// Readout correction. Confusion matrices are column-stochastic: column = true
// state, row = reported outcome.

/// [[1 - e0, e1], [e0, 1 - e1]] for readout errors e0 = P(1|0), e1 = P(0|1).
Eigen::Matrix2d single_qubit_readout(double err0, double err1);

struct ReadoutCalibration {
  Eigen::Matrix2d c1 = Eigen::Matrix2d::Identity();
  Eigen::Matrix2d c2 = Eigen::Matrix2d::Identity();
  Eigen::Matrix4d cct = Eigen::Matrix4d::Identity();

  /// C_CT (C1 x C2).
  Eigen::Matrix4d total() const;
  double condition_number() const;
  /// Entries in [0, 1] and unit column sums to 1e-12.
  void validate() const;
};

inline constexpr double kMaxReadoutCondition = 1e6;

/// [C_CT (C1 x C2)]^-1 measured. With clip, negative entries are zeroed and
/// the result renormalized.
Eigen::Vector4d correct_readout(const Eigen::Vector4d& measured, const ReadoutCalibration& cal,
                                bool clip = false);

// State tomography post-processing.

struct Projection {
  DensityMatrix rho;
  double distance;  // Tr (rho_p - rho_m)^2
};

/// Closest unit-trace PSD matrix in Frobenius norm. The input is symmetrized
/// first; eigenvalues are projected onto the probability simplex.
Projection project_physical(const Eigen::MatrixXcd& measured);

/// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho);

/// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2; reduces to <psi|sigma|psi> when
/// rho is pure.
double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// Process tomography.

using Ptm = Eigen::Matrix<double, 16, 16>;

/// Two-qubit Paulis in the order II, IX, IY, IZ, XI, ..., ZZ (Q1 first).
const std::array<Eigen::Matrix4cd, 16>& pauli_basis();
std::string pauli_label(int index);

/// R_ij = Tr[P_i channel(P_j)] / 4.
template <typename Channel>
Ptm ptm_from_channel(Channel&& channel) {
  const auto& p = pauli_basis();
  Ptm r;
  for (int j = 0; j < 16; ++j) {
    const Eigen::Matrix4cd out = channel(p[static_cast<std::size_t>(j)]);
    for (int i = 0; i < 16; ++i)
      r(i, j) = 0.25 * (p[static_cast<std::size_t>(i)] * out).trace().real();
  }
  return r;
}

Ptm ptm_of_unitary(const Eigen::Matrix4cd& u);

/// (Tr[R_id' R_exp] + 2n) / (4n^2 + 2n).
double gate_fidelity(const Eigen::MatrixXd& r_exp, const Eigen::MatrixXd& r_ideal, int n_qubits);

/// 0.5 ||R_raw - R_fit||_2 / (2n) with the spectral norm.
double nonphysical_error(const Eigen::MatrixXd& r_raw, const Eigen::MatrixXd& r_fit,
                         int n_qubits);

/// {|0>, |1>, |+>, |+i>} x {same}, Q1 index outermost.
std::vector<DensityMatrix> process_tomography_inputs();

/// Linear-inversion PTM from the channel outputs on a spanning set of inputs.
Ptm ptm_from_io(const std::vector<DensityMatrix>& inputs,
                const std::vector<Eigen::Matrix4cd>& outputs);

// Parametric sqrt(iSWAP) at finite coupler temperature.

/// sqrt(iSWAP) in the |00>, |01>, |10>, |11> basis. With z_correction a
/// Z rotation by pi/12 on Q2 follows the gate.
Eigen::Matrix4cd sqrt_iswap(bool z_correction = false);

/// u^exponent on the principal branch, via eigendecomposition.
Eigen::Matrix4cd unitary_power(const Eigen::Matrix4cd& u, double exponent);

struct ThermalGateModel {
  double p = 0.0;               // coupler excited-state population
  double alpha_exponent = 1.0;  // dJ0/dPhi over dJ1/dPhi
  double gate_time = 95e-9;     // s

  void validate() const;
};

/// Lambda_FM: (1 - p) U rho U' + p U1 rho U1' with U1 = U^(1/alpha), then
/// decoherence on Q2 and Q1.
Eigen::Matrix4cd flux_modulation_channel(const Eigen::Matrix4cd& m, const ThermalGateModel& model,
                                         const NoiseParams& noise1, const NoiseParams& noise2);

struct ThermalFidelity {
  double fidelity = 0.0;         // at model.p
  double fidelity_ground = 0.0;  // p = 0
  double fidelity_excited = 0.0; // p = 1
  double thermal_loss = 0.0;     // p (F_ground - F_excited)
};

/// Mean state fidelity against ideal sqrt(iSWAP) outputs over the 16
/// tomography inputs.
ThermalFidelity thermal_iswap_fidelity(const DeviceParams& params, const ThermalGateModel& model);

/// Two-level Boltzmann occupancy 1 / (1 + exp(hbar omega / k T)).
double thermal_population(double omega, double temperature);

}  // namespace zzsim
