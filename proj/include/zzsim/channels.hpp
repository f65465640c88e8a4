#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "zzsim/errors.hpp"
#include "zzsim/hilbert.hpp"

namespace zzsim {

/// Validated density matrix: Hermitian and unit trace to 1e-10, eigenvalues
/// >= -1e-9.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kEigenTol = 1e-9;

  explicit DensityMatrix(Eigen::MatrixXcd matrix);

  /// |psi><psi| for a normalized ket.
  static DensityMatrix pure(const Eigen::VectorXcd& ket);
  /// |k><k| in a space of dimension dim.
  static DensityMatrix basis(Eigen::Index dim, Eigen::Index k);

  Eigen::Index dim() const { return matrix_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  double population(Eigen::Index k) const { return matrix_(k, k).real(); }

 private:
  Eigen::MatrixXcd matrix_;
};

/// Returns a description of the first violated density-matrix invariant, or
/// an empty string.
std::string density_matrix_defect(const Eigen::MatrixXcd& m);

enum class GateLabel { I, XPlus90, XMinus90, YPlus90, YMinus90, X180, Y180 };

inline constexpr std::array<GateLabel, 7> kPrimaryGates = {
    GateLabel::I,        GateLabel::XPlus90, GateLabel::XMinus90, GateLabel::YPlus90,
    GateLabel::YMinus90, GateLabel::X180,    GateLabel::Y180};

std::string to_string(GateLabel g);

/// R(theta) = cos(theta/2) I - i sin(theta/2) P.
const Eigen::Matrix2cd& gate_unitary(GateLabel g);

/// Single-qubit Clifford group as 24 primary-gate words, first-applied first.
/// Word lengths average 1.875.
const std::array<std::vector<GateLabel>, 24>& clifford_words();
const Eigen::Matrix2cd& clifford_unitary(int index);
/// Index of the Clifford equal to u up to global phase; throws DomainError
/// if u is not Clifford.
int find_clifford(const Eigen::Matrix2cd& u);
double mean_clifford_length();

struct NoiseParams {
  double t1 = std::numeric_limits<double>::infinity();  // s
  double t2 = std::numeric_limits<double>::infinity();  // s
  double gate_time = 0.0;                                // s

  /// t2 <= 2 t1 and gate_time > 0. With t2 <= 2 t1 the printed relaxation map
  /// is completely positive.
  void validate() const;
  static NoiseParams ideal(double gate_time) { return {.gate_time = gate_time}; }
};

/// Noise of qubit 1 or 2 of a device.
NoiseParams noise_for(const DeviceParams& params, int qubit, double gate_time);

/// Linear maps on raw matrices. They accept any operator (Pauli inputs for
/// transfer matrices included) and perform no physicality checks.
namespace linear {

/// Relaxation and dephasing over noise.gate_time on one qubit.
Eigen::Matrix2cd decoherence(const Eigen::Matrix2cd& m, const NoiseParams& noise);
/// Same map acting on qubit 1 (most significant) or 2 of a two-qubit operator.
Eigen::Matrix4cd decoherence(const Eigen::Matrix4cd& m, int qubit, const NoiseParams& noise);
/// U_ZZ m U_ZZ' with U_ZZ = diag(1, 1, 1, exp(-i zeta t)).
Eigen::Matrix4cd zz(const Eigen::Matrix4cd& m, double zeta, double t);
/// One benchmarking slot: gates, then ZZ, then decoherence on qubit 2, then qubit 1.
Eigen::Matrix4cd rb_step(const Eigen::Matrix4cd& m, const Eigen::Matrix4cd& gates, double zeta,
                         const NoiseParams& noise1, const NoiseParams& noise2);

}  // namespace linear

DensityMatrix apply_gate(const DensityMatrix& rho, const Eigen::MatrixXcd& u);
DensityMatrix apply_zz(const DensityMatrix& rho, double zeta, double t);
DensityMatrix apply_decoherence(const DensityMatrix& rho, const NoiseParams& noise);
DensityMatrix apply_decoherence(const DensityMatrix& rho, int qubit, const NoiseParams& noise);
DensityMatrix rb_step(const DensityMatrix& rho, std::pair<GateLabel, GateLabel> gates,
                      double zeta, const NoiseParams& noise1, const NoiseParams& noise2);

enum class RbMode { IndividualQ1, IndividualQ2, Simultaneous };
std::string to_string(RbMode mode);

/// Clifford: random Cliffords expanded into primary-gate slots; per-gate
/// error is the Clifford error over the mean word length.
/// PrimaryGates: uniform primary gates plus one recovery Clifford slot.
enum class RbProtocol { Clifford, PrimaryGates };
std::string to_string(RbProtocol protocol);

struct RbConfig {
  NoiseParams noise1;
  NoiseParams noise2;
  double zeta = 0.0;  // rad/s
  std::vector<int> lengths = {2, 4, 8, 16, 32, 64, 128, 256, 512};
  int trials = 100;
  std::uint64_t seed = 1;
  int threads = 1;
  RbProtocol protocol = RbProtocol::Clifford;
};

struct RbPoint {
  int m = 0;
  std::array<double, 2> mean_p0{};  // ground population of Q1, Q2
  std::array<double, 2> sem{};      // standard error of the mean
};

/// P(m) = a p^m + b.
struct DecayFit {
  double a = 0.0;
  double b = 0.0;
  double p = 1.0;
  double rms_residual = 0.0;
};

struct RbResult {
  RbMode mode = RbMode::Simultaneous;
  std::vector<RbPoint> curve;
  std::array<bool, 2> active{};
  std::array<DecayFit, 2> fit{};
  std::array<double, 2> fidelity{};  // per primary gate, NaN for an idle qubit
};

/// Raised when a decay curve does not fit a decaying exponential.
class FitError : public std::runtime_error {
 public:
  FitError(const std::string& what, std::vector<int> m, std::vector<double> p0)
      : std::runtime_error(what), m_(std::move(m)), p0_(std::move(p0)) {}
  const std::vector<int>& lengths() const { return m_; }
  const std::vector<double>& curve() const { return p0_; }

 private:
  std::vector<int> m_;
  std::vector<double> p0_;
};

/// Unweighted least-squares fit of a p^m + b, started at a = b = 0.5, p = 0.99.
DecayFit fit_decay(const std::vector<int>& m, const std::vector<double>& p0);

/// Simulated randomized benchmarking. Every (length, trial) pair draws from
/// its own seed derived from config.seed, so results do not depend on the
/// thread count.
RbResult run_rb(RbMode mode, const RbConfig& config);

/// Seed for stream `index` of a run seeded with `seed` (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace zzsim
