#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "zzsim/hilbert.hpp"
#include "zzsim/units.hpp"

namespace zzsim {

/// Denominators closer to zero than this raise PoleError (2pi x 1 kHz).
inline constexpr double kPoleTolerance = units::from_khz(1.0);

/// Bare single-excitation detunings delta(i, j) = omega_i - omega_j, indexed
/// by Mode.
struct DetuningSet {
  Eigen::Matrix4d delta = Eigen::Matrix4d::Zero();

  double operator()(Mode i, Mode j) const {
    return delta(static_cast<int>(i), static_cast<int>(j));
  }
  double d1p() const { return (*this)(Mode::Q1, Mode::BusPlus); }
  double d2p() const { return (*this)(Mode::Q2, Mode::BusPlus); }
  double d1m() const { return (*this)(Mode::Q1, Mode::CouplerMinus); }
  double d2m() const { return (*this)(Mode::Q2, Mode::CouplerMinus); }
  double d12() const { return (*this)(Mode::Q1, Mode::Q2); }
  double d21() const { return (*this)(Mode::Q2, Mode::Q1); }
};

DetuningSet detunings(const DeviceParams& params, double omega_minus);

/// The seven displayed contributions of the fourth-order ZZ expression.
struct ZetaTerms {
  double bus_two_photon = 0.0;      // 2 g1+^2 g2+^2 / (D1+ + D2+ + a+) (1/D1+ + 1/D2+)^2
  double coupler_two_photon = 0.0;  // same with the tunable coupler
  double qubit2_anharmonic = 0.0;   // (...)^2 (2/(D12 + a2) - 1/D12)
  double qubit1_anharmonic = 0.0;   // (...)^2 (2/(D21 + a1) - 1/D21)
  double mixed_coupler = 0.0;       // [...]^2 / (D1+ + D2-)
  double normalization_1 = 0.0;     // -(g1^2/D1^2 sums)(g2^2/D2 sums)
  double normalization_2 = 0.0;     // -(g2^2/D2^2 sums)(g1^2/D1 sums)

  double total() const {
    return bus_two_photon + coupler_two_photon + qubit2_anharmonic + qubit1_anharmonic +
           mixed_coupler + normalization_1 + normalization_2;
  }
};

/// Fourth-order dispersive ZZ rate, term by term. Throws PoleError when a
/// denominator multiplying a nonzero coupling product falls below kPoleTolerance.
ZetaTerms zeta_perturbative_terms(const DeviceParams& params, double omega_minus);

inline double zeta_perturbative(const DeviceParams& params, double omega_minus) {
  return zeta_perturbative_terms(params, omega_minus).total();
}

struct StraddlingReport {
  bool ok = false;
  std::vector<std::string> violations;
};

/// omega_- < omega_1,2 < omega_+ and |omega_1 - omega_2| < min(alpha_1, alpha_2),
/// all strict.
StraddlingReport straddling_ok(const DeviceParams& params, double omega_minus);

/// Coupler-mediated exchange J = sum_j g1j g2j / 2 (1/(w1 - wj) + 1/(w2 - wj)).
double exchange_J(const DeviceParams& params, double omega_minus);
/// dJ/d omega_minus (analytic).
double exchange_J_slope(const DeviceParams& params, double omega_minus);

struct IswapStrengths {
  double j0 = 0.0;  // coupler in its ground state
  double j1 = 0.0;  // coupler singly excited
};

IswapStrengths iswap_strengths(const DeviceParams& params, double omega_minus);

/// dJ0/dPhi and dJ1/dPhi for a given flux slope d omega_minus / d Phi.
IswapStrengths iswap_flux_derivatives(const DeviceParams& params, double omega_minus,
                                      double flux_slope);

/// |dJ0/dPhi / dJ1/dPhi|; the flux slope cancels.
double iswap_derivative_ratio(const DeviceParams& params, double omega_minus);

/// Two-qubit computational populations, ordered |00>, |01>, |10>, |11>.
using Populations = std::array<double, 4>;

/// Evolves a computational basis state (0..3 = |00>..|11>) under the rotating
/// frame exchange H = J_eff (a1' a2 e^{-i phi} + a1 a2' e^{i phi}).
Populations effective_exchange_populations(double j_eff, double t, int initial, double phase = 0.0);

/// Duration of a full |10> <-> |01> transfer, pi / (2 J_eff).
double full_swap_time(double j_eff);
/// J_eff that produces a full transfer in `duration`.
double coupling_for_swap_time(double duration);

}  // namespace zzsim
