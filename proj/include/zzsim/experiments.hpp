#pragma once

#include <string>
#include <vector>

#include "zzsim/channels.hpp"
#include "zzsim/coupler.hpp"
#include "zzsim/reference_configs.hpp"
#include "zzsim/tomography.hpp"

namespace zzsim {

struct ZetaSweepRow {
  double omega_minus = 0.0;  // rad/s
  double zeta = 0.0;         // rad/s, NaN where the method is undefined
  double min_overlap = 1.0;  // 1 for the perturbative method
};

/// zeta on a uniform omega_minus grid. Hybridized (exact) and singular
/// (perturbative) points come back as NaN instead of throwing.
std::vector<ZetaSweepRow> zeta_sweep(const DeviceParams& params, ZetaMethod method,
                                     double omega_lo, double omega_hi, int points,
                                     const HilbertSpace& space = HilbertSpace::device(),
                                     int threads = 1);

/// Zeros of zeta for omega_minus - omega_1 inside the standard search window.
ZeroZetaSearch device_zero_zeta(const DeviceParams& params, ZetaMethod method, int grid_points,
                                int threads = 1);

/// Perturbative and exact zeta across one reference configuration.
struct ConfigComparison {
  char id = '?';
  std::vector<double> x;  // swept coupler detuning, rad/s
  std::vector<double> zeta_pert;
  std::vector<double> zeta_exact;
  std::vector<double> roots_exact;  // x at zeta = 0
  std::vector<double> roots_pert;
  /// Worst |pert - exact| / |exact| over points passing the agreement filter.
  double worst_rel_error = 0.0;
  double worst_rel_error_x = 0.0;
  int points_checked = 0;
  std::vector<std::string> warnings;
};

ConfigComparison compare_reference_config(const ReferenceConfig& config, int points,
                                          int threads = 1);

/// Transfer matrix of sqrt(iSWAP) followed by decoherence on both qubits.
Ptm decohered_iswap_ptm(const DeviceParams& params, double gate_time);
/// F_g of that channel against the ideal gate.
double coherence_limited_fidelity(const DeviceParams& params, double gate_time);

/// Coupler operating point used for the finite-temperature gate model.
struct ThermalOperatingPoint {
  double omega_minus = 0.0;     // rad/s
  double alpha_exponent = 1.0;  // |dJ0/dPhi / dJ1/dPhi| at omega_minus
};

/// Preferred exact zero-ZZ point of the device and its derivative ratio.
ThermalOperatingPoint thermal_operating_point(const DeviceParams& params, int grid_points,
                                              int threads = 1);

struct ThermalRow {
  double temperature = 0.0;  // K
  double p = 0.0;
  ThermalFidelity fidelity;
};

/// Gate fidelity at each temperature, with the coupler population taken from
/// the operating-point frequency.
std::vector<ThermalRow> thermal_sweep(const DeviceParams& params, const ThermalOperatingPoint& op,
                                      const std::vector<double>& temperatures, double gate_time);

/// Copy of `params` carrying the coherence times of `source`.
DeviceParams with_coherence_of(const DeviceParams& params, const DeviceParams& source);

}  // namespace zzsim
