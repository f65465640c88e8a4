#pragma once

#include <string>
#include <vector>

#include "zzsim/hilbert.hpp"
#include "zzsim/roots.hpp"
#include "zzsim/units.hpp"

namespace zzsim {

/// Coupler bias point. phi is in flux quanta, folded into [0, 1).
struct FluxPoint {
  double phi = 0.0;
  double omega_minus = 0.0;  // rad/s
};

/// Phi(t) = theta + delta cos(omega_phi t + phase_phi); theta, delta in flux quanta.
struct ModulationDrive {
  double theta = 0.0;
  double delta = 0.0;
  double omega_phi = 0.0;  // rad/s
  double phase_phi = 0.0;  // rad
};

/// Symmetric-SQUID law omega_max sqrt|cos(pi phi)|, phi in flux quanta.
double omega_minus_of_flux(const DeviceParams& params, double phi);
/// d omega_minus / d phi, rad/s per flux quantum.
double flux_slope(const DeviceParams& params, double phi);
/// Inverse of the flux map on the canonical branch, phi in [0, 1/2].
double flux_of_omega_minus(const DeviceParams& params, double omega_minus);
/// Folds phi into [0, 1) and attaches the coupler frequency.
FluxPoint flux_point(const DeviceParams& params, double phi);
/// Converts an absolute flux in webers to flux quanta.
inline double flux_quanta(const DeviceParams& params, double flux_wb) {
  return flux_wb / params.flux_quantum;
}

enum class ZetaMethod { Exact, Perturbative };

std::string to_string(ZetaMethod method);

/// Dispatches to the exact or the fourth-order ZZ rate.
double zeta(const DeviceParams& params, ZetaMethod method, double omega_minus,
            const HilbertSpace& space = HilbertSpace::device());

struct ZeroZetaOptions {
  int grid_points = 200;
  double tolerance = units::from_hz(100.0);
  HilbertSpace space = HilbertSpace::device();
  int threads = 1;
};

struct ZeroZetaRoot {
  FluxPoint point;
  double zeta = 0.0;        // residual at the root, rad/s
  double zeta_slope = 0.0;  // d zeta / d omega_minus (dimensionless)
  ZetaMethod method = ZetaMethod::Exact;
};

struct ZeroZetaSearch {
  std::vector<ZeroZetaRoot> roots;  // ascending in omega_minus
  std::vector<std::string> warnings;
};

/// Every zero of zeta(omega_minus) on [omega_lo, omega_hi]: grid bracketing
/// then bisection. Zero, one, or two roots are all normal outcomes.
ZeroZetaSearch find_zero_zeta(const DeviceParams& params, ZetaMethod method, double omega_lo,
                              double omega_hi, const ZeroZetaOptions& options = {});

/// The root with the smallest |d zeta / d omega_minus|. Throws DomainError
/// when the search found none.
const ZeroZetaRoot& preferred_operating_point(const ZeroZetaSearch& search);

/// Throws DomainError unless delta >= 0 and [theta - delta, theta + delta]
/// stays inside one monotone half-period of the flux map.
void validate(const ModulationDrive& drive);

/// Effective exchange rate (delta/2) dJ/dPhi at theta, rad/s.
double effective_drive_strength(const DeviceParams& params, const ModulationDrive& drive);

/// Modulation amplitude (flux quanta) that gives the requested effective rate at theta.
double modulation_amplitude_for(const DeviceParams& params, double theta, double j_eff);

}  // namespace zzsim
