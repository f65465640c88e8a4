#include "zzsim/coupler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zzsim/perturbation.hpp"
#include "zzsim/spectrum.hpp"

namespace zzsim {

double omega_minus_of_flux(const DeviceParams& params, double phi) {
  return params.omega_minus_max * std::sqrt(std::abs(std::cos(std::numbers::pi * phi)));
}

double flux_slope(const DeviceParams& params, double phi) {
  const double c = std::cos(std::numbers::pi * phi);
  const double s = std::sin(std::numbers::pi * phi);
  if (s == 0.0) return 0.0;
  // d/dphi sqrt|c| = sign(c) (-pi s) / (2 sqrt|c|)
  return params.omega_minus_max * std::copysign(1.0, c) * (-std::numbers::pi * s) /
         (2.0 * std::sqrt(std::abs(c)));
}

double flux_of_omega_minus(const DeviceParams& params, double omega_minus) {
  if (!(omega_minus > 0.0) || omega_minus > params.omega_minus_max)
    throw DomainError("omega_minus outside (0, omega_minus_max]");
  const double r = omega_minus / params.omega_minus_max;
  return std::acos(std::min(1.0, r * r)) / std::numbers::pi;
}

FluxPoint flux_point(const DeviceParams& params, double phi) {
  double folded = phi - std::floor(phi);
  if (folded >= 1.0) folded = 0.0;
  return {folded, omega_minus_of_flux(params, folded)};
}

std::string to_string(ZetaMethod method) {
  return method == ZetaMethod::Exact ? "exact" : "perturbative";
}

double zeta(const DeviceParams& params, ZetaMethod method, double omega_minus,
            const HilbertSpace& space) {
  return method == ZetaMethod::Exact ? zeta_exact(params, omega_minus, space)
                                     : zeta_perturbative(params, omega_minus);
}

ZeroZetaSearch find_zero_zeta(const DeviceParams& params, ZetaMethod method, double omega_lo,
                              double omega_hi, const ZeroZetaOptions& options) {
  const auto f = [&](double w) { return zeta(params, method, w, options.space); };
  RootScanOptions scan_opt;
  scan_opt.grid_points = options.grid_points;
  scan_opt.tolerance = options.tolerance;
  scan_opt.threads = options.threads;
  const RootScan scan = scan_roots(f, omega_lo, omega_hi, scan_opt);

  ZeroZetaSearch out;
  out.warnings = scan.warnings;
  const double h = units::from_mhz(1.0);
  for (const auto& r : scan.roots) {
    ZeroZetaRoot root;
    root.method = method;
    root.zeta = r.value;
    root.point.omega_minus = r.x;
    root.point.phi = r.x > 0.0 && r.x <= params.omega_minus_max ? flux_of_omega_minus(params, r.x)
                                                                : std::nan("");
    try {
      root.zeta_slope = (f(r.x + h) - f(r.x - h)) / (2.0 * h);
    } catch (const std::exception& e) {
      root.zeta_slope = std::nan("");
      out.warnings.push_back(std::string("slope unavailable at root: ") + e.what());
    }
    out.roots.push_back(root);
  }
  return out;
}

const ZeroZetaRoot& preferred_operating_point(const ZeroZetaSearch& search) {
  if (search.roots.empty()) throw DomainError("no zero-zeta point found");
  return *std::min_element(search.roots.begin(), search.roots.end(),
                           [](const ZeroZetaRoot& a, const ZeroZetaRoot& b) {
                             return std::abs(a.zeta_slope) < std::abs(b.zeta_slope);
                           });
}

void validate(const ModulationDrive& drive) {
  if (!(drive.delta >= 0.0)) throw DomainError("modulation amplitude delta must be >= 0");
  // Monotone branches of sqrt|cos(pi phi)| are the half-periods [k/2, (k+1)/2].
  const double lo = drive.theta - drive.delta, hi = drive.theta + drive.delta;
  if (std::floor(2.0 * lo) != std::floor(2.0 * hi) && 2.0 * hi != std::floor(2.0 * hi))
    throw DomainError("modulation crosses a branch point of the flux map");
}

double effective_drive_strength(const DeviceParams& params, const ModulationDrive& drive) {
  // Only the bias point enters the linear response; a sweet-spot bias gives 0.
  if (!(drive.delta >= 0.0)) throw DomainError("modulation amplitude delta must be >= 0");
  if (drive.delta == 0.0) return 0.0;
  const double w = omega_minus_of_flux(params, drive.theta);
  return 0.5 * drive.delta * exchange_J_slope(params, w) * flux_slope(params, drive.theta);
}

double modulation_amplitude_for(const DeviceParams& params, double theta, double j_eff) {
  const double w = omega_minus_of_flux(params, theta);
  const double dj_dphi = exchange_J_slope(params, w) * flux_slope(params, theta);
  if (dj_dphi == 0.0) throw DomainError("dJ/dPhi vanishes at this bias; no amplitude reaches j_eff");
  return std::abs(2.0 * j_eff / dj_dphi);
}

}  // namespace zzsim
