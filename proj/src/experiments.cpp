#include "zzsim/experiments.hpp"

#include <cmath>
#include <limits>

#include "zzsim/anchors.hpp"
#include "zzsim/perturbation.hpp"
#include "zzsim/spectrum.hpp"

namespace zzsim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> grid(double lo, double hi, int points) {
  if (points < 2) throw DomainError("a sweep needs at least two points");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  return g;
}

}  // namespace

std::vector<ZetaSweepRow> zeta_sweep(const DeviceParams& params, ZetaMethod method,
                                     double omega_lo, double omega_hi, int points,
                                     const HilbertSpace& space, int threads) {
  const auto xs = grid(omega_lo, omega_hi, points);
  std::vector<ZetaSweepRow> rows(xs.size());
  parallel_for(xs.size(), threads, [&](std::size_t i) {
    ZetaSweepRow& r = rows[i];
    r.omega_minus = xs[i];
    if (method == ZetaMethod::Exact) {
      const ZetaExact z = evaluate_zeta_exact(params, xs[i], space);
      r.min_overlap = z.min_overlap();
      r.zeta = z.reliable() ? z.zeta : kNaN;
    } else {
      try {
        r.zeta = zeta_perturbative(params, xs[i]);
      } catch (const PoleError&) {
        r.zeta = kNaN;
      }
    }
  });
  return rows;
}

ZeroZetaSearch device_zero_zeta(const DeviceParams& params, ZetaMethod method, int grid_points,
                                int threads) {
  ZeroZetaOptions opt;
  opt.grid_points = grid_points;
  opt.threads = threads;
  return find_zero_zeta(params, method,
                        params.omega_1 + units::from_ghz(anchors::kZeroZetaSearchLo_GHz),
                        params.omega_1 + units::from_ghz(anchors::kZeroZetaSearchHi_GHz), opt);
}

ConfigComparison compare_reference_config(const ReferenceConfig& config, int points,
                                          int threads) {
  ConfigComparison out;
  out.id = config.id;
  out.x = grid(config.x_lo, config.x_hi, points);
  out.zeta_pert.assign(out.x.size(), kNaN);
  out.zeta_exact.assign(out.x.size(), kNaN);
  const HilbertSpace space = config.space();

  const auto exact = [&](double x) {
    const ReferencePoint r = config.at(x);
    return zeta_exact(r.params, r.omega_minus, space);
  };
  const auto pert = [&](double x) {
    const ReferencePoint r = config.at(x);
    return zeta_perturbative(r.params, r.omega_minus);
  };

  parallel_for(out.x.size(), threads, [&](std::size_t i) {
    const ReferencePoint r = config.at(out.x[i]);
    const ZetaExact z = evaluate_zeta_exact(r.params, r.omega_minus, space);
    if (z.reliable()) out.zeta_exact[i] = z.zeta;
    try {
      out.zeta_pert[i] = zeta_perturbative(r.params, r.omega_minus);
    } catch (const PoleError&) {
    }
  });

  RootScanOptions opt;
  opt.grid_points = points;
  opt.tolerance = units::from_hz(100.0);
  opt.threads = threads;
  const RootScan se = scan_roots(exact, config.x_lo, config.x_hi, opt);
  const RootScan sp = scan_roots(pert, config.x_lo, config.x_hi, opt);
  for (const auto& r : se.roots) out.roots_exact.push_back(r.x);
  for (const auto& r : sp.roots) out.roots_pert.push_back(r.x);
  for (const auto& w : se.warnings) out.warnings.push_back("exact: " + w);
  for (const auto& w : sp.warnings) out.warnings.push_back("perturbative: " + w);

  const double floor = units::from_mhz(anchors::kCurveZetaFloor_MHz);
  const double min_det = anchors::kCurveDispersiveMultiple * config.max_coupling();
  for (std::size_t i = 0; i < out.x.size(); ++i) {
    const double ze = out.zeta_exact[i], zp = out.zeta_pert[i];
    if (std::isnan(ze) || std::isnan(zp) || std::abs(ze) <= floor) continue;
    if (config.min_coupled_detuning(out.x[i]) <= min_det) continue;
    ++out.points_checked;
    if (const double rel = std::abs(zp - ze) / std::abs(ze); rel > out.worst_rel_error) {
      out.worst_rel_error = rel;
      out.worst_rel_error_x = out.x[i];
    }
  }
  return out;
}

Ptm decohered_iswap_ptm(const DeviceParams& params, double gate_time) {
  const NoiseParams n1 = noise_for(params, 1, gate_time);
  const NoiseParams n2 = noise_for(params, 2, gate_time);
  const ThermalGateModel ground{0.0, 1.0, gate_time};
  return ptm_from_channel([&](const Eigen::Matrix4cd& m) -> Eigen::Matrix4cd {
    return flux_modulation_channel(m, ground, n1, n2);
  });
}

double coherence_limited_fidelity(const DeviceParams& params, double gate_time) {
  return gate_fidelity(decohered_iswap_ptm(params, gate_time), ptm_of_unitary(sqrt_iswap()), 2);
}

ThermalOperatingPoint thermal_operating_point(const DeviceParams& params, int grid_points,
                                              int threads) {
  const ZeroZetaSearch s = device_zero_zeta(params, ZetaMethod::Exact, grid_points, threads);
  const ZeroZetaRoot& root = preferred_operating_point(s);
  return {root.point.omega_minus, iswap_derivative_ratio(params, root.point.omega_minus)};
}

std::vector<ThermalRow> thermal_sweep(const DeviceParams& params, const ThermalOperatingPoint& op,
                                      const std::vector<double>& temperatures, double gate_time) {
  std::vector<ThermalRow> rows;
  for (double t : temperatures) {
    ThermalRow r;
    r.temperature = t;
    r.p = thermal_population(op.omega_minus, t);
    r.fidelity = thermal_iswap_fidelity(params, {r.p, op.alpha_exponent, gate_time});
    rows.push_back(r);
  }
  return rows;
}

DeviceParams with_coherence_of(const DeviceParams& params, const DeviceParams& source) {
  DeviceParams p = params;
  p.t1 = source.t1;
  p.t2 = source.t2;
  return p;
}

}  // namespace zzsim
