#include "zzsim/recipes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "zzsim/anchors.hpp"
#include "zzsim/csv.hpp"
#include "zzsim/device_io.hpp"
#include "zzsim/experiments.hpp"
#include "zzsim/perturbation.hpp"

namespace zzsim {

namespace {

using units::to_ghz;
using units::to_mhz;

AnchorCheck within(std::string name, double value, double target, double tol, std::string unit,
                   std::string detail = {}) {
  return {std::move(name), value, target, tol, std::move(unit),
          std::abs(value - target) <= tol, std::move(detail)};
}

CsvMetadata metadata(const RecipeOptions& o, std::string hash) {
  CsvMetadata m;
  m.command_line = o.command_line;
  m.device_hash = std::move(hash);
  m.seed = o.seed;
  return m;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

void save(RecipeReport& r, const CsvWriter& w, const RecipeOptions& o, const std::string& file) {
  const auto path = o.out_dir / file;
  w.save(path);
  r.files.push_back(path);
}

void fig2(RecipeReport& report, const RecipeOptions& o) {
  const std::array<std::pair<std::string, std::array<double, 2>>, 2> devices = {
      {{o.device_a, anchors::kZeroZetaDeviceA_GHz}, {o.device_b, anchors::kZeroZetaDeviceB_GHz}}};
  for (const auto& [name, targets] : devices) {
    const DeviceFile dev = load_device(name);
    const DeviceParams& p = dev.params;
    const double lo = p.omega_1 + units::from_ghz(anchors::kZeroZetaSearchLo_GHz);
    const double hi = p.omega_1 + units::from_ghz(anchors::kZeroZetaSearchHi_GHz);

    CsvWriter w(metadata(o, dev.hash),
                {"flux_or_detuning", "omega_minus_GHz", "zeta_MHz", "min_overlap"});
    for (const auto& row : zeta_sweep(p, ZetaMethod::Exact, lo, hi, o.sweep_points,
                                      HilbertSpace::device(), o.threads))
      w.row({to_ghz(row.omega_minus - p.omega_1), to_ghz(row.omega_minus), to_mhz(row.zeta),
             row.min_overlap});
    save(report, w, o, "fig2_" + p.name + ".csv");

    const ZeroZetaSearch s = device_zero_zeta(p, ZetaMethod::Exact, o.sweep_points, o.threads);
    for (const auto& warn : s.warnings) report.notes.push_back(p.name + ": " + warn);
    report.checks.push_back({p.name + " zero-ZZ count", static_cast<double>(s.roots.size()), 2.0,
                             0.0, "", s.roots.size() == targets.size(), ""});
    for (std::size_t k = 0; k < targets.size() && k < s.roots.size(); ++k) {
      const double d = to_ghz(s.roots[k].point.omega_minus - p.omega_1);
      report.checks.push_back(within(p.name + " zero-ZZ detuning " + std::to_string(k + 1), d,
                                     targets[k], anchors::kZeroZetaTol_GHz, "GHz",
                                     "phi = " + fmt("%.4f", s.roots[k].point.phi) + " Phi0"));
    }
    if (!s.roots.empty()) {
      const auto& pref = preferred_operating_point(s);
      report.notes.push_back(p.name + ": preferred operating point omega_minus - omega_1 = " +
                             fmt("%.4f", to_ghz(pref.point.omega_minus - p.omega_1)) + " GHz");
    }
  }
}

void figS3(RecipeReport& report, const RecipeOptions& o) {
  for (const auto& cfg : reference_configs()) {
    const ConfigComparison c = compare_reference_config(cfg, o.sweep_points, o.threads);
    const std::string id(1, cfg.id);
    CsvWriter w(metadata(o, "none"), {"detuning_GHz", "zeta_pert_MHz", "zeta_exact_MHz", "config_id"});
    for (std::size_t i = 0; i < c.x.size(); ++i)
      w.row({format_number(to_ghz(c.x[i])), format_number(to_mhz(c.zeta_pert[i])),
             format_number(to_mhz(c.zeta_exact[i])), id});
    save(report, w, o, "figS3_" + id + ".csv");

    report.checks.push_back({"config " + id + " zero count (pert vs exact)",
                             static_cast<double>(c.roots_pert.size()),
                             static_cast<double>(c.roots_exact.size()), 0.0, "",
                             c.roots_pert.size() == c.roots_exact.size(), ""});
    for (std::size_t k = 0; k < c.roots_exact.size() && k < c.roots_pert.size(); ++k) {
      const double xe = to_ghz(c.roots_exact[k]), xp = to_ghz(c.roots_pert[k]);
      report.checks.push_back(within("config " + id + " zero " + std::to_string(k + 1) +
                                         " pert vs exact",
                                     xp, xe, anchors::kCrossingRelTol * std::abs(xe), "GHz"));
    }
    AnchorCheck curve{"config " + id + " worst curve relative error",
                      c.worst_rel_error,
                      0.0,
                      anchors::kCurveRelTol,
                      "",
                      c.worst_rel_error <= anchors::kCurveRelTol,
                      "at x = " + fmt("%.3f", to_ghz(c.worst_rel_error_x)) + " GHz over " +
                          std::to_string(c.points_checked) + " points"};
    report.checks.push_back(curve);
    if (cfg.id == 'c') {
      const double x = c.roots_exact.empty() ? std::nan("") : to_ghz(c.roots_exact.front());
      report.checks.push_back(within("config c zero (exact)", x, anchors::kConfigCZero_GHz,
                                     anchors::kConfigCZeroTol_GHz, "GHz"));
    }
  }
}

void figS2(RecipeReport& report, const RecipeOptions& o) {
  const DeviceFile dev = load_device(o.device_a);
  RbConfig base;
  base.noise1 = noise_for(dev.params, 1, anchors::kRbGateTime);
  base.noise2 = noise_for(dev.params, 2, anchors::kRbGateTime);
  base.trials = o.rb_trials;
  base.seed = o.seed;
  base.threads = o.threads;

  struct Run {
    RbMode mode;
    double zeta_mhz;
    RbResult result;
  };
  std::vector<Run> runs;
  for (double z : {0.0, anchors::kRbLargeZeta_MHz})
    for (RbMode m : {RbMode::Simultaneous, RbMode::IndividualQ1, RbMode::IndividualQ2}) {
      RbConfig cfg = base;
      cfg.zeta = units::from_mhz(z);
      runs.push_back({m, z, run_rb(m, cfg)});
      CsvMetadata meta = metadata(o, dev.hash);
      meta.extra = {{"mode", to_string(m)}, {"zeta_MHz", format_number(z)},
                    {"protocol", to_string(cfg.protocol)}};
      CsvWriter w(meta, {"m", "mean_p0_q1", "mean_p0_q2", "sem"});
      for (const auto& pt : runs.back().result.curve)
        w.row({static_cast<double>(pt.m), pt.mean_p0[0], pt.mean_p0[1],
               std::max(pt.sem[0], pt.sem[1])});
      save(report, w, o, "figS2_" + to_string(m) + "_zeta" + fmt("%.2f", z) + "MHz.csv");
    }

  const auto find = [&](RbMode m, double z) -> const RbResult& {
    for (const auto& r : runs)
      if (r.mode == m && r.zeta_mhz == z) return r.result;
    throw InternalError("missing RB run");
  };
  const auto per_qubit = [](const RbResult& r) {
    return "Q1 " + fmt("%.5f", r.fidelity[0]) + ", Q2 " + fmt("%.5f", r.fidelity[1]);
  };
  const RbResult& s0 = find(RbMode::Simultaneous, 0.0);
  const RbResult& s1 = find(RbMode::Simultaneous, anchors::kRbLargeZeta_MHz);
  report.checks.push_back(within("F_S at zeta = 0 (mean of qubits)",
                                 0.5 * (s0.fidelity[0] + s0.fidelity[1]),
                                 anchors::kRbSimultaneousZeroZeta,
                                 anchors::kRbSimultaneousZeroZetaTol, "", per_qubit(s0)));
  report.checks.push_back(within("F_S at zeta/2pi = 2.26 MHz (mean of qubits)",
                                 0.5 * (s1.fidelity[0] + s1.fidelity[1]),
                                 anchors::kRbSimultaneousLargeZeta,
                                 anchors::kRbSimultaneousLargeZetaTol, "", per_qubit(s1)));
  for (int q = 0; q < 2; ++q) {
    const RbMode m = q == 0 ? RbMode::IndividualQ1 : RbMode::IndividualQ2;
    const double f0 = find(m, 0.0).fidelity[q];
    const double f1 = find(m, anchors::kRbLargeZeta_MHz).fidelity[q];
    const std::string qn = "Q" + std::to_string(q + 1);
    report.checks.push_back({"F_I " + qn + " above bound", std::min(f0, f1),
                             anchors::kRbIndividualMin, 0.0, "",
                             std::min(f0, f1) > anchors::kRbIndividualMin,
                             "zeta = 0: " + fmt("%.5f", f0) + ", 2.26 MHz: " + fmt("%.5f", f1)});
    report.checks.push_back(within("F_I " + qn + " zeta independence", f1 - f0, 0.0,
                                   anchors::kRbStatisticalTol, ""));
  }
}

void figS4(RecipeReport& report, const RecipeOptions& o) {
  const DeviceFile a = load_device(o.device_a);
  const DeviceFile b = load_device(o.device_b);
  const ThermalOperatingPoint op_a = thermal_operating_point(a.params, o.sweep_points, o.threads);
  const ThermalOperatingPoint op_b = thermal_operating_point(b.params, o.sweep_points, o.threads);
  report.notes.push_back("device_a operating point " + fmt("%.4f", to_ghz(op_a.omega_minus)) +
                         " GHz, alpha exponent " + fmt("%.3f", op_a.alpha_exponent));
  report.notes.push_back("device_b operating point " + fmt("%.4f", to_ghz(op_b.omega_minus)) +
                         " GHz, alpha exponent " + fmt("%.3f", op_b.alpha_exponent));
  report.notes.push_back("coherence equalized to device_b for the device comparison");

  std::vector<double> temps;
  for (int i = 0; i < anchors::kThermalPoints; ++i)
    temps.push_back(anchors::kThermalTempMax_K * i / (anchors::kThermalPoints - 1));

  const DeviceParams a_eq = with_coherence_of(a.params, b.params);
  const auto rows_a = thermal_sweep(a_eq, op_a, temps, anchors::kIswapGateTime);
  const auto rows_b = thermal_sweep(b.params, op_b, temps, anchors::kIswapGateTime);
  const auto own_a = thermal_sweep(a.params, op_a, temps, anchors::kIswapGateTime);

  const std::array<std::tuple<const DeviceFile*, const std::vector<ThermalRow>*,
                              const std::vector<ThermalRow>*>, 2>
      out = {{{&a, &rows_a, &own_a}, {&b, &rows_b, &rows_b}}};
  for (const auto& [dev, rows, own] : out) {
    CsvWriter w(metadata(o, dev->hash), {"temperature_mK", "p", "fidelity", "thermal_loss",
                                         "fidelity_own_coherence"});
    for (std::size_t i = 0; i < rows->size(); ++i)
      w.row({1e3 * (*rows)[i].temperature, (*rows)[i].p, (*rows)[i].fidelity.fidelity,
             (*rows)[i].fidelity.thermal_loss, (*own)[i].fidelity.fidelity});
    save(report, w, o, "figS4_" + dev->params.name + ".csv");
  }

  const double fg = coherence_limited_fidelity(b.params, anchors::kIswapGateTime);
  report.checks.push_back(within("device_b fidelity at p = 0 vs PTM gate fidelity",
                                 rows_b.front().fidelity.fidelity, fg,
                                 anchors::kThermalGroundMatchTol, ""));

  for (const auto* rows : {&rows_a, &rows_b}) {
    const std::string name = rows == &rows_a ? "device_a" : "device_b";
    bool decreasing = true;
    std::string where;
    for (std::size_t i = 1; i < rows->size(); ++i) {
      const auto& prev = (*rows)[i - 1].fidelity;
      const auto& cur = (*rows)[i].fidelity;
      if (!(cur.thermal_loss > prev.thermal_loss) || cur.fidelity > prev.fidelity) {
        decreasing = false;
        where = fmt("%.1f mK", 1e3 * (*rows)[i].temperature);
        break;
      }
    }
    report.checks.push_back({name + " fidelity strictly decreasing in temperature",
                             decreasing ? 1.0 : 0.0, 1.0, 0.0, "", decreasing,
                             decreasing ? "thermal loss strictly increasing" : "fails at " + where});
  }

  double worst = std::numeric_limits<double>::infinity();
  double worst_t = 0.0;
  for (std::size_t i = 0; i < temps.size(); ++i) {
    const double gap = rows_b[i].fidelity.fidelity - rows_a[i].fidelity.fidelity;
    if (gap < worst) {
      worst = gap;
      worst_t = temps[i];
    }
  }
  report.checks.push_back({"device_b minus device_a fidelity (min over 0-200 mK)", worst, 0.0, 0.0,
                           "", worst >= 0.0, "minimum at " + fmt("%.1f mK", 1e3 * worst_t)});
  double own_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < temps.size(); ++i)
    own_gap = std::min(own_gap, rows_b[i].fidelity.fidelity - own_a[i].fidelity.fidelity);
  report.notes.push_back("with each device's own coherence, min(F_B - F_A) = " +
                         fmt("%.5f", own_gap));
}

}  // namespace

Figure parse_figure(const std::string& name) {
  if (name == "fig2") return Figure::Fig2;
  if (name == "figS2") return Figure::FigS2;
  if (name == "figS3") return Figure::FigS3;
  if (name == "figS4") return Figure::FigS4;
  throw DomainError("unknown figure '" + name + "' (expected fig2, figS2, figS3, figS4)");
}

std::string to_string(Figure figure) {
  switch (figure) {
    case Figure::Fig2: return "fig2";
    case Figure::FigS2: return "figS2";
    case Figure::FigS3: return "figS3";
    case Figure::FigS4: return "figS4";
  }
  throw DomainError("unknown figure");
}

bool RecipeReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const AnchorCheck& c) { return c.pass; });
}

std::string RecipeReport::summary() const {
  std::string s = "recipe " + to_string(figure) + "\n";
  char buf[512];
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof buf, "%s %s: %.6g%s%s (target %.6g, tol %.3g)%s%s\n",
                  c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.unit.empty() ? "" : " ",
                  c.unit.c_str(), c.target, c.tolerance, c.detail.empty() ? "" : "; ",
                  c.detail.c_str());
    s += buf;
  }
  for (const auto& n : notes) s += "note: " + n + "\n";
  for (const auto& f : files) s += "wrote " + f.string() + "\n";
  return s;
}

RecipeReport run_figure_recipe(Figure figure, const RecipeOptions& options) {
  RecipeReport report;
  report.figure = figure;
  switch (figure) {
    case Figure::Fig2: fig2(report, options); break;
    case Figure::FigS2: figS2(report, options); break;
    case Figure::FigS3: figS3(report, options); break;
    case Figure::FigS4: figS4(report, options); break;
  }
  return report;
}

}  // namespace zzsim
